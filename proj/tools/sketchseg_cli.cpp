/* Copyright 2026 The SketchSeg Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <CLI11.hpp>
#include <json.hpp>

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sketchseg/checkpoint.hpp"
#include "sketchseg/datagen.hpp"
#include "sketchseg/errors.hpp"
#include "sketchseg/metrics.hpp"
#include "sketchseg/pgm.hpp"
#include "sketchseg/pipeline.hpp"
#include "sketchseg/retrieval.hpp"
#include "sketchseg/service.hpp"
#include "sketchseg/sketch_json.hpp"
#include "sketchseg/synth.hpp"
#include "sketchseg/train.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace sketchseg;

namespace {

struct ViewOptions {
  int azimuths = 12;
  std::vector<double> elevations{15.0, 35.0, 55.0};
  std::vector<double> distances{2.2, 3.0};
};

void add_view_options(CLI::App* cmd, ViewOptions& v) {
  cmd->add_option("--azimuths", v.azimuths, "Azimuth count")->check(CLI::PositiveNumber);
  cmd->add_option("--elevations", v.elevations, "Elevations in degrees")->delimiter(',');
  cmd->add_option("--distances", v.distances, "Camera distances in bounding radii")->delimiter(',');
}

Profile parse_profile(const std::string& s) { return s == "reduced" ? Profile::Reduced : Profile::Canonical; }

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw Error("cannot write " + out);
  f << text;
}

std::vector<Sketch> manifest_sketches(const Manifest& m) {
  std::vector<Sketch> out;
  for (const auto& e : m.entries)
    if (!e.sketch.empty()) out.push_back(load_sketch(e.sketch));
  if (out.empty()) throw InvalidArgument("manifest lists no sketch documents");
  return out;
}

Service* running_service = nullptr;

void on_signal(int) {
  if (running_service) running_service->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semantic sketch segmentation: data generation, training, inference, evaluation and part retrieval"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  double cd = 1.0, cs = 88.0;
  std::string profile = "canonical";
  auto profile_check = CLI::IsMember({"canonical", "reduced"});

  // datagen
  auto* datagen = app.add_subcommand("datagen", "Render labeled edge maps from part-segmented meshes");
  std::string mesh_dir, out_dir;
  ViewOptions views;
  bool no_augment = false, depth_tested_only = false, plain_only = false;
  int gen_side = 256;
  datagen->add_option("--meshes", mesh_dir, "Mesh directory with labels.txt")->required();
  datagen->add_option("--out", out_dir, "Output directory")->required();
  datagen->add_option("--side", gen_side, "Edge map side")->check(CLI::Range(16, 4096));
  datagen->add_flag("--no-augment", no_augment, "Skip scale augmentation");
  datagen->add_flag("--depth-tested-only", depth_tested_only, "Emit only depth-tested edge maps");
  datagen->add_flag("--plain-only", plain_only, "Emit only edge maps without depth testing");
  add_view_options(datagen, views);

  // synth
  auto* synth = app.add_subcommand("synth", "Generate procedural labeled sketches");
  std::string synth_category_name = "lamp";
  int synth_n = 200, synth_side = 256;
  synth->add_option("--category", synth_category_name, "Category")->check(CLI::IsMember(synth_category_names()));
  synth->add_option("-n,--count", synth_n, "Number of sketches")->check(CLI::NonNegativeNumber);
  synth->add_option("--side", synth_side, "Raster side")->check(CLI::Range(16, 4096));
  synth->add_option("--seed", seed, "Random seed");
  synth->add_option("--out", out_dir, "Output directory")->required();

  // train
  auto* train_cmd = app.add_subcommand("train", "Train a segmentation network on a manifest");
  std::string data_path, model_path;
  TrainConfig tcfg;
  tcfg.steps = 80000;
  double lr = tcfg.adam.lr;
  train_cmd->add_option("--data", data_path, "Training manifest")->required();
  train_cmd->add_option("--out", model_path, "Checkpoint to write")->required();
  train_cmd->add_option("--profile", profile, "Network profile")->check(profile_check);
  train_cmd->add_option("--steps", tcfg.steps, "Optimizer steps")->check(CLI::PositiveNumber);
  train_cmd->add_option("--batch", tcfg.batch, "Batch size")->check(CLI::PositiveNumber);
  train_cmd->add_option("--lr", lr, "Adam learning rate")->check(CLI::PositiveNumber);
  train_cmd->add_option("--seed", seed, "Random seed");
  train_cmd->add_option("--log-every", tcfg.log_every, "Loss log interval")->check(CLI::PositiveNumber);

  // infer
  auto* infer = app.add_subcommand("infer", "Label the strokes of a sketch");
  std::string in_path, out_path;
  std::string solver = "dp";
  bool no_refine = false;
  infer->add_option("--model", model_path, "Checkpoint")->required();
  infer->add_option("--in", in_path, "Sketch JSON")->required();
  infer->add_option("--out", out_path, "Output sketch JSON (default stdout)");
  infer->add_option("--cd", cd, "Data cost");
  infer->add_option("--cs", cs, "Smoothness cost");
  infer->add_option("--solver", solver, "Refinement solver")->check(CLI::IsMember({"dp", "alpha"}));
  infer->add_flag("--no-refine", no_refine, "Skip refinement");

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate pixel and component metrics, CSV to stdout");
  std::vector<int> batches{1, 2, 4, 6, 8, 10};
  eval->add_option("--model", model_path, "Checkpoint")->required();
  eval->add_option("--data", data_path, "Manifest with sketch documents")->required();
  eval->add_option("--batch", batches, "Batch sizes")->delimiter(',')->check(CLI::PositiveNumber);
  eval->add_option("--cd", cd, "Data cost");
  eval->add_option("--cs", cs, "Smoothness cost");
  eval->add_option("--seed", seed, "Partition seed");
  eval->add_flag("--no-refine", no_refine, "Only the unrefined variants");

  // features
  auto* features = app.add_subcommand("features", "Build the part feature database");
  std::string db_path;
  ViewOptions fviews;
  features->add_option("--model", model_path, "Checkpoint")->required();
  features->add_option("--meshes", mesh_dir, "Mesh directory with labels.txt")->required();
  features->add_option("--out", db_path, "Feature database to write")->required();
  add_view_options(features, fviews);

  // retrieve
  auto* retrieve = app.add_subcommand("retrieve", "Segment a sketch and rank database parts per label");
  std::size_t top_n = 5;
  retrieve->add_option("--model", model_path, "Checkpoint")->required();
  retrieve->add_option("--db", db_path, "Feature database")->required();
  retrieve->add_option("--in", in_path, "Sketch JSON")->required();
  retrieve->add_option("--top", top_n, "Candidates per label")->check(CLI::PositiveNumber);
  retrieve->add_option("--cd", cd, "Data cost");
  retrieve->add_option("--cs", cs, "Smoothness cost");

  // assemble
  auto* assemble_cmd = app.add_subcommand("assemble", "Place selected parts by least squares");
  std::vector<std::string> picks;
  assemble_cmd->add_option("--db", db_path, "Feature database")->required();
  assemble_cmd->add_option("--select", picks, "label:mesh[:camera], repeatable")->required();

  // serve
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  std::string config_path = "sketchseg.conf";
  serve->add_option("--config", config_path, "Config file (SKSEG_CONFIG overrides)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e, std::cerr, std::cerr);
    return 2;
  }

  try {
    const EnergyParams params{cd, cs};
    if (*datagen) {
      if (depth_tested_only && plain_only) throw InvalidArgument("--depth-tested-only and --plain-only conflict");
      MeshCollection col = load_mesh_collection(mesh_dir);
      auto cameras = sample_viewpoints(views.azimuths, views.elevations, views.distances, gen_side);
      fs::create_directories(out_dir);
      Manifest m{col.labels.category(), col.labels.names(), {}};
      int index = 0;
      for (const auto& base : col.meshes) {
        auto variants = no_augment ? std::vector<LabeledMesh>{base} : augment_scale(base);
        for (const auto& mesh : variants)
          for (const auto& cam : cameras) {
            EdgeMapPair pair = make_edge_map_pair(mesh, cam);
            if (!depth_tested_only) m.entries.push_back(write_sample(out_dir, index++, pair.plain));
            if (!plain_only) m.entries.push_back(write_sample(out_dir, index++, pair.depth_tested));
          }
      }
      write_manifest((fs::path(out_dir) / "manifest.txt").string(), m);
      std::cerr << "wrote " << m.entries.size() << " samples to " << out_dir << "\n";
    } else if (*synth) {
      SynthCategory cat = synth_category(synth_category_name);
      auto items = synth_sketch_dataset(cat, synth_n, seed, synth_side);
      fs::create_directories(out_dir);
      Manifest m{cat.name, cat.label_names(), {}};
      for (std::size_t i = 0; i < items.size(); ++i) {
        Manifest::Entry e = write_sample(out_dir, static_cast<int>(i), items[i].sample);
        char name[32];
        std::snprintf(name, sizeof name, "%05zu_sketch.json", i);
        save_sketch(items[i].sketch, (fs::path(out_dir) / name).string());
        e.sketch = name;
        m.entries.push_back(e);
      }
      write_manifest((fs::path(out_dir) / "manifest.txt").string(), m);
      std::cerr << "wrote " << items.size() << " sketches to " << out_dir << "\n";
    } else if (*train_cmd) {
      Manifest m = read_manifest(data_path);
      std::vector<EdgeMapSample> data;
      for (const auto& e : m.entries) data.push_back(read_sample(e));
      NetworkSpec spec = build_network(m.k(), parse_profile(profile));
      tcfg.seed = seed;
      tcfg.adam.lr = lr;
      auto result = train(data, spec, m.category, m.label_names, tcfg, [](const LossPoint& p) {
        std::cerr << "step " << p.step << " loss " << p.loss << "\n";
      });
      save_checkpoint(result.model, model_path);
    } else if (*infer) {
      Model model = load_checkpoint(model_path);
      Sketch sk = load_sketch(in_path);
      if (sk.empty()) throw InvalidArgument("sketch has no points");
      SegmentOptions opt{params, !no_refine, solver == "alpha" ? Solver::AlphaExpansion : Solver::Dp};
      SegmentResult res = segment_sketch(sk, model, opt);
      for (std::size_t s = 0; s < sk.strokes.size(); ++s) sk.strokes[s].gt_labels = res.labels[s];
      emit(serialize_sketch(sk) + "\n", out_path);
    } else if (*eval) {
      Model model = load_checkpoint(model_path);
      auto sketches = manifest_sketches(read_manifest(data_path));
      EvalConfig cfg{params, batches, !no_refine, seed, kComponentThreshold};
      std::cout << to_csv(evaluate_dataset(model, sketches, cfg));
    } else if (*features) {
      Model model = load_checkpoint(model_path);
      MeshCollection col = load_mesh_collection(mesh_dir);
      if (col.labels.category() != model.category) throw InvalidArgument("mesh category does not match the model");
      auto cameras = sample_viewpoints(fviews.azimuths, fviews.elevations, fviews.distances, model.spec.input_side);
      FeatureDB db = build_feature_db(model, col.meshes, cameras);
      save_feature_db(db, db_path);
      std::cerr << "wrote " << db.features.size() << " features to " << db_path << "\n";
    } else if (*retrieve) {
      Model model = load_checkpoint(model_path);
      FeatureDB db = load_feature_db(db_path);
      Sketch sk = load_sketch(in_path);
      if (sk.empty()) throw InvalidArgument("sketch has no points");
      SegmentResult res = segment_sketch(sk, model, {params, true, Solver::Dp});
      json parts = json::array();
      for (const auto& q : part_queries(sk, res.labels, model)) {
        QueryResult r = query_parts(q.feature, q.label, db, top_n);
        if (!r.warning.empty()) std::cerr << "warning: " << r.warning << "\n";
        json cands = json::array();
        for (const auto& c : r.candidates)
          cands.push_back({{"mesh", c.mesh}, {"camera", c.camera}, {"distance", c.distance}});
        parts.push_back({{"label", q.label}, {"candidates", cands}});
      }
      std::cout << json{{"parts", parts}}.dump(2) << "\n";
    } else if (*assemble_cmd) {
      std::vector<Selection> sel;
      for (const auto& p : picks) {
        std::istringstream ss(p);
        std::string label, mesh, camera;
        if (!std::getline(ss, label, ':') || !std::getline(ss, mesh, ':') || mesh.empty()) {
          std::cerr << "--select expects label:mesh[:camera], got '" << p << "'\n" << app.help();
          return 2;
        }
        std::getline(ss, camera, ':');
        try {
          sel.push_back({std::stoi(label), mesh, camera.empty() ? 0 : std::stoi(camera)});
        } catch (const std::exception&) {
          std::cerr << "--select expects integer label and camera, got '" << p << "'\n";
          return 2;
        }
      }
      const FeatureDB db = load_feature_db(db_path);
      Assembly a = assemble(sel, db);
      json placed = json::array();
      for (const auto& p : a.parts)
        placed.push_back({{"label", p.label},
                          {"mesh", p.mesh},
                          {"center", {p.center.x, p.center.y, p.center.z}},
                          {"size", {p.size.x, p.size.y, p.size.z}}});
      std::cout << json{{"placed", placed}, {"residual", a.residual}}.dump(2) << "\n";
    } else if (*serve) {
      const std::string path = resolve_config_path(config_path);
      Service service(load_service_config(path));
      running_service = &service;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cerr << "listening on " << service.config().host << ":" << service.config().port << "\n";
      service.listen();
      running_service = nullptr;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
