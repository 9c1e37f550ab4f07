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

#include "sketchseg/nn.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <random>

#include <Eigen/Core>

#include "sketchseg/errors.hpp"

namespace sketchseg::nn {

namespace {

template <typename T>
using RowMatrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename T>
using MatMap = Eigen::Map<RowMatrix<T>>;
template <typename T>
using ConstMatMap = Eigen::Map<const RowMatrix<T>>;

void require_rank4(const std::vector<int>& shape, const char* what) {
  if (shape.size() != 4) throw ShapeError(std::string(what) + " must be rank 4, got " + shape_string(shape));
}

void check_bias(const std::vector<int>& bias, int channels, const char* what) {
  if (bias.size() != 1 || bias[0] != channels)
    throw ShapeError(std::string(what) + " bias shape " + shape_string(bias) + " does not match " +
                     std::to_string(channels) + " channels");
}

// cols[(c*k + ky)*k + kx][oy*out_w + ox] = in[c][oy*s - pad + ky][ox*s - pad + kx]
template <typename T>
void im2col(const T* in, int channels, const ConvGeometry& g, T* cols) {
  const int k = g.kernel, s = g.stride;
  const std::size_t out_plane = static_cast<std::size_t>(g.out_h) * g.out_w;
  for (int c = 0; c < channels; ++c) {
    const T* src = in + static_cast<std::size_t>(c) * g.in_h * g.in_w;
    for (int ky = 0; ky < k; ++ky) {
      for (int kx = 0; kx < k; ++kx) {
        T* row = cols + (static_cast<std::size_t>(c * k + ky) * k + kx) * out_plane;
        for (int oy = 0; oy < g.out_h; ++oy) {
          const int iy = oy * s - g.pad_top + ky;
          T* dst = row + static_cast<std::size_t>(oy) * g.out_w;
          if (iy < 0 || iy >= g.in_h) {
            std::fill(dst, dst + g.out_w, T(0));
            continue;
          }
          const T* srow = src + static_cast<std::size_t>(iy) * g.in_w;
          for (int ox = 0; ox < g.out_w; ++ox) {
            const int ix = ox * s - g.pad_left + kx;
            dst[ox] = (ix >= 0 && ix < g.in_w) ? srow[ix] : T(0);
          }
        }
      }
    }
  }
}

// Adjoint of im2col: accumulates column entries back into the image.
template <typename T>
void col2im(const T* cols, int channels, const ConvGeometry& g, T* out) {
  const int k = g.kernel, s = g.stride;
  const std::size_t out_plane = static_cast<std::size_t>(g.out_h) * g.out_w;
  for (int c = 0; c < channels; ++c) {
    T* dst = out + static_cast<std::size_t>(c) * g.in_h * g.in_w;
    for (int ky = 0; ky < k; ++ky) {
      for (int kx = 0; kx < k; ++kx) {
        const T* row = cols + (static_cast<std::size_t>(c * k + ky) * k + kx) * out_plane;
        for (int oy = 0; oy < g.out_h; ++oy) {
          const int iy = oy * s - g.pad_top + ky;
          if (iy < 0 || iy >= g.in_h) continue;
          const T* src = row + static_cast<std::size_t>(oy) * g.out_w;
          T* drow = dst + static_cast<std::size_t>(iy) * g.in_w;
          for (int ox = 0; ox < g.out_w; ++ox) {
            const int ix = ox * s - g.pad_left + kx;
            if (ix >= 0 && ix < g.in_w) drow[ix] += src[ox];
          }
        }
      }
    }
  }
}

template <typename T>
void add_bias(BasicTensor<T>& y, const BasicTensor<T>& bias) {
  const std::size_t plane = y.plane();
  for (int n = 0; n < y.n(); ++n)
    for (int c = 0; c < y.c(); ++c) {
      T* p = y.data() + y.offset(n, c, 0, 0);
      const T b = bias[static_cast<std::size_t>(c)];
      for (std::size_t i = 0; i < plane; ++i) p[i] += b;
    }
}

template <typename T>
BasicTensor<T> bias_grad(const BasicTensor<T>& dy) {
  BasicTensor<T> db(std::vector<int>{dy.c()});
  const std::size_t plane = dy.plane();
  for (int c = 0; c < dy.c(); ++c) {
    double acc = 0.0;
    for (int n = 0; n < dy.n(); ++n) {
      const T* p = dy.data() + dy.offset(n, c, 0, 0);
      for (std::size_t i = 0; i < plane; ++i) acc += p[i];
    }
    db[static_cast<std::size_t>(c)] = static_cast<T>(acc);
  }
  return db;
}

}  // namespace

ConvGeometry same_halving(int in_h, int in_w, int kernel, int stride) {
  if (kernel < 1 || stride < 1) throw InvalidArgument("kernel and stride must be positive");
  if (in_h % stride != 0 || in_w % stride != 0)
    throw ShapeError("spatial size " + std::to_string(in_h) + "x" + std::to_string(in_w) +
                     " is not divisible by stride " + std::to_string(stride));
  ConvGeometry g;
  g.in_h = in_h;
  g.in_w = in_w;
  g.out_h = in_h / stride;
  g.out_w = in_w / stride;
  g.kernel = kernel;
  g.stride = stride;
  const int pad_h = (g.out_h - 1) * stride + kernel - in_h;
  const int pad_w = (g.out_w - 1) * stride + kernel - in_w;
  if (pad_h < 0 || pad_w < 0) throw InvalidArgument("kernel smaller than stride leaves input pixels unused");
  g.pad_top = pad_h / 2;
  g.pad_left = pad_w / 2;
  return g;
}

template <typename T>
BasicTensor<T> conv2d(const BasicTensor<T>& x, const BasicTensor<T>& weight, const BasicTensor<T>& bias, int stride) {
  require_rank4(x.shape(), "conv2d input");
  require_rank4(weight.shape(), "conv2d weight");
  if (weight.dim(1) != x.c() || weight.dim(2) != weight.dim(3))
    throw ShapeError("conv2d weight " + shape_string(weight.shape()) + " does not fit input " + shape_string(x.shape()));
  const int cout = weight.dim(0), k = weight.dim(2);
  check_bias(bias.shape(), cout, "conv2d");
  const ConvGeometry g = same_halving(x.h(), x.w(), k, stride);

  BasicTensor<T> y(x.n(), cout, g.out_h, g.out_w);
  const int kk = x.c() * k * k;
  const int p = g.out_h * g.out_w;
  std::vector<T> cols(static_cast<std::size_t>(kk) * p);
  ConstMatMap<T> w(weight.data(), cout, kk);
  for (int n = 0; n < x.n(); ++n) {
    im2col(x.data() + x.offset(n, 0, 0, 0), x.c(), g, cols.data());
    MatMap<T> out(y.data() + y.offset(n, 0, 0, 0), cout, p);
    out.noalias() = w * ConstMatMap<T>(cols.data(), kk, p);
  }
  add_bias(y, bias);
  return y;
}

template <typename T>
ConvGrads<T> conv2d_backward(const BasicTensor<T>& x, const BasicTensor<T>& weight, int stride,
                             const BasicTensor<T>& dy) {
  require_rank4(x.shape(), "conv2d input");
  require_rank4(dy.shape(), "conv2d upstream");
  const int cout = weight.dim(0), k = weight.dim(2);
  const ConvGeometry g = same_halving(x.h(), x.w(), k, stride);
  if (dy.n() != x.n() || dy.c() != cout || dy.h() != g.out_h || dy.w() != g.out_w)
    throw ShapeError("conv2d upstream " + shape_string(dy.shape()) + " does not match output of " +
                     shape_string(x.shape()));

  ConvGrads<T> grads{BasicTensor<T>(x.shape()), BasicTensor<T>(weight.shape()), bias_grad(dy)};
  const int kk = x.c() * k * k;
  const int p = g.out_h * g.out_w;
  std::vector<T> cols(static_cast<std::size_t>(kk) * p);
  ConstMatMap<T> w(weight.data(), cout, kk);
  MatMap<T> dw(grads.dweight.data(), cout, kk);
  for (int n = 0; n < x.n(); ++n) {
    ConstMatMap<T> g_out(dy.data() + dy.offset(n, 0, 0, 0), cout, p);
    im2col(x.data() + x.offset(n, 0, 0, 0), x.c(), g, cols.data());
    MatMap<T> c(cols.data(), kk, p);
    dw.noalias() += g_out * c.transpose();
    c.noalias() = w.transpose() * g_out;
    col2im(cols.data(), x.c(), g, grads.dx.data() + grads.dx.offset(n, 0, 0, 0));
  }
  return grads;
}

template <typename T>
BasicTensor<T> upconv2d(const BasicTensor<T>& x, const BasicTensor<T>& weight, const BasicTensor<T>& bias, int stride) {
  require_rank4(x.shape(), "upconv2d input");
  require_rank4(weight.shape(), "upconv2d weight");
  if (weight.dim(0) != x.c() || weight.dim(2) != weight.dim(3))
    throw ShapeError("upconv2d weight " + shape_string(weight.shape()) + " does not fit input " +
                     shape_string(x.shape()));
  const int cout = weight.dim(1), k = weight.dim(2);
  check_bias(bias.shape(), cout, "upconv2d");
  const ConvGeometry g = same_halving(x.h() * stride, x.w() * stride, k, stride);

  BasicTensor<T> y(x.n(), cout, g.in_h, g.in_w);
  const int kk = cout * k * k;
  const int p = x.h() * x.w();
  std::vector<T> cols(static_cast<std::size_t>(kk) * p);
  ConstMatMap<T> w(weight.data(), x.c(), kk);
  for (int n = 0; n < x.n(); ++n) {
    MatMap<T> c(cols.data(), kk, p);
    c.noalias() = w.transpose() * ConstMatMap<T>(x.data() + x.offset(n, 0, 0, 0), x.c(), p);
    col2im(cols.data(), cout, g, y.data() + y.offset(n, 0, 0, 0));
  }
  add_bias(y, bias);
  return y;
}

template <typename T>
ConvGrads<T> upconv2d_backward(const BasicTensor<T>& x, const BasicTensor<T>& weight, int stride,
                               const BasicTensor<T>& dy) {
  require_rank4(x.shape(), "upconv2d input");
  require_rank4(dy.shape(), "upconv2d upstream");
  const int cout = weight.dim(1), k = weight.dim(2);
  if (dy.n() != x.n() || dy.c() != cout || dy.h() != x.h() * stride || dy.w() != x.w() * stride)
    throw ShapeError("upconv2d upstream " + shape_string(dy.shape()) + " does not match output of " +
                     shape_string(x.shape()));
  const ConvGeometry g = same_halving(dy.h(), dy.w(), k, stride);

  ConvGrads<T> grads{BasicTensor<T>(x.shape()), BasicTensor<T>(weight.shape()), bias_grad(dy)};
  const int kk = cout * k * k;
  const int p = x.h() * x.w();
  std::vector<T> cols(static_cast<std::size_t>(kk) * p);
  ConstMatMap<T> w(weight.data(), x.c(), kk);
  MatMap<T> dw(grads.dweight.data(), x.c(), kk);
  for (int n = 0; n < x.n(); ++n) {
    im2col(dy.data() + dy.offset(n, 0, 0, 0), cout, g, cols.data());
    ConstMatMap<T> c(cols.data(), kk, p);
    MatMap<T> dx(grads.dx.data() + grads.dx.offset(n, 0, 0, 0), x.c(), p);
    dx.noalias() = w * c;
    dw.noalias() += ConstMatMap<T>(x.data() + x.offset(n, 0, 0, 0), x.c(), p) * c.transpose();
  }
  return grads;
}

template <typename T>
BasicTensor<T> batchnorm(const BasicTensor<T>& x, const BasicTensor<T>& scale, const BasicTensor<T>& shift,
                         BatchNormCache<T>* cache) {
  require_rank4(x.shape(), "batchnorm input");
  check_bias(scale.shape(), x.c(), "batchnorm scale");
  check_bias(shift.shape(), x.c(), "batchnorm shift");
  const std::size_t plane = x.plane();
  const double count = static_cast<double>(plane) * x.n();

  BasicTensor<T> y(x.shape());
  if (cache) {
    cache->xhat = BasicTensor<T>(x.shape());
    cache->inv_std.assign(static_cast<std::size_t>(x.c()), T(0));
  }
  for (int c = 0; c < x.c(); ++c) {
    double sum = 0.0;
    for (int n = 0; n < x.n(); ++n) {
      const T* p = x.data() + x.offset(n, c, 0, 0);
      for (std::size_t i = 0; i < plane; ++i) sum += p[i];
    }
    const double mean = sum / count;
    double sq = 0.0;
    for (int n = 0; n < x.n(); ++n) {
      const T* p = x.data() + x.offset(n, c, 0, 0);
      for (std::size_t i = 0; i < plane; ++i) {
        const double d = p[i] - mean;
        sq += d * d;
      }
    }
    const double inv_std = 1.0 / std::sqrt(sq / count + kBatchNormEps);
    const double a = scale[static_cast<std::size_t>(c)], b = shift[static_cast<std::size_t>(c)];
    for (int n = 0; n < x.n(); ++n) {
      const std::size_t off = x.offset(n, c, 0, 0);
      const T* p = x.data() + off;
      T* q = y.data() + off;
      for (std::size_t i = 0; i < plane; ++i) {
        const double xh = (p[i] - mean) * inv_std;
        q[i] = static_cast<T>(a * xh + b);
        if (cache) cache->xhat[off + i] = static_cast<T>(xh);
      }
    }
    if (cache) cache->inv_std[static_cast<std::size_t>(c)] = static_cast<T>(inv_std);
  }
  return y;
}

template <typename T>
BatchNormGrads<T> batchnorm_backward(const BasicTensor<T>& dy, const BasicTensor<T>& scale,
                                     const BatchNormCache<T>& cache) {
  if (dy.shape() != cache.xhat.shape())
    throw ShapeError("batchnorm upstream " + shape_string(dy.shape()) + " does not match cached input " +
                     shape_string(cache.xhat.shape()));
  const std::size_t plane = dy.plane();
  const double count = static_cast<double>(plane) * dy.n();
  BatchNormGrads<T> g{BasicTensor<T>(dy.shape()), BasicTensor<T>(std::vector<int>{dy.c()}),
                      BasicTensor<T>(std::vector<int>{dy.c()})};
  for (int c = 0; c < dy.c(); ++c) {
    double sum_dy = 0.0, sum_dy_xhat = 0.0;
    for (int n = 0; n < dy.n(); ++n) {
      const std::size_t off = dy.offset(n, c, 0, 0);
      for (std::size_t i = 0; i < plane; ++i) {
        sum_dy += dy[off + i];
        sum_dy_xhat += static_cast<double>(dy[off + i]) * cache.xhat[off + i];
      }
    }
    const auto ci = static_cast<std::size_t>(c);
    g.dshift[ci] = static_cast<T>(sum_dy);
    g.dscale[ci] = static_cast<T>(sum_dy_xhat);
    // dx = gamma * inv_std / M * (M*dy - sum(dy) - xhat * sum(dy*xhat))
    const double factor = scale[ci] * static_cast<double>(cache.inv_std[ci]) / count;
    for (int n = 0; n < dy.n(); ++n) {
      const std::size_t off = dy.offset(n, c, 0, 0);
      for (std::size_t i = 0; i < plane; ++i)
        g.dx[off + i] = static_cast<T>(factor * (count * dy[off + i] - sum_dy - cache.xhat[off + i] * sum_dy_xhat));
    }
  }
  return g;
}

template <typename T>
BasicTensor<T> dropout(const BasicTensor<T>& x, double p, bool training, std::uint64_t seed, BasicTensor<T>* mask) {
  if (p < 0.0 || p >= 1.0) throw InvalidArgument("dropout probability must lie in [0, 1)");
  if (!training || p == 0.0) {
    if (mask) *mask = BasicTensor<T>(x.shape(), T(1));
    return x;
  }
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution keep(1.0 - p);
  const T survivor = static_cast<T>(1.0 / (1.0 - p));
  BasicTensor<T> y(x.shape());
  if (mask) *mask = BasicTensor<T>(x.shape());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const T m = keep(rng) ? survivor : T(0);
    y[i] = x[i] * m;
    if (mask) (*mask)[i] = m;
  }
  return y;
}

template <typename T>
BasicTensor<T> leaky_relu(const BasicTensor<T>& x, double slope) {
  if (slope < 0.0 || slope >= 1.0) throw InvalidArgument("leaky_relu slope must lie in [0, 1)");
  BasicTensor<T> y(x.shape());
  const T s = static_cast<T>(slope);
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] > T(0) ? x[i] : s * x[i];
  return y;
}

template <typename T>
BasicTensor<T> leaky_relu_backward(const BasicTensor<T>& x, const BasicTensor<T>& dy, double slope) {
  if (x.shape() != dy.shape()) throw ShapeError("leaky_relu upstream shape mismatch");
  BasicTensor<T> dx(x.shape());
  const T s = static_cast<T>(slope);
  for (std::size_t i = 0; i < x.size(); ++i) dx[i] = x[i] > T(0) ? dy[i] : s * dy[i];
  return dx;
}

template <typename T>
BasicTensor<T> concat_channels(const BasicTensor<T>& a, const BasicTensor<T>& b) {
  require_rank4(a.shape(), "concat input");
  require_rank4(b.shape(), "concat input");
  if (a.n() != b.n() || a.h() != b.h() || a.w() != b.w())
    throw ShapeError("cannot concatenate " + shape_string(a.shape()) + " and " + shape_string(b.shape()));
  BasicTensor<T> y(a.n(), a.c() + b.c(), a.h(), a.w());
  const std::size_t sa = a.plane() * a.c(), sb = b.plane() * b.c();
  for (int n = 0; n < a.n(); ++n) {
    T* dst = y.data() + y.offset(n, 0, 0, 0);
    std::copy_n(a.data() + a.offset(n, 0, 0, 0), sa, dst);
    std::copy_n(b.data() + b.offset(n, 0, 0, 0), sb, dst + sa);
  }
  return y;
}

template <typename T>
std::pair<BasicTensor<T>, BasicTensor<T>> split_channels(const BasicTensor<T>& x, int channels_a) {
  require_rank4(x.shape(), "split input");
  if (channels_a < 0 || channels_a > x.c()) throw ShapeError("split point outside channel range");
  BasicTensor<T> a(x.n(), channels_a, x.h(), x.w());
  BasicTensor<T> b(x.n(), x.c() - channels_a, x.h(), x.w());
  const std::size_t sa = a.plane() * a.c(), sb = b.plane() * b.c();
  for (int n = 0; n < x.n(); ++n) {
    const T* src = x.data() + x.offset(n, 0, 0, 0);
    std::copy_n(src, sa, a.data() + a.offset(n, 0, 0, 0));
    std::copy_n(src + sa, sb, b.data() + b.offset(n, 0, 0, 0));
  }
  return {std::move(a), std::move(b)};
}

template <typename T>
BasicTensor<T> softmax(const BasicTensor<T>& logits) {
  require_rank4(logits.shape(), "softmax input");
  BasicTensor<T> prob(logits.shape());
  const int k = logits.c();
  const std::size_t plane = logits.plane();
  std::vector<double> e(static_cast<std::size_t>(k));
  for (int n = 0; n < logits.n(); ++n) {
    const std::size_t base = logits.offset(n, 0, 0, 0);
    for (std::size_t i = 0; i < plane; ++i) {
      double mx = -INFINITY;
      for (int c = 0; c < k; ++c) mx = std::max(mx, static_cast<double>(logits[base + c * plane + i]));
      double sum = 0.0;
      for (int c = 0; c < k; ++c) sum += (e[static_cast<std::size_t>(c)] = std::exp(logits[base + c * plane + i] - mx));
      for (int c = 0; c < k; ++c) prob[base + c * plane + i] = static_cast<T>(e[static_cast<std::size_t>(c)] / sum);
    }
  }
  return prob;
}

template <typename T>
LossValue<T> softmax_cross_entropy(const BasicTensor<T>& logits, std::span<const int> target) {
  require_rank4(logits.shape(), "loss logits");
  const int k = logits.c();
  const std::size_t plane = logits.plane();
  if (target.size() != plane * static_cast<std::size_t>(logits.n()))
    throw ShapeError("target has " + std::to_string(target.size()) + " labels for logits " +
                     shape_string(logits.shape()));

  LossValue<T> out{0.0, BasicTensor<T>(logits.shape())};
  std::vector<double> e(static_cast<std::size_t>(k));
  double loss = 0.0;
  for (int n = 0; n < logits.n(); ++n) {
    const std::size_t base = logits.offset(n, 0, 0, 0);
    for (std::size_t i = 0; i < plane; ++i) {
      const int t = target[static_cast<std::size_t>(n) * plane + i];
      if (t < 0 || t >= k)
        throw InvalidArgument("target label " + std::to_string(t) + " outside [0, " + std::to_string(k) + ")");
      double mx = -INFINITY;
      for (int c = 0; c < k; ++c) mx = std::max(mx, static_cast<double>(logits[base + c * plane + i]));
      double sum = 0.0;
      for (int c = 0; c < k; ++c) sum += (e[static_cast<std::size_t>(c)] = std::exp(logits[base + c * plane + i] - mx));
      loss += std::log(sum) + mx - logits[base + static_cast<std::size_t>(t) * plane + i];
      for (int c = 0; c < k; ++c) {
        const double pr = e[static_cast<std::size_t>(c)] / sum;
        out.grad[base + c * plane + i] = static_cast<T>(pr - (c == t ? 1.0 : 0.0));
      }
    }
  }
  out.loss = loss;
  return out;
}

void adam_step(std::span<float> params, std::span<const float> grads, AdamState& state, const AdamConfig& cfg) {
  if (params.size() != grads.size() || state.m.size() != params.size() || state.v.size() != params.size())
    throw ShapeError("adam_step buffers differ in length");
  ++state.step;
  const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.step));
  const double b1 = cfg.beta1, b2 = cfg.beta2;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grads[i];
    const double m = b1 * state.m[i] + (1.0 - b1) * g;
    const double v = b2 * state.v[i] + (1.0 - b2) * g * g;
    state.m[i] = static_cast<float>(m);
    state.v[i] = static_cast<float>(v);
    params[i] = static_cast<float>(params[i] - cfg.lr * (m / bc1) / (std::sqrt(v / bc2) + cfg.eps));
  }
}

#define SKETCHSEG_INSTANTIATE(T)                                                                                   \
  template BasicTensor<T> conv2d(const BasicTensor<T>&, const BasicTensor<T>&, const BasicTensor<T>&, int);        \
  template ConvGrads<T> conv2d_backward(const BasicTensor<T>&, const BasicTensor<T>&, int, const BasicTensor<T>&); \
  template BasicTensor<T> upconv2d(const BasicTensor<T>&, const BasicTensor<T>&, const BasicTensor<T>&, int);      \
  template ConvGrads<T> upconv2d_backward(const BasicTensor<T>&, const BasicTensor<T>&, int,                       \
                                          const BasicTensor<T>&);                                                  \
  template BasicTensor<T> batchnorm(const BasicTensor<T>&, const BasicTensor<T>&, const BasicTensor<T>&,           \
                                    BatchNormCache<T>*);                                                           \
  template BatchNormGrads<T> batchnorm_backward(const BasicTensor<T>&, const BasicTensor<T>&,                      \
                                                const BatchNormCache<T>&);                                         \
  template BasicTensor<T> dropout(const BasicTensor<T>&, double, bool, std::uint64_t, BasicTensor<T>*);            \
  template BasicTensor<T> leaky_relu(const BasicTensor<T>&, double);                                               \
  template BasicTensor<T> leaky_relu_backward(const BasicTensor<T>&, const BasicTensor<T>&, double);               \
  template BasicTensor<T> concat_channels(const BasicTensor<T>&, const BasicTensor<T>&);                           \
  template std::pair<BasicTensor<T>, BasicTensor<T>> split_channels(const BasicTensor<T>&, int);                   \
  template BasicTensor<T> softmax(const BasicTensor<T>&);                                                          \
  template LossValue<T> softmax_cross_entropy(const BasicTensor<T>&, std::span<const int>);

SKETCHSEG_INSTANTIATE(float)
SKETCHSEG_INSTANTIATE(double)

#undef SKETCHSEG_INSTANTIATE

}  // namespace sketchseg::nn
