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

#pragma once

#include <stdexcept>
#include <string>

namespace sketchseg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed document; `path()` names the offending element, e.g. "strokes[2].labels".
class ParseError : public Error {
 public:
  ParseError(std::string path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Tensor or image dimensions do not agree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Argument outside an operation's domain (k < 2, empty dataset, label >= k, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Checkpoint or feature-database file is unreadable or inconsistent.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace sketchseg
