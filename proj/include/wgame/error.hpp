// Copyright 2026 The wgame Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wgame {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input. `path` addresses the offending element, e.g.
// "information.Alice.atoms[2]".
class InputError : public Error {
 public:
  InputError(std::string path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// An enumeration would exceed its configured size cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class SpaceMismatch : public Error {
 public:
  SpaceMismatch() : Error("partitions live on different configuration spaces") {}
};

// Closed-loop equations without a unique solution at one state of Nature.
class SolveError : public Error {
 public:
  SolveError(int nature, std::size_t count, const std::string& what)
      : Error(what), nature_(nature), count_(count) {}
  int nature() const { return nature_; }
  std::size_t count() const { return count_; }

 private:
  int nature_;
  std::size_t count_;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace wgame
