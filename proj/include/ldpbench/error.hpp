// Copyright 2026 The ldpbench Authors
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

#include <stdexcept>
#include <string>

namespace ldpbench {

// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid argument to an operation (bad epsilon, out-of-range value, ...).
class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& what) : Error(what) {}
};

// Structurally invalid input data (mixed-protocol reports, ragged results,
// malformed files whose content cannot be salvaged).
class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(what) {}
};

// Filesystem-level failure (missing file, unwritable path).
class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
};

}  // namespace ldpbench
