// Copyright 2026 The ecsim Authors
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

namespace ecsim {

enum class ErrorCode {
  domain = 1,
  dimension = 2,
  index = 3,
  unsupported_structure = 4,
  resource = 5,
};

/// Base of every exception thrown by the library. The C API maps `code()`
/// onto its status enum.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(ErrorCode::domain, what) {}
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what)
      : Error(ErrorCode::dimension, what) {}
};

class IndexError : public Error {
 public:
  explicit IndexError(const std::string& what)
      : Error(ErrorCode::index, what) {}
};

class UnsupportedStructureError : public Error {
 public:
  explicit UnsupportedStructureError(const std::string& what)
      : Error(ErrorCode::unsupported_structure, what) {}
};

/// Raised when a dense Fock-basis computation would exceed the allocation cap.
class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what)
      : Error(ErrorCode::resource, what) {}
};

}  // namespace ecsim
