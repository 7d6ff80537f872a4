// Copyright 2026 The mmreflect Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MMREFLECT_ERRORS_HPP_
#define MMREFLECT_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mmreflect {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid geometric query (degenerate segment, no specular geometry).
class GeometryError : public Error {
 public:
  using Error::Error;
};

// A numeric parameter outside its documented domain.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Cell index outside the grid or masked out.
class BoundsError : public Error {
 public:
  using Error::Error;
};

// Two objects that must share a GridSpec do not.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Raised by the grid CSV reader. line() is 1-based; 0 when the error is not
// tied to a specific line (missing file, empty data section).
class GridParseError : public Error {
 public:
  enum class Kind {
    kMissingFile,
    kBadHeader,
    kMalformedRow,
    kDuplicateCell,
    kNonFinite,
    kOffLattice,
    kNoValidCells,
  };

  GridParseError(Kind kind, std::size_t line, const std::string& what)
      : Error(what), kind_(kind), line_(line) {}

  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

}  // namespace mmreflect

#endif  // MMREFLECT_ERRORS_HPP_
