// Copyright 2026 The mbsynth Authors
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

namespace mbsynth {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Wrong matrix shape or mode count for the requested operation.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Mode or entry index outside its admissible range.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// A value violates a domain invariant (angle range, ratio, amplitude...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Input matrix failed the unitarity test. Carries the measured defect
/// max |M^dagger M - I| so front ends can report it.
class NotUnitaryError : public ValidationError {
 public:
  NotUnitaryError(const std::string& what, double defect)
      : ValidationError(what), defect_(defect) {}
  double defect() const noexcept { return defect_; }

 private:
  double defect_;
};

/// A circuit element does not fit the circuit it is placed in.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Malformed JSON document. `where()` is a JSON pointer or byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string where)
      : Error(what + " (at " + where + ")"), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

/// A decomposition routine could not meet its own postcondition.
class DecompositionError : public Error {
 public:
  using Error::Error;
};

}  // namespace mbsynth
