// Copyright 2026 The Rieopt Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace rieopt {

// Every failure raised by the library derives from Error. The kind lets
// front ends map failures onto exit codes without string matching.
class Error : public std::runtime_error {
 public:
  enum class Kind {
    kInvalidArgument,
    kInvalidPoint,
    kInvalidTangent,
    kDomain,
    kNumericFailure,
    kNotPositiveDefinite,
    kCalibrationFailure,
  };

  Error(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(Kind::kInvalidArgument, what) {}
};

class InvalidPoint : public Error {
 public:
  explicit InvalidPoint(const std::string& what)
      : Error(Kind::kInvalidPoint, what) {}
};

class InvalidTangent : public Error {
 public:
  explicit InvalidTangent(const std::string& what)
      : Error(Kind::kInvalidTangent, what) {}
};

// Inputs outside the domain of a map (antipodal logs, cut locus, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(Kind::kDomain, what) {}
};

class NumericFailure : public Error {
 public:
  explicit NumericFailure(const std::string& what)
      : Error(Kind::kNumericFailure, what) {}
};

class NotPositiveDefinite : public Error {
 public:
  NotPositiveDefinite(const std::string& what, double min_eigenvalue)
      : Error(Kind::kNotPositiveDefinite, what),
        min_eigenvalue_(min_eigenvalue) {}

  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

class CalibrationFailure : public Error {
 public:
  CalibrationFailure(const std::string& what, double lower, double upper)
      : Error(Kind::kCalibrationFailure, what), lower_(lower), upper_(upper) {}

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }

 private:
  double lower_;
  double upper_;
};

}  // namespace rieopt
