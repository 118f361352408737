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

// Thin Eigen <-> SIMD kernel adapters for column-vector geometries.

#include <cmath>
#include <span>

#include "rieopt/core.hpp"
#include "rieopt/simd/kernels.hpp"

namespace rieopt::detail {

inline std::span<const double> view(const Matrix& a) {
  return {a.data(), static_cast<std::size_t>(a.size())};
}

inline std::span<double> view(Matrix& a) {
  return {a.data(), static_cast<std::size_t>(a.size())};
}

inline double dot(const Matrix& a, const Matrix& b) {
  return simd::dot(view(a), view(b));
}

inline double squared_norm(const Matrix& a) {
  return simd::squared_norm(view(a));
}

inline double euclidean_norm(const Matrix& a) {
  return std::sqrt(squared_norm(a));
}

inline double lorentz_dot(const Matrix& a, const Matrix& b) {
  return simd::lorentz_dot(view(a), view(b));
}

// alpha a + beta b
inline Matrix combine(double alpha, const Matrix& a, double beta,
                      const Matrix& b) {
  Matrix out(a.rows(), a.cols());
  simd::axpby(alpha, view(a), beta, view(b), view(out));
  return out;
}

}  // namespace rieopt::detail
