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

#include "rieopt/core.hpp"

namespace rieopt {

// Unit sphere S(d) = {x in R^d : x^T x = 1} with the metric <u, v>_x = u^T v
// inherited from R^d. Points and tangents are d x 1 columns.
class Hypersphere final : public Manifold {
 public:
  // Pairs closer to antipodal than 1 + x^T y <= kAntipodalGap are rejected
  // by log and transport.
  static constexpr double kAntipodalGap = 1e-10;
  static constexpr double kSmallAngle = 1e-12;

  explicit Hypersphere(Index dim, Tolerances tolerances = {});

  Index dim() const { return dim_; }

  std::string name() const override { return "hypersphere"; }
  Shape ambient_shape() const override { return {dim_, 1}; }
  Index intrinsic_dim() const override { return dim_ - 1; }

  // Throws InvalidTangent when u or v is not tangent at x.
  double inner(const Matrix& x, const Matrix& u,
               const Matrix& v) const override;
  // cos(|v|) x + sin(|v|) v / |v|
  Matrix exp(const Matrix& x, const Matrix& v) const override;
  // theta (y - cos(theta) x) / sin(theta). Throws DomainError for antipodes.
  Matrix log(const Matrix& x, const Matrix& y) const override;
  double dist(const Matrix& x, const Matrix& y) const override;
  // v - (y^T v / (1 + x^T y)) (x + y)
  Matrix transport(const Matrix& x, const Matrix& y,
                   const Matrix& v) const override;
  Matrix egrad_to_rgrad(const Matrix& x, const Matrix& g) const override;
  Matrix project_tangent(const Matrix& x, const Matrix& a) const override;

  double point_residual(const Matrix& x) const override;
  double tangent_residual(const Matrix& x, const Matrix& v) const override;
  Matrix random_point(Rng& rng) const override;
  Matrix random_tangent(const Matrix& x, Rng& rng) const override;

 private:
  Index dim_;
};

}  // namespace rieopt
