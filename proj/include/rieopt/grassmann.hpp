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

// Principal angles between span(x) and span(y) for orthonormal m x r bases,
// ascending. Small angles come from the singular values of (I - x x^T) y,
// large ones from those of x^T y.
Eigen::VectorXd principal_angles(const Matrix& x, const Matrix& y);

// Grassmann manifold G(m, r) of r-dimensional subspaces of R^m with the
// canonical metric <U, V>_X = tr(U^T V). A point is any orthonormal m x r
// basis X of the subspace; tangents are horizontal lifts (X^T U = 0) at that
// representative. Operations may return a different representative of the
// same subspace, so compare points with principal_angles().
class Grassmann final : public Manifold {
 public:
  // log requires the smallest singular value of X^T Y above this.
  static constexpr double kCutLocusGap = 1e-10;

  Grassmann(Index m, Index r, Tolerances tolerances = {});

  Index m() const { return m_; }
  Index r() const { return r_; }

  std::string name() const override { return "grassmann"; }
  Shape ambient_shape() const override { return {m_, r_}; }
  Index intrinsic_dim() const override { return r_ * (m_ - r_); }

  // Throws InvalidTangent when U or V is not horizontal at X.
  double inner(const Matrix& x, const Matrix& u,
               const Matrix& v) const override;
  // With U = P S Q^T: X Q cos(S) Q^T + P sin(S) Q^T, re-orthonormalized.
  Matrix exp(const Matrix& x, const Matrix& u) const override;
  // With (I - X X^T) Y (X^T Y)^{-1} = P S Q^T: P atan(S) Q^T. Throws
  // DomainError when X^T Y is singular (cut locus).
  Matrix log(const Matrix& x, const Matrix& y) const override;
  // sqrt(sum theta_i^2) over principal angles.
  double dist(const Matrix& x, const Matrix& y) const override;
  // Transport to the representative y: along log(x, y), then re-expressed at
  // y's basis.
  Matrix transport(const Matrix& x, const Matrix& y,
                   const Matrix& v) const override;
  // With direction = P S Q^T:
  //   (-X Q sin(S) P^T + P cos(S) P^T + (I - P P^T)) V,
  // tangent at exp(x, direction).
  Matrix transport_along(const Matrix& x, const Matrix& direction,
                         const Matrix& v) const override;
  // (I - X X^T) G
  Matrix egrad_to_rgrad(const Matrix& x, const Matrix& g) const override;
  Matrix project_tangent(const Matrix& x, const Matrix& a) const override;

  double point_residual(const Matrix& x) const override;
  double tangent_residual(const Matrix& x, const Matrix& v) const override;
  Matrix random_point(Rng& rng) const override;
  Matrix random_tangent(const Matrix& x, Rng& rng) const override;

 private:
  Index m_;
  Index r_;
};

}  // namespace rieopt
