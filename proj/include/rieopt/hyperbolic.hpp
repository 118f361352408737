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

// Mobius addition in the unit ball:
//   ((1 + 2<x,y> + |y|^2) x + (1 - |x|^2) y) / (1 + 2<x,y> + |x|^2 |y|^2).
// Throws NumericFailure when the denominator falls below 1e-15.
Matrix mobius_add(const Matrix& x, const Matrix& y);

// Gyration gyr[a, b] applied to w, in closed form. Linear in w and an
// isometry of R^d; agrees with (-(a + b)) + (a + (b + w)) (Mobius sums) for w
// inside the ball.
Matrix gyration(const Matrix& a, const Matrix& b, const Matrix& w);

// -u0 v0 + u1 v1 + ... + u_{d-1} v_{d-1}
double lorentz_inner(const Matrix& u, const Matrix& v);

// Isometry between the models: x -> (1 + |x|^2, 2x) / (1 - |x|^2) and its
// inverse y -> y_{1:} / (1 + y0).
Matrix poincare_to_lorentz(const Matrix& x);
Matrix lorentz_to_poincare(const Matrix& y);

// Poincare ball D(d) = {x : |x| < 1} with the conformal metric
// <u, v>_x = 4 u^T v / (1 - |x|^2)^2, curvature -1.
class PoincareBall final : public Manifold {
 public:
  // Points within kBoundaryMargin of the unit sphere are pulled back to
  // radius 1 - kBoundaryMargin.
  static constexpr double kBoundaryMargin = 1e-7;

  explicit PoincareBall(Index dim, Tolerances tolerances = {});

  Index dim() const { return dim_; }
  // Conformal factor 2 / (1 - |x|^2).
  static double conformal_factor(const Matrix& x);
  static Matrix clamp_to_ball(Matrix x);

  std::string name() const override { return "poincare"; }
  Shape ambient_shape() const override { return {dim_, 1}; }
  Index intrinsic_dim() const override { return dim_; }

  double inner(const Matrix& x, const Matrix& u,
               const Matrix& v) const override;
  // x (+) tanh(lambda_x |v| / 2) v / |v|
  Matrix exp(const Matrix& x, const Matrix& v) const override;
  // (2 / lambda_x) artanh(|w|) w / |w|,  w = (-x) (+) y
  Matrix log(const Matrix& x, const Matrix& y) const override;
  // 2 artanh(|(-x) (+) y|)
  double dist(const Matrix& x, const Matrix& y) const override;
  // (lambda_x / lambda_y) gyr[y, -x] v
  Matrix transport(const Matrix& x, const Matrix& y,
                   const Matrix& v) const override;
  // g (1 - |x|^2)^2 / 4
  Matrix egrad_to_rgrad(const Matrix& x, const Matrix& g) const override;
  Matrix project_tangent(const Matrix& x, const Matrix& a) const override;

  double point_residual(const Matrix& x) const override;
  double tangent_residual(const Matrix& x, const Matrix& v) const override;
  Matrix random_point(Rng& rng) const override;
  Matrix random_tangent(const Matrix& x, Rng& rng) const override;

 private:
  Index dim_;
};

// Upper sheet of the hyperboloid {x in R^d : <x, x>_L = -1, x0 > 0} with the
// metric induced by the Lorentz form. Intrinsic dimension d - 1.
class LorentzHyperboloid final : public Manifold {
 public:
  explicit LorentzHyperboloid(Index dim, Tolerances tolerances = {});

  Index dim() const { return dim_; }
  // (1, 0, ..., 0)
  Matrix origin() const;

  std::string name() const override { return "lorentz"; }
  Shape ambient_shape() const override { return {dim_, 1}; }
  Index intrinsic_dim() const override { return dim_ - 1; }

  double inner(const Matrix& x, const Matrix& u,
               const Matrix& v) const override;
  // cosh(s) x + sinh(s) v / s,  s = sqrt(<v, v>_L)
  Matrix exp(const Matrix& x, const Matrix& v) const override;
  // arccosh(beta) / sqrt(beta^2 - 1) (y - beta x),  beta = -<x, y>_L
  Matrix log(const Matrix& x, const Matrix& y) const override;
  // arccosh(beta)
  double dist(const Matrix& x, const Matrix& y) const override;
  // v + (<y, v>_L / (1 + beta)) (x + y)
  Matrix transport(const Matrix& x, const Matrix& y,
                   const Matrix& v) const override;
  // h + <x, h>_L x,  h = diag(-1, 1, ..., 1) g
  Matrix egrad_to_rgrad(const Matrix& x, const Matrix& g) const override;
  Matrix project_tangent(const Matrix& x, const Matrix& a) const override;

  double point_residual(const Matrix& x) const override;
  double tangent_residual(const Matrix& x, const Matrix& v) const override;
  Matrix random_point(Rng& rng) const override;
  Matrix random_tangent(const Matrix& x, Rng& rng) const override;

 private:
  // beta - 1 = <y - x, y - x>_L / 2, computed without cancellation in beta.
  double beta_minus_one(const Matrix& x, const Matrix& y,
                        const char* op) const;

  Index dim_;
};

}  // namespace rieopt
