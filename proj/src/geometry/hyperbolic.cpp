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

#include "rieopt/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rieopt/error.hpp"
#include "rieopt/random.hpp"
#include "vector_ops.hpp"

namespace rieopt {
namespace {

using detail::combine;
using detail::dot;
using detail::squared_norm;

constexpr double kMobiusDenominatorFloor = 1e-15;

// x / sinh(x), continuous at 0.
double x_over_sinh(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return x / std::sinh(x);
}

// sinh(x) / x, continuous at 0.
double sinh_over_x(double x) {
  if (std::abs(x) < 1e-8) return 1.0 + x * x / 6.0;
  return std::sinh(x) / x;
}

}  // namespace

Matrix mobius_add(const Matrix& x, const Matrix& y) {
  const double xy = dot(x, y);
  const double x2 = squared_norm(x);
  const double y2 = squared_norm(y);
  const double den = 1.0 + 2.0 * xy + x2 * y2;
  if (!(den >= kMobiusDenominatorFloor)) {
    throw NumericFailure("mobius_add: denominator " + std::to_string(den) +
                         " below 1e-15");
  }
  return combine((1.0 + 2.0 * xy + y2) / den, x, (1.0 - x2) / den, y);
}

Matrix gyration(const Matrix& a, const Matrix& b, const Matrix& w) {
  const double ab = dot(a, b);
  const double aw = dot(a, w);
  const double bw = dot(b, w);
  const double a2 = squared_norm(a);
  const double b2 = squared_norm(b);
  const double ca = -aw * b2 + bw + 2.0 * ab * bw;
  const double cb = -bw * a2 - aw;
  const double den = 1.0 + 2.0 * ab + a2 * b2;
  if (!(den >= kMobiusDenominatorFloor)) {
    throw NumericFailure("gyration: degenerate denominator");
  }
  return w + combine(2.0 * ca / den, a, 2.0 * cb / den, b);
}

double lorentz_inner(const Matrix& u, const Matrix& v) {
  if (u.size() != v.size()) {
    throw InvalidArgument("lorentz_inner: length mismatch");
  }
  return detail::lorentz_dot(u, v);
}

Matrix poincare_to_lorentz(const Matrix& x) {
  const double x2 = squared_norm(x);
  Matrix y(x.size() + 1, 1);
  y(0) = (1.0 + x2) / (1.0 - x2);
  y.bottomRows(x.size()) = (2.0 / (1.0 - x2)) * x;
  return y;
}

Matrix lorentz_to_poincare(const Matrix& y) {
  return y.bottomRows(y.size() - 1) / (1.0 + y(0));
}

// ---------------------------------------------------------------------------
// Poincare ball

PoincareBall::PoincareBall(Index dim, Tolerances tolerances)
    : Manifold(tolerances), dim_(dim) {
  if (dim < 1) {
    throw InvalidArgument("PoincareBall: dimension must be >= 1, got " +
                          std::to_string(dim));
  }
}

double PoincareBall::conformal_factor(const Matrix& x) {
  return 2.0 / (1.0 - squared_norm(x));
}

Matrix PoincareBall::clamp_to_ball(Matrix x) {
  const double max_radius = 1.0 - kBoundaryMargin;
  const double n = detail::euclidean_norm(x);
  if (n > max_radius) x *= max_radius / n;
  return x;
}

double PoincareBall::inner(const Matrix& x, const Matrix& u,
                           const Matrix& v) const {
  check_shape(u, "poincare.inner");
  check_shape(v, "poincare.inner");
  const double lambda = conformal_factor(x);
  return lambda * lambda * dot(u, v);
}

Matrix PoincareBall::exp(const Matrix& x, const Matrix& v) const {
  check_shape(v, "poincare.exp");
  if (v.isZero(0.0)) return x;
  const double n = detail::euclidean_norm(v);
  const double t = std::tanh(0.5 * conformal_factor(x) * n);
  return clamp_to_ball(mobius_add(x, (t / n) * v));
}

Matrix PoincareBall::log(const Matrix& x, const Matrix& y) const {
  check_shape(y, "poincare.log");
  if (x == y) return Matrix::Zero(dim_, 1);
  const Matrix w = mobius_add(-x, y);
  const double n = detail::euclidean_norm(w);
  if (n == 0.0) return Matrix::Zero(dim_, 1);
  const double scale = (2.0 / conformal_factor(x)) * std::atanh(n) / n;
  return scale * w;
}

double PoincareBall::dist(const Matrix& x, const Matrix& y) const {
  check_shape(y, "poincare.dist");
  return 2.0 * std::atanh(detail::euclidean_norm(mobius_add(-x, y)));
}

Matrix PoincareBall::transport(const Matrix& x, const Matrix& y,
                               const Matrix& v) const {
  check_shape(v, "poincare.pt");
  if (x == y) return v;
  return (conformal_factor(x) / conformal_factor(y)) * gyration(y, -x, v);
}

Matrix PoincareBall::egrad_to_rgrad(const Matrix& x, const Matrix& g) const {
  check_shape(g, "poincare.egrad_to_rgrad");
  const double s = 1.0 - squared_norm(x);
  return (0.25 * s * s) * g;
}

Matrix PoincareBall::project_tangent(const Matrix&, const Matrix& a) const {
  return a;
}

double PoincareBall::point_residual(const Matrix& x) const {
  return squared_norm(x) < 1.0 - 1e-12
             ? 0.0
             : std::numeric_limits<double>::infinity();
}

double PoincareBall::tangent_residual(const Matrix&, const Matrix&) const {
  return 0.0;
}

Matrix PoincareBall::random_point(Rng& rng) const {
  Matrix direction = gaussian_matrix(dim_, 1, rng);
  direction /= detail::euclidean_norm(direction);
  // hyperbolic radius uniform on [0, 2]
  std::uniform_real_distribution<double> radius(0.0, 2.0);
  return std::tanh(0.5 * radius(rng)) * direction;
}

Matrix PoincareBall::random_tangent(const Matrix& x, Rng& rng) const {
  return gaussian_matrix(dim_, 1, rng) / conformal_factor(x);
}

// ---------------------------------------------------------------------------
// Lorentz hyperboloid

LorentzHyperboloid::LorentzHyperboloid(Index dim, Tolerances tolerances)
    : Manifold(tolerances), dim_(dim) {
  if (dim < 2) {
    throw InvalidArgument("LorentzHyperboloid: dimension must be >= 2, got " +
                          std::to_string(dim));
  }
}

Matrix LorentzHyperboloid::origin() const {
  Matrix o = Matrix::Zero(dim_, 1);
  o(0) = 1.0;
  return o;
}

double LorentzHyperboloid::beta_minus_one(const Matrix& x, const Matrix& y,
                                          const char* op) const {
  const Matrix diff = y - x;
  const double half = 0.5 * detail::lorentz_dot(diff, diff);
  if (half < -1e-9) {
    throw InvalidPoint(std::string(op) +
                       ": invalid point pair, -<x, y>_L = " +
                       std::to_string(1.0 + half) + " < 1");
  }
  return std::max(half, 0.0);
}

double LorentzHyperboloid::inner(const Matrix& x, const Matrix& u,
                                 const Matrix& v) const {
  check_tangent(x, u, "lorentz.inner");
  check_tangent(x, v, "lorentz.inner");
  return detail::lorentz_dot(u, v);
}

Matrix LorentzHyperboloid::exp(const Matrix& x, const Matrix& v) const {
  check_shape(v, "lorentz.exp");
  if (v.isZero(0.0)) return x;
  const double s = std::sqrt(std::max(0.0, detail::lorentz_dot(v, v)));
  Matrix y = combine(std::cosh(s), x, sinh_over_x(s), v);
  y(0) = std::sqrt(1.0 + y.bottomRows(dim_ - 1).squaredNorm());
  return y;
}

Matrix LorentzHyperboloid::log(const Matrix& x, const Matrix& y) const {
  check_shape(y, "lorentz.log");
  if (x == y) return Matrix::Zero(dim_, 1);
  const double bm1 = beta_minus_one(x, y, "lorentz.log");
  const double d = 2.0 * std::asinh(std::sqrt(0.5 * bm1));
  // y - beta x = (y - x) - (beta - 1) x
  return x_over_sinh(d) * combine(1.0, y - x, -bm1, x);
}

double LorentzHyperboloid::dist(const Matrix& x, const Matrix& y) const {
  check_shape(y, "lorentz.dist");
  return 2.0 * std::asinh(std::sqrt(0.5 * beta_minus_one(x, y, "lorentz.dist")));
}

Matrix LorentzHyperboloid::transport(const Matrix& x, const Matrix& y,
                                     const Matrix& v) const {
  check_shape(v, "lorentz.pt");
  if (x == y) return v;
  const double beta = 1.0 + beta_minus_one(x, y, "lorentz.pt");
  const double coef = detail::lorentz_dot(y, v) / (1.0 + beta);
  return v + coef * (x + y);
}

Matrix LorentzHyperboloid::egrad_to_rgrad(const Matrix& x,
                                          const Matrix& g) const {
  check_shape(g, "lorentz.egrad_to_rgrad");
  Matrix h = g;
  h(0) = -h(0);
  return project_tangent(x, h);
}

Matrix LorentzHyperboloid::project_tangent(const Matrix& x,
                                           const Matrix& a) const {
  check_shape(a, "lorentz.project_tangent");
  return combine(1.0, a, detail::lorentz_dot(x, a), x);
}

double LorentzHyperboloid::point_residual(const Matrix& x) const {
  if (!(x(0) > 0.0)) return std::numeric_limits<double>::infinity();
  return std::abs(detail::lorentz_dot(x, x) + 1.0) / (x(0) * x(0));
}

double LorentzHyperboloid::tangent_residual(const Matrix& x,
                                            const Matrix& v) const {
  const double scale = std::max(1.0, detail::euclidean_norm(x)) *
                       std::max(1.0, detail::euclidean_norm(v));
  return std::abs(detail::lorentz_dot(x, v)) / scale;
}

Matrix LorentzHyperboloid::random_point(Rng& rng) const {
  Matrix x(dim_, 1);
  x.bottomRows(dim_ - 1) = gaussian_matrix(dim_ - 1, 1, rng) /
                           std::sqrt(static_cast<double>(dim_ - 1));
  x(0) = std::sqrt(1.0 + x.bottomRows(dim_ - 1).squaredNorm());
  return x;
}

Matrix LorentzHyperboloid::random_tangent(const Matrix& x, Rng& rng) const {
  Matrix at_origin = Matrix::Zero(dim_, 1);
  at_origin.bottomRows(dim_ - 1) = gaussian_matrix(dim_ - 1, 1, rng);
  return transport(origin(), x, at_origin);
}

}  // namespace rieopt
