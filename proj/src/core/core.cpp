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

#include "rieopt/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rieopt/error.hpp"

namespace rieopt {
namespace {

std::string shape_string(const Matrix& a) {
  return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

void check_same_base(const TangentVector& a, const TangentVector& b,
                     const char* op) {
  if (&a.manifold() != &b.manifold() ||
      a.base().value() != b.base().value()) {
    throw InvalidArgument(std::string(op) +
                          ": tangent vectors have different base points");
  }
}

}  // namespace

double Manifold::norm(const Matrix& x, const Matrix& u) const {
  return std::sqrt(std::max(0.0, inner(x, u, u)));
}

Matrix Manifold::transport_along(const Matrix& x, const Matrix& direction,
                                 const Matrix& v) const {
  return transport(x, exp(x, direction), v);
}

bool Manifold::is_point(const Matrix& x) const {
  const Shape shape = ambient_shape();
  if (x.rows() != shape.rows || x.cols() != shape.cols || !x.allFinite()) {
    return false;
  }
  return point_residual(x) <= tolerances_.point;
}

bool Manifold::is_tangent(const Matrix& x, const Matrix& v) const {
  const Shape shape = ambient_shape();
  if (v.rows() != shape.rows || v.cols() != shape.cols || !v.allFinite()) {
    return false;
  }
  return tangent_residual(x, v) <= tolerances_.tangent;
}

void Manifold::check_point(const Matrix& x, std::string_view op) const {
  check_shape(x, op);
  if (!x.allFinite()) {
    throw NumericFailure(std::string(op) + " (" + name() +
                         "): non-finite point entries");
  }
  const double residual = point_residual(x);
  if (!(residual <= tolerances_.point)) {
    throw InvalidPoint(std::string(op) + " (" + name() +
                       "): point constraint residual " +
                       std::to_string(residual) + " exceeds tolerance");
  }
}

void Manifold::check_tangent(const Matrix& x, const Matrix& v,
                             std::string_view op) const {
  check_shape(v, op);
  if (!v.allFinite()) {
    throw NumericFailure(std::string(op) + " (" + name() +
                         "): non-finite tangent entries");
  }
  const double residual = tangent_residual(x, v);
  if (!(residual <= tolerances_.tangent)) {
    throw InvalidTangent(std::string(op) + " (" + name() +
                         "): tangent constraint residual " +
                         std::to_string(residual) + " exceeds tolerance");
  }
}

void Manifold::check_shape(const Matrix& a, std::string_view op) const {
  const Shape shape = ambient_shape();
  if (a.rows() != shape.rows || a.cols() != shape.cols) {
    throw InvalidArgument(std::string(op) + " (" + name() + "): expected " +
                          std::to_string(shape.rows) + "x" +
                          std::to_string(shape.cols) + " array, got " +
                          shape_string(a));
  }
}

ManifoldPoint::ManifoldPoint(ManifoldPtr manifold, Matrix value)
    : manifold_(std::move(manifold)), value_(std::move(value)) {
  if (!manifold_) throw InvalidArgument("ManifoldPoint: null manifold");
  manifold_->check_point(value_, "ManifoldPoint");
}

TangentVector::TangentVector(ManifoldPoint base, Matrix value)
    : base_(std::move(base)), value_(std::move(value)) {
  base_.manifold().check_tangent(base_.value(), value_, "TangentVector");
}

TangentVector::TangentVector(ManifoldPoint base, Matrix value, Unchecked)
    : base_(std::move(base)), value_(std::move(value)) {}

TangentVector TangentVector::zero(const ManifoldPoint& base) {
  const Shape shape = base.manifold().ambient_shape();
  return TangentVector(base, Matrix::Zero(shape.rows, shape.cols), Unchecked{});
}

double TangentVector::norm() const {
  return manifold().norm(base_.value(), value_);
}

double TangentVector::inner(const TangentVector& other) const {
  check_same_base(*this, other, "TangentVector::inner");
  return manifold().inner(base_.value(), value_, other.value_);
}

TangentVector TangentVector::scaled(double factor) const {
  return TangentVector(base_, factor * value_, Unchecked{});
}

TangentVector operator+(const TangentVector& a, const TangentVector& b) {
  check_same_base(a, b, "TangentVector::operator+");
  return TangentVector(a.base_, a.value_ + b.value_,
                       TangentVector::Unchecked{});
}

TangentVector operator-(const TangentVector& a, const TangentVector& b) {
  check_same_base(a, b, "TangentVector::operator-");
  return TangentVector(a.base_, a.value_ - b.value_,
                       TangentVector::Unchecked{});
}

Matrix finite_diff_egrad(const CostFn& cost, const Matrix& w,
                         const Matrix& datum, double h) {
  if (!cost.evaluate) throw InvalidArgument("finite_diff_egrad: empty cost");
  if (!(h > 0.0)) h = 1e-6 * (1.0 + w.cwiseAbs().maxCoeff());
  Matrix grad(w.rows(), w.cols());
  Matrix probe = w;
  for (Index i = 0; i < w.size(); ++i) {
    const double saved = probe(i);
    probe(i) = saved + h;
    const double up = cost.evaluate(probe, datum);
    probe(i) = saved - h;
    const double down = cost.evaluate(probe, datum);
    probe(i) = saved;
    grad(i) = (up - down) / (2.0 * h);
  }
  return grad;
}

TangentVector riemannian_gradient(const CostFn& cost, const ManifoldPoint& w,
                                  const Matrix& datum) {
  const Matrix egrad = cost.has_gradient()
                           ? cost.euclidean_grad(w.value(), datum)
                           : finite_diff_egrad(cost, w.value(), datum);
  if (!egrad.allFinite()) {
    throw NumericFailure("riemannian_gradient: non-finite Euclidean gradient");
  }
  Matrix rgrad = w.manifold().egrad_to_rgrad(w.value(), egrad);
  if (!rgrad.allFinite()) {
    throw NumericFailure("riemannian_gradient: egrad_to_rgrad (" +
                         w.manifold().name() +
                         ") produced non-finite entries");
  }
  return TangentVector(w, std::move(rgrad));
}

TangentVector clip_tangent(const TangentVector& v, double tau) {
  if (!(tau > 0.0)) {
    throw InvalidArgument("clip_tangent: tau must be positive, got " +
                          std::to_string(tau));
  }
  const double norm = v.norm();
  if (norm <= tau) return v;
  return v.scaled(tau / norm);
}

ManifoldPoint apply_updates(const ManifoldPoint& w, const TangentVector& u) {
  if (&u.manifold() != &w.manifold() || u.base().value() != w.value()) {
    throw InvalidArgument("apply_updates: update is not based at params");
  }
  return ManifoldPoint(w.manifold_ptr(),
                       w.manifold().exp(w.value(), u.value()));
}

TangentVector mean_tangent(std::span<const TangentVector> vectors) {
  if (vectors.empty()) throw InvalidArgument("mean_tangent: empty list");
  TangentVector sum = vectors.front();
  for (std::size_t i = 1; i < vectors.size(); ++i) sum = sum + vectors[i];
  return sum.scaled(1.0 / static_cast<double>(vectors.size()));
}

FrechetResult frechet_mean(const ManifoldPtr& manifold,
                           std::span<const ManifoldPoint> points, double step,
                           int iters) {
  if (!manifold) throw InvalidArgument("frechet_mean: null manifold");
  if (points.empty()) throw InvalidArgument("frechet_mean: no data points");
  if (iters < 0) throw InvalidArgument("frechet_mean: iters must be >= 0");
  for (const ManifoldPoint& z : points) {
    if (&z.manifold() != manifold.get()) {
      throw InvalidArgument("frechet_mean: point on a different manifold");
    }
  }
  const Manifold& m = *manifold;
  const double inv_n = 1.0 / static_cast<double>(points.size());
  auto mean_log = [&](const Matrix& w) {
    Matrix acc = Matrix::Zero(w.rows(), w.cols());
    for (const ManifoldPoint& z : points) acc += m.log(w, z.value());
    return Matrix(acc * inv_n);
  };

  Matrix w = points.front().value();
  Matrix direction = mean_log(w);
  for (int it = 0; it < iters; ++it) {
    w = m.exp(w, step * direction);
    direction = mean_log(w);
  }
  const double residual = m.norm(w, direction);
  return {ManifoldPoint(manifold, std::move(w)), residual};
}

}  // namespace rieopt
