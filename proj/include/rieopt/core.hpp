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

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rieopt {

using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;
using Rng = std::mt19937_64;

// Ambient array shape. Vector-valued geometries use cols == 1.
struct Shape {
  Index rows = 0;
  Index cols = 1;

  Index size() const { return rows * cols; }
  friend bool operator==(const Shape&, const Shape&) = default;
};

// Residual tolerances of the point and tangent validation predicates.
struct Tolerances {
  double point = 1e-9;
  double tangent = 1e-8;
};

// The primitive contract every geometry implements. All arrays are ambient
// representations; callers that want checked values go through
// ManifoldPoint / TangentVector.
class Manifold {
 public:
  explicit Manifold(Tolerances tolerances = {}) : tolerances_(tolerances) {}
  virtual ~Manifold() = default;

  virtual std::string name() const = 0;
  virtual Shape ambient_shape() const = 0;
  virtual Index intrinsic_dim() const = 0;

  virtual double inner(const Matrix& x, const Matrix& u,
                       const Matrix& v) const = 0;
  double norm(const Matrix& x, const Matrix& u) const;

  virtual Matrix exp(const Matrix& x, const Matrix& v) const = 0;
  virtual Matrix log(const Matrix& x, const Matrix& y) const = 0;
  virtual double dist(const Matrix& x, const Matrix& y) const = 0;

  // Parallel transport of v from T_x to T_y along the minimizing geodesic.
  virtual Matrix transport(const Matrix& x, const Matrix& y,
                           const Matrix& v) const = 0;
  // Parallel transport of v along t -> exp(x, t * direction), t in [0, 1].
  // The result is tangent at exp(x, direction).
  virtual Matrix transport_along(const Matrix& x, const Matrix& direction,
                                 const Matrix& v) const;

  virtual Matrix egrad_to_rgrad(const Matrix& x, const Matrix& g) const = 0;
  // Orthogonal (w.r.t. the metric) projection of an ambient array onto T_x.
  virtual Matrix project_tangent(const Matrix& x, const Matrix& a) const = 0;

  // Constraint residuals; zero on exact points / tangents.
  virtual double point_residual(const Matrix& x) const = 0;
  virtual double tangent_residual(const Matrix& x, const Matrix& v) const = 0;

  virtual Matrix random_point(Rng& rng) const = 0;
  // Standard Gaussian in an orthonormal basis of T_x: E|xi|_x^2 equals
  // intrinsic_dim().
  virtual Matrix random_tangent(const Matrix& x, Rng& rng) const = 0;

  const Tolerances& tolerances() const { return tolerances_; }
  bool is_point(const Matrix& x) const;
  bool is_tangent(const Matrix& x, const Matrix& v) const;
  // Throw InvalidPoint / InvalidTangent naming the geometry and the op.
  void check_point(const Matrix& x, std::string_view op) const;
  void check_tangent(const Matrix& x, const Matrix& v,
                     std::string_view op) const;

 protected:
  void check_shape(const Matrix& a, std::string_view op) const;

 private:
  Tolerances tolerances_;
};

using ManifoldPtr = std::shared_ptr<const Manifold>;

// An ambient array that satisfies its manifold's point predicate.
class ManifoldPoint {
 public:
  // Throws InvalidPoint if value is not on the manifold.
  ManifoldPoint(ManifoldPtr manifold, Matrix value);

  const Matrix& value() const { return value_; }
  const Manifold& manifold() const { return *manifold_; }
  const ManifoldPtr& manifold_ptr() const { return manifold_; }

 private:
  ManifoldPtr manifold_;
  Matrix value_;
};

// An ambient array anchored at a base point and tangent there.
class TangentVector {
 public:
  // Throws InvalidTangent if value is not tangent at base.
  TangentVector(ManifoldPoint base, Matrix value);
  static TangentVector zero(const ManifoldPoint& base);

  const Matrix& value() const { return value_; }
  const ManifoldPoint& base() const { return base_; }
  const Manifold& manifold() const { return base_.manifold(); }

  double norm() const;
  double inner(const TangentVector& other) const;
  TangentVector scaled(double factor) const;

 private:
  struct Unchecked {};
  TangentVector(ManifoldPoint base, Matrix value, Unchecked);

  ManifoldPoint base_;
  Matrix value_;

  friend TangentVector operator+(const TangentVector& a,
                                 const TangentVector& b);
  friend TangentVector operator-(const TangentVector& a,
                                 const TangentVector& b);
};

TangentVector operator+(const TangentVector& a, const TangentVector& b);
TangentVector operator-(const TangentVector& a, const TangentVector& b);

// Per-example cost f(w; datum). The Euclidean gradient is optional; when it
// is missing, central finite differences are used instead.
struct CostFn {
  std::function<double(const Matrix& w, const Matrix& datum)> evaluate;
  std::function<Matrix(const Matrix& w, const Matrix& datum)> euclidean_grad;

  bool has_gradient() const { return static_cast<bool>(euclidean_grad); }
};

// Central differences per ambient coordinate. h <= 0 selects the default
// step 1e-6 * (1 + max|w|).
Matrix finite_diff_egrad(const CostFn& cost, const Matrix& w,
                         const Matrix& datum, double h = 0.0);

// egrad_to_rgrad of the (analytic or finite-difference) Euclidean gradient.
// Throws NumericFailure on non-finite gradient entries.
TangentVector riemannian_gradient(const CostFn& cost, const ManifoldPoint& w,
                                  const Matrix& datum);

// Rescales v to Riemannian norm tau when it is longer than tau.
TangentVector clip_tangent(const TangentVector& v, double tau);

// exp_w(u).
ManifoldPoint apply_updates(const ManifoldPoint& w, const TangentVector& u);

// Mean of tangents sharing one base point, summed in index order.
TangentVector mean_tangent(std::span<const TangentVector> vectors);

struct FrechetResult {
  ManifoldPoint mean;
  // Riemannian norm of mean_i log_w(z_i) at the returned point.
  double residual;
};

// Fixed-iteration Riemannian gradient descent on (1/2n) sum dist^2(w, z_i),
// started from points[0].
FrechetResult frechet_mean(const ManifoldPtr& manifold,
                           std::span<const ManifoldPoint> points, double step,
                           int iters);

}  // namespace rieopt
