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

#include "rieopt/hypersphere.hpp"

#include <cmath>
#include <string>

#include "rieopt/error.hpp"
#include "rieopt/random.hpp"
#include "rieopt/simd/kernels.hpp"
#include "vector_ops.hpp"

namespace rieopt {
namespace {

using detail::combine;
using detail::view;

Matrix normalized(Matrix a) {
  a /= detail::euclidean_norm(a);
  return a;
}

}  // namespace

Hypersphere::Hypersphere(Index dim, Tolerances tolerances)
    : Manifold(tolerances), dim_(dim) {
  if (dim < 2) {
    throw InvalidArgument("Hypersphere: dimension must be >= 2, got " +
                          std::to_string(dim));
  }
}

double Hypersphere::inner(const Matrix& x, const Matrix& u,
                          const Matrix& v) const {
  check_tangent(x, u, "hypersphere.inner");
  check_tangent(x, v, "hypersphere.inner");
  return simd::dot(view(u), view(v));
}

Matrix Hypersphere::exp(const Matrix& x, const Matrix& v) const {
  check_shape(v, "hypersphere.exp");
  if (v.isZero(0.0)) return x;
  const double n = std::sqrt(simd::squared_norm(view(v)));
  if (n < kSmallAngle) return normalized(x + v);
  return normalized(combine(std::cos(n), x, std::sin(n) / n, v));
}

Matrix Hypersphere::log(const Matrix& x, const Matrix& y) const {
  check_shape(y, "hypersphere.log");
  if (x == y) return Matrix::Zero(dim_, 1);
  const double c = simd::dot(view(x), view(y));
  if (!(1.0 + c > kAntipodalGap)) {
    throw DomainError("hypersphere.log: points are antipodal (1 + x.y = " +
                      std::to_string(1.0 + c) + ")");
  }
  Matrix w = combine(1.0, y, -c, x);
  const double s = std::sqrt(simd::squared_norm(view(w)));
  const double theta = std::atan2(s, c);
  if (theta < kSmallAngle) return w;
  w *= theta / s;
  return w;
}

double Hypersphere::dist(const Matrix& x, const Matrix& y) const {
  check_shape(y, "hypersphere.dist");
  const double c = simd::dot(view(x), view(y));
  const Matrix w = combine(1.0, y, -c, x);
  return std::atan2(std::sqrt(simd::squared_norm(view(w))), c);
}

Matrix Hypersphere::transport(const Matrix& x, const Matrix& y,
                              const Matrix& v) const {
  check_shape(v, "hypersphere.pt");
  if (x == y) return v;
  const double c = simd::dot(view(x), view(y));
  if (!(1.0 + c > kAntipodalGap)) {
    throw DomainError("hypersphere.pt: points are antipodal (1 + x.y = " +
                      std::to_string(1.0 + c) + ")");
  }
  const double coef = simd::dot(view(y), view(v)) / (1.0 + c);
  return v - coef * (x + y);
}

Matrix Hypersphere::egrad_to_rgrad(const Matrix& x, const Matrix& g) const {
  return project_tangent(x, g);
}

Matrix Hypersphere::project_tangent(const Matrix& x, const Matrix& a) const {
  check_shape(a, "hypersphere.project_tangent");
  return combine(1.0, a, -simd::dot(view(x), view(a)), x);
}

double Hypersphere::point_residual(const Matrix& x) const {
  return std::abs(simd::squared_norm(view(x)) - 1.0);
}

double Hypersphere::tangent_residual(const Matrix& x, const Matrix& v) const {
  const double scale = std::max(1.0, std::sqrt(simd::squared_norm(view(v))));
  return std::abs(simd::dot(view(x), view(v))) / scale;
}

Matrix Hypersphere::random_point(Rng& rng) const {
  return normalized(gaussian_matrix(dim_, 1, rng));
}

Matrix Hypersphere::random_tangent(const Matrix& x, Rng& rng) const {
  return project_tangent(x, gaussian_matrix(dim_, 1, rng));
}

}  // namespace rieopt
