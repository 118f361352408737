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

#include "rieopt/grassmann.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rieopt/error.hpp"
#include "rieopt/random.hpp"

namespace rieopt {
namespace {

struct ThinSvd {
  Matrix u;
  Eigen::VectorXd s;
  Matrix v;
};

ThinSvd thin_svd(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

}  // namespace

Eigen::VectorXd principal_angles(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw InvalidArgument("principal_angles: shape mismatch");
  }
  const Matrix xty = x.transpose() * y;
  const Eigen::VectorXd cosines =
      Eigen::JacobiSVD<Matrix>(xty).singularValues();
  const Eigen::VectorXd sines =
      Eigen::JacobiSVD<Matrix>(y - x * xty).singularValues();
  const Index r = x.cols();
  const double pivot = std::sqrt(0.5);
  Eigen::VectorXd angles(r);
  for (Index i = 0; i < r; ++i) {
    const double c = std::clamp(cosines[i], 0.0, 1.0);
    if (c >= pivot) {
      angles[i] = std::asin(std::clamp(sines[r - 1 - i], 0.0, 1.0));
    } else {
      angles[i] = std::acos(c);
    }
  }
  std::sort(angles.begin(), angles.end());
  return angles;
}

Grassmann::Grassmann(Index m, Index r, Tolerances tolerances)
    : Manifold(tolerances), m_(m), r_(r) {
  if (!(r >= 1 && m > r)) {
    throw InvalidArgument("Grassmann: need m > r >= 1, got (" +
                          std::to_string(m) + ", " + std::to_string(r) + ")");
  }
}

double Grassmann::inner(const Matrix& x, const Matrix& u,
                        const Matrix& v) const {
  check_tangent(x, u, "grassmann.inner");
  check_tangent(x, v, "grassmann.inner");
  return u.cwiseProduct(v).sum();
}

Matrix Grassmann::exp(const Matrix& x, const Matrix& u) const {
  check_shape(u, "grassmann.exp");
  if (u.isZero(0.0)) return x;
  const ThinSvd svd = thin_svd(u);
  const Eigen::VectorXd c = svd.s.array().cos();
  const Eigen::VectorXd s = svd.s.array().sin();
  const Matrix y = (x * svd.v * c.asDiagonal() + svd.u * s.asDiagonal()) *
                   svd.v.transpose();
  return orthonormal_factor(y);
}

Matrix Grassmann::log(const Matrix& x, const Matrix& y) const {
  check_shape(y, "grassmann.log");
  if (x == y) return Matrix::Zero(m_, r_);
  const Matrix xty = x.transpose() * y;
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Matrix>(xty).singularValues();
  if (!(sv[sv.size() - 1] > kCutLocusGap)) {
    throw DomainError(
        "grassmann.log: X^T Y is singular (subspaces at the cut locus), "
        "smallest singular value " +
        std::to_string(sv[sv.size() - 1]));
  }
  // (I - X X^T) Y (X^T Y)^{-1}
  const Matrix residual = y - x * xty;
  const Matrix m =
      xty.transpose().partialPivLu().solve(residual.transpose()).transpose();
  const ThinSvd svd = thin_svd(m);
  const Eigen::VectorXd angles = svd.s.array().atan();
  return svd.u * angles.asDiagonal() * svd.v.transpose();
}

double Grassmann::dist(const Matrix& x, const Matrix& y) const {
  check_shape(y, "grassmann.dist");
  return principal_angles(x, y).norm();
}

Matrix Grassmann::transport_along(const Matrix& x, const Matrix& direction,
                                  const Matrix& v) const {
  check_shape(direction, "grassmann.pt");
  check_shape(v, "grassmann.pt");
  if (direction.isZero(0.0)) return v;
  const ThinSvd svd = thin_svd(direction);
  const Eigen::VectorXd sin_s = svd.s.array().sin();
  const Eigen::VectorXd cos_m1 = svd.s.array().cos() - 1.0;
  const Matrix ptv = svd.u.transpose() * v;
  return v + (-(x * svd.v) * sin_s.asDiagonal() +
              svd.u * cos_m1.asDiagonal()) *
                 ptv;
}

Matrix Grassmann::transport(const Matrix& x, const Matrix& y,
                            const Matrix& v) const {
  check_shape(y, "grassmann.pt");
  if (x == y) return v;
  const Matrix direction = log(x, y);
  const Matrix moved = transport_along(x, direction, v);
  // moved is horizontal at y_geo = exp(x, direction) = y O with O = y^T y_geo;
  // the lift at y is moved O^T.
  const Matrix rotation = y.transpose() * exp(x, direction);
  return moved * rotation.transpose();
}

Matrix Grassmann::egrad_to_rgrad(const Matrix& x, const Matrix& g) const {
  return project_tangent(x, g);
}

Matrix Grassmann::project_tangent(const Matrix& x, const Matrix& a) const {
  check_shape(a, "grassmann.project_tangent");
  return a - x * (x.transpose() * a);
}

double Grassmann::point_residual(const Matrix& x) const {
  return (x.transpose() * x - Matrix::Identity(r_, r_)).norm();
}

double Grassmann::tangent_residual(const Matrix& x, const Matrix& v) const {
  return (x.transpose() * v).norm() / std::max(1.0, v.norm());
}

Matrix Grassmann::random_point(Rng& rng) const {
  return random_orthonormal(m_, r_, rng);
}

Matrix Grassmann::random_tangent(const Matrix& x, Rng& rng) const {
  return project_tangent(x, gaussian_matrix(m_, r_, rng));
}

}  // namespace rieopt
