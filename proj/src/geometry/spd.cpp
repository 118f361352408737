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

#include "rieopt/spd.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "rieopt/error.hpp"
#include "rieopt/random.hpp"

namespace rieopt {

using linalg::SpectralFunction;
using linalg::SymEig;

namespace {

// Spectral data of X needed by the affine-invariant formulas.
struct Roots {
  Matrix sqrt;
  Matrix inv_sqrt;
};

Roots roots_of(const SymEig& eig) {
  return {linalg::spd_fun(eig, SpectralFunction::sqrt()),
          linalg::spd_fun(eig, SpectralFunction::inv_sqrt())};
}

// Eigendecomposition of logm(X) from that of X.
SymEig log_eig(const SymEig& eig) {
  return {eig.eigenvalues.array().log().matrix(), eig.eigenvectors};
}

Matrix logm(const SymEig& eig) {
  return linalg::spd_fun(eig, SpectralFunction::log());
}

}  // namespace

SpdManifold::SpdManifold(Index m, Tolerances tolerances)
    : Manifold(tolerances), m_(m) {
  if (m < 1) {
    throw InvalidArgument("SPD: matrix size must be >= 1, got " +
                          std::to_string(m));
  }
}

Matrix SpdManifold::project_tangent(const Matrix&, const Matrix& a) const {
  check_shape(a, "spd.project_tangent");
  return linalg::sym(a);
}

double SpdManifold::point_residual(const Matrix& x) const {
  const double asym = (x - x.transpose()).norm() / std::max(1.0, x.norm());
  const SymEig eig = linalg::sym_eig(x);
  if (!(eig.eigenvalues[0] > linalg::kSpdEigenFloor)) {
    return std::numeric_limits<double>::infinity();
  }
  return asym;
}

double SpdManifold::tangent_residual(const Matrix&, const Matrix& v) const {
  return (v - v.transpose()).norm() / std::max(1.0, v.norm());
}

Matrix SpdManifold::random_point(Rng& rng) const {
  const Matrix q = random_orthonormal(m_, m_, rng);
  std::uniform_real_distribution<double> log_eig(-1.0, 1.0);
  Eigen::VectorXd lambda(m_);
  for (Index i = 0; i < m_; ++i) lambda[i] = std::exp(log_eig(rng));
  return linalg::sym(q * lambda.asDiagonal() * q.transpose());
}

SymEig SpdManifold::checked_eig(const Matrix& x, const char* op) const {
  check_shape(x, op);
  SymEig eig = linalg::sym_eig(x);
  if (!(eig.eigenvalues[0] > linalg::kSpdEigenFloor)) {
    throw NotPositiveDefinite(std::string(op) + " (" + name() +
                                  "): not positive definite, min eigenvalue " +
                                  std::to_string(eig.eigenvalues[0]),
                              eig.eigenvalues[0]);
  }
  return eig;
}

// ---------------------------------------------------------------------------
// Affine-invariant metric

double SpdAffineInvariant::inner(const Matrix& x, const Matrix& u,
                                 const Matrix& v) const {
  check_shape(u, "spd-ai.inner");
  check_shape(v, "spd-ai.inner");
  const Matrix w = linalg::spd_fun(checked_eig(x, "spd-ai.inner"),
                                   SpectralFunction::inv_sqrt());
  const Matrix su = w * linalg::sym(u) * w;
  const Matrix sv = w * linalg::sym(v) * w;
  return su.cwiseProduct(sv).sum();
}

Matrix SpdAffineInvariant::exp(const Matrix& x, const Matrix& u) const {
  check_shape(u, "spd-ai.exp");
  if (u.isZero(0.0)) return x;
  const Roots r = roots_of(checked_eig(x, "spd-ai.exp"));
  const Matrix inner_exp = linalg::spd_fun(
      r.inv_sqrt * linalg::sym(u) * r.inv_sqrt, SpectralFunction::exp());
  return linalg::sym(r.sqrt * inner_exp * r.sqrt);
}

Matrix SpdAffineInvariant::log(const Matrix& x, const Matrix& y) const {
  check_shape(y, "spd-ai.log");
  if (x == y) return Matrix::Zero(m_, m_);
  const Roots r = roots_of(checked_eig(x, "spd-ai.log"));
  const Matrix inner_log =
      linalg::spd_fun(r.inv_sqrt * y * r.inv_sqrt, SpectralFunction::log());
  return linalg::sym(r.sqrt * inner_log * r.sqrt);
}

double SpdAffineInvariant::dist(const Matrix& x, const Matrix& y) const {
  check_shape(y, "spd-ai.dist");
  const Matrix w = linalg::spd_fun(checked_eig(x, "spd-ai.dist"),
                                   SpectralFunction::inv_sqrt());
  const SymEig eig = linalg::sym_eig(w * y * w);
  if (!(eig.eigenvalues[0] > linalg::kSpdEigenFloor)) {
    throw NotPositiveDefinite("spd-ai.dist: second argument is not SPD",
                              eig.eigenvalues[0]);
  }
  return eig.eigenvalues.array().log().matrix().norm();
}

Matrix SpdAffineInvariant::transport(const Matrix& x, const Matrix& y,
                                     const Matrix& v) const {
  check_shape(v, "spd-ai.pt");
  if (x == y) return v;
  const Roots r = roots_of(checked_eig(x, "spd-ai.pt"));
  const SymEig eig = linalg::sym_eig(r.inv_sqrt * y * r.inv_sqrt);
  const Matrix half = linalg::spd_fun(eig, SpectralFunction::sqrt());
  const Matrix e = r.sqrt * half * r.inv_sqrt;
  return linalg::sym(e * linalg::sym(v) * e.transpose());
}

Matrix SpdAffineInvariant::egrad_to_rgrad(const Matrix& x,
                                          const Matrix& g) const {
  check_shape(g, "spd-ai.egrad_to_rgrad");
  return linalg::sym(x * linalg::sym(g) * x);
}

Matrix SpdAffineInvariant::random_tangent(const Matrix& x, Rng& rng) const {
  const Matrix root = linalg::spd_fun(checked_eig(x, "spd-ai.random_tangent"),
                                      SpectralFunction::sqrt());
  return linalg::sym(root * symmetric_gaussian(m_, rng) * root);
}

// ---------------------------------------------------------------------------
// Log-Euclidean metric

double SpdLogEuclidean::inner(const Matrix& x, const Matrix& u,
                              const Matrix& v) const {
  check_shape(u, "spd-le.inner");
  check_shape(v, "spd-le.inner");
  const SymEig eig = checked_eig(x, "spd-le.inner");
  const Matrix du = linalg::dfun_sym(eig, u, SpectralFunction::log());
  const Matrix dv = linalg::dfun_sym(eig, v, SpectralFunction::log());
  return du.cwiseProduct(dv).sum();
}

Matrix SpdLogEuclidean::exp(const Matrix& x, const Matrix& u) const {
  check_shape(u, "spd-le.exp");
  if (u.isZero(0.0)) return x;
  const SymEig eig = checked_eig(x, "spd-le.exp");
  const Matrix moved =
      logm(eig) + linalg::dfun_sym(eig, u, SpectralFunction::log());
  return linalg::spd_fun(moved, SpectralFunction::exp());
}

Matrix SpdLogEuclidean::log(const Matrix& x, const Matrix& y) const {
  check_shape(y, "spd-le.log");
  if (x == y) return Matrix::Zero(m_, m_);
  const SymEig eig = checked_eig(x, "spd-le.log");
  const Matrix diff = logm(checked_eig(y, "spd-le.log")) - logm(eig);
  return linalg::dfun_sym(log_eig(eig), diff, SpectralFunction::exp());
}

double SpdLogEuclidean::dist(const Matrix& x, const Matrix& y) const {
  return (logm(checked_eig(x, "spd-le.dist")) -
          logm(checked_eig(y, "spd-le.dist")))
      .norm();
}

Matrix SpdLogEuclidean::transport(const Matrix& x, const Matrix& y,
                                  const Matrix& v) const {
  check_shape(v, "spd-le.pt");
  if (x == y) return v;
  const Matrix flat = linalg::dfun_sym(checked_eig(x, "spd-le.pt"), v,
                                       SpectralFunction::log());
  return linalg::dfun_sym(log_eig(checked_eig(y, "spd-le.pt")), flat,
                          SpectralFunction::exp());
}

Matrix SpdLogEuclidean::egrad_to_rgrad(const Matrix& x,
                                       const Matrix& g) const {
  check_shape(g, "spd-le.egrad_to_rgrad");
  const SymEig leig = log_eig(checked_eig(x, "spd-le.egrad_to_rgrad"));
  const Matrix once =
      linalg::dfun_sym(leig, linalg::sym(g), SpectralFunction::exp());
  return linalg::dfun_sym(leig, once, SpectralFunction::exp());
}

Matrix SpdLogEuclidean::random_tangent(const Matrix& x, Rng& rng) const {
  return linalg::dfun_sym(log_eig(checked_eig(x, "spd-le.random_tangent")),
                          symmetric_gaussian(m_, rng),
                          SpectralFunction::exp());
}

}  // namespace rieopt
