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

#include "rieopt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rieopt/error.hpp"

namespace rieopt::linalg {
namespace {

// Below this relative gap two eigenvalues are treated as equal and the
// divided difference is replaced by the derivative.
constexpr double kDegenerateGap = 1e-10;

void check_domain(const Vector& eigenvalues, SpectralFunction f) {
  if (!f.requires_spd() || eigenvalues.size() == 0) return;
  const double min_eig = eigenvalues.minCoeff();
  if (!(min_eig > kSpdEigenFloor)) {
    throw NotPositiveDefinite(std::string("spd_fun(") + f.name() +
                                  "): matrix is not positive definite, "
                                  "min eigenvalue " +
                                  std::to_string(min_eig),
                              min_eig);
  }
}

// (f(a) - f(b)) / (a - b), evaluated without cancellation for exp and log.
double divided_difference(SpectralFunction f, double a, double b) {
  const double scale = std::max(1.0, std::abs(a));
  if (std::abs(a - b) < kDegenerateGap * scale) {
    return f.derivative(0.5 * (a + b));
  }
  switch (f.kind) {
    case SpectralFunction::Kind::kExp:
      return std::exp(b) * std::expm1(a - b) / (a - b);
    case SpectralFunction::Kind::kLog:
      return std::log1p((a - b) / b) / (a - b);
    default:
      return (f.value(a) - f.value(b)) / (a - b);
  }
}

}  // namespace

double SpectralFunction::value(double lambda) const {
  switch (kind) {
    case Kind::kExp:
      return std::exp(lambda);
    case Kind::kLog:
      return std::log(lambda);
    case Kind::kSqrt:
      return std::sqrt(lambda);
    case Kind::kInvSqrt:
      return 1.0 / std::sqrt(lambda);
    case Kind::kPow:
      return std::pow(lambda, power);
  }
  return 0.0;
}

double SpectralFunction::derivative(double lambda) const {
  switch (kind) {
    case Kind::kExp:
      return std::exp(lambda);
    case Kind::kLog:
      return 1.0 / lambda;
    case Kind::kSqrt:
      return 0.5 / std::sqrt(lambda);
    case Kind::kInvSqrt:
      return -0.5 / (lambda * std::sqrt(lambda));
    case Kind::kPow:
      return power * std::pow(lambda, power - 1.0);
  }
  return 0.0;
}

const char* SpectralFunction::name() const {
  switch (kind) {
    case Kind::kExp:
      return "exp";
    case Kind::kLog:
      return "log";
    case Kind::kSqrt:
      return "sqrt";
    case Kind::kInvSqrt:
      return "inv_sqrt";
    case Kind::kPow:
      return "pow";
  }
  return "?";
}

Matrix SymEig::reconstruct() const {
  return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.transpose();
}

Matrix sym(const Matrix& g) { return 0.5 * (g + g.transpose()); }

SymEig sym_eig(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw InvalidArgument("sym_eig: matrix is " + std::to_string(a.rows()) +
                          "x" + std::to_string(a.cols()) + ", not square");
  }
  if (!a.allFinite()) {
    throw NumericFailure("sym_eig: non-finite matrix entries");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym(a));
  if (solver.info() != Eigen::Success) {
    throw NumericFailure("sym_eig: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix spd_fun(const Matrix& a, SpectralFunction f) {
  return spd_fun(sym_eig(a), f);
}

Matrix spd_fun(const SymEig& eig, SpectralFunction f) {
  check_domain(eig.eigenvalues, f);
  const Vector mapped = eig.eigenvalues.unaryExpr(
      [&f](double lambda) { return f.value(lambda); });
  return eig.eigenvectors * mapped.asDiagonal() * eig.eigenvectors.transpose();
}

Matrix dfun_sym(const Matrix& a, const Matrix& u, SpectralFunction f) {
  return dfun_sym(sym_eig(a), u, f);
}

Matrix dfun_sym(const SymEig& eig, const Matrix& u, SpectralFunction f) {
  if (f.kind != SpectralFunction::Kind::kExp &&
      f.kind != SpectralFunction::Kind::kLog) {
    throw InvalidArgument(std::string("dfun_sym: unsupported function ") +
                          f.name());
  }
  const Eigen::Index m = eig.eigenvalues.size();
  if (u.rows() != m || u.cols() != m) {
    throw InvalidArgument("dfun_sym: direction has the wrong shape");
  }
  check_domain(eig.eigenvalues, f);
  const Matrix& q = eig.eigenvectors;
  Matrix rotated = q.transpose() * sym(u) * q;
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = j; i < m; ++i) {
      const double gamma =
          divided_difference(f, eig.eigenvalues[i], eig.eigenvalues[j]);
      rotated(i, j) *= gamma;
      if (i != j) rotated(j, i) *= gamma;
    }
  }
  return sym(q * rotated * q.transpose());
}

}  // namespace rieopt::linalg
