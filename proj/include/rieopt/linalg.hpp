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

namespace rieopt::linalg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Smallest eigenvalue accepted by the SPD-restricted spectral functions.
inline constexpr double kSpdEigenFloor = 1e-12;

// Spectral decomposition A = Q diag(eigenvalues) Q^T with ascending
// eigenvalues and orthogonal Q.
struct SymEig {
  Vector eigenvalues;
  Matrix eigenvectors;

  Matrix reconstruct() const;
};

// Scalar function applied through the spectrum.
struct SpectralFunction {
  enum class Kind { kExp, kLog, kSqrt, kInvSqrt, kPow };

  Kind kind = Kind::kExp;
  double power = 1.0;  // only for kPow

  static SpectralFunction exp() { return {Kind::kExp, 1.0}; }
  static SpectralFunction log() { return {Kind::kLog, 1.0}; }
  static SpectralFunction sqrt() { return {Kind::kSqrt, 0.5}; }
  static SpectralFunction inv_sqrt() { return {Kind::kInvSqrt, -0.5}; }
  static SpectralFunction pow(double t) { return {Kind::kPow, t}; }

  // exp is defined on every symmetric matrix, the others need SPD input.
  bool requires_spd() const { return kind != Kind::kExp; }
  double value(double lambda) const;
  double derivative(double lambda) const;
  const char* name() const;
};

// Symmetric part (G + G^T) / 2.
Matrix sym(const Matrix& g);

// Symmetrizes its input. Throws NumericFailure on non-finite entries and
// InvalidArgument on non-square input.
SymEig sym_eig(const Matrix& a);

// Q f(Lambda) Q^T. Throws NotPositiveDefinite when f needs SPD input and the
// smallest eigenvalue is <= kSpdEigenFloor.
Matrix spd_fun(const Matrix& a, SpectralFunction f);
Matrix spd_fun(const SymEig& eig, SpectralFunction f);

// Directional derivative D f(A)[U] of the matrix function f in {exp, log} by
// the Daleckii-Krein formula Q (Gamma o Q^T U Q) Q^T, where Gamma holds the
// first divided differences of f over the spectrum of A.
Matrix dfun_sym(const Matrix& a, const Matrix& u, SpectralFunction f);
Matrix dfun_sym(const SymEig& eig, const Matrix& u, SpectralFunction f);

}  // namespace rieopt::linalg
