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
#include "rieopt/linalg.hpp"

namespace rieopt {

// Shared point/tangent handling for SPD(m) = {X = X^T, X > 0}. The tangent
// space at every point is the space of symmetric m x m matrices; ambient
// gradients are symmetrized before use.
class SpdManifold : public Manifold {
 public:
  explicit SpdManifold(Index m, Tolerances tolerances = {});

  Index m() const { return m_; }

  Shape ambient_shape() const override { return {m_, m_}; }
  Index intrinsic_dim() const override { return m_ * (m_ + 1) / 2; }

  Matrix project_tangent(const Matrix& x, const Matrix& a) const override;
  // Relative asymmetry; infinite when the smallest eigenvalue is at or below
  // linalg::kSpdEigenFloor.
  double point_residual(const Matrix& x) const override;
  double tangent_residual(const Matrix& x, const Matrix& v) const override;
  // Q diag(exp(u)) Q^T, Q Haar-orthogonal, u uniform on [-1, 1]^m.
  Matrix random_point(Rng& rng) const override;

 protected:
  linalg::SymEig checked_eig(const Matrix& x, const char* op) const;

  Index m_;
};

// Affine-invariant metric <U, V>_X = tr(X^-1 U X^-1 V).
class SpdAffineInvariant final : public SpdManifold {
 public:
  using SpdManifold::SpdManifold;

  std::string name() const override { return "spd-ai"; }

  // tr(S_U S_V) with S_W = X^-1/2 W X^-1/2.
  double inner(const Matrix& x, const Matrix& u,
               const Matrix& v) const override;
  // X^1/2 expm(X^-1/2 U X^-1/2) X^1/2
  Matrix exp(const Matrix& x, const Matrix& u) const override;
  // X^1/2 logm(X^-1/2 Y X^-1/2) X^1/2
  Matrix log(const Matrix& x, const Matrix& y) const override;
  // |logm(X^-1/2 Y X^-1/2)|_F
  double dist(const Matrix& x, const Matrix& y) const override;
  // E V E^T, E = X^1/2 expm(logm(X^-1/2 Y X^-1/2) / 2) X^-1/2
  Matrix transport(const Matrix& x, const Matrix& y,
                   const Matrix& v) const override;
  // X sym(G) X
  Matrix egrad_to_rgrad(const Matrix& x, const Matrix& g) const override;
  Matrix random_tangent(const Matrix& x, Rng& rng) const override;
};

// Log-Euclidean metric <U, V>_X = tr(D logm(X)[U] D logm(X)[V]), i.e. the
// pullback of the Frobenius metric through the matrix logarithm.
class SpdLogEuclidean final : public SpdManifold {
 public:
  using SpdManifold::SpdManifold;

  std::string name() const override { return "spd-le"; }

  double inner(const Matrix& x, const Matrix& u,
               const Matrix& v) const override;
  // expm(logm(X) + D logm(X)[U])
  Matrix exp(const Matrix& x, const Matrix& u) const override;
  // D expm(logm(X))[logm(Y) - logm(X)]
  Matrix log(const Matrix& x, const Matrix& y) const override;
  // |logm(X) - logm(Y)|_F
  double dist(const Matrix& x, const Matrix& y) const override;
  // D expm(logm(Y))[D logm(X)[V]]
  Matrix transport(const Matrix& x, const Matrix& y,
                   const Matrix& v) const override;
  // D expm(logm(X)) applied twice to sym(G).
  Matrix egrad_to_rgrad(const Matrix& x, const Matrix& g) const override;
  Matrix random_tangent(const Matrix& x, Rng& rng) const override;
};

}  // namespace rieopt
