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

#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "oracle_values.hpp"
#include "rieopt/error.hpp"
#include "rieopt/linalg.hpp"
#include "rieopt/random.hpp"
#include "testing.hpp"

namespace rieopt {
namespace {

namespace o = oracle;
using linalg::SpectralFunction;
using testing::from_array;
using testing::random_spd;
using testing::random_symmetric;
using testing::tangent_with_norm;

Matrix logm(const Matrix& a) { return linalg::spd_fun(a, SpectralFunction::log()); }
Matrix expm(const Matrix& a) { return linalg::spd_fun(a, SpectralFunction::exp()); }

TEST(Spd, Validation) {
  const SpdAffineInvariant spd(3);
  EXPECT_EQ(spd.intrinsic_dim(), 6);
  EXPECT_TRUE(spd.is_point(Matrix::Identity(3, 3)));
  Matrix a = Matrix::Identity(3, 3);
  a(0, 0) = 0.0;
  EXPECT_FALSE(spd.is_point(a));
  a = Matrix::Identity(3, 3);
  a(0, 1) = 1e-6;
  EXPECT_FALSE(spd.is_point(a));
  Matrix u = Matrix::Zero(3, 3);
  u(0, 1) = 1.0;
  EXPECT_FALSE(spd.is_tangent(Matrix::Identity(3, 3), u));
  Matrix bad = Matrix::Identity(3, 3);
  bad(2, 2) = -1.0;
  EXPECT_THROW(spd.exp(bad, Matrix::Identity(3, 3)), NotPositiveDefinite);
}

TEST(SpdAi, MetricCases) {
  const SpdAffineInvariant spd(3);
  Rng rng(1);
  const Matrix u = random_symmetric(3, rng);
  const Matrix v = random_symmetric(3, rng);
  EXPECT_NEAR(spd.inner(Matrix::Identity(3, 3), u, v), (u * v).trace(), 1e-14);
  const Matrix x = random_spd(3, rng);
  EXPECT_EQ(spd.inner(x, Matrix::Zero(3, 3), v), 0.0);
  const Matrix xi = x.inverse();
  EXPECT_NEAR(spd.inner(x, u, v), (xi * u * xi * v).trace(), 1e-10);
}

TEST(SpdAi, OracleValues) {
  const SpdAffineInvariant spd(3);
  const Matrix a = from_array(o::kSpdA, 3, 3);
  const Matrix b = from_array(o::kSpdB, 3, 3);
  const Matrix u = from_array(o::kSpdU, 3, 3);
  const Matrix v = from_array(o::kSpdV, 3, 3);
  EXPECT_NEAR(spd.dist(a, b), o::kAiDist, 1e-13);
  EXPECT_NEAR(spd.inner(a, u, v), o::kAiInner, 1e-13);
  EXPECT_LT((spd.exp(a, u) - from_array(o::kAiExp, 3, 3)).norm(), 1e-13);
}

TEST(SpdAi, TrivialIdentities) {
  const SpdAffineInvariant spd(4);
  Rng rng(2);
  const Matrix x = random_spd(4, rng);
  const Matrix v = random_symmetric(4, rng);
  EXPECT_EQ(spd.exp(x, Matrix::Zero(4, 4)), x);
  EXPECT_EQ(spd.log(x, x), Matrix::Zero(4, 4));
  EXPECT_NEAR(spd.dist(x, x), 0.0, 1e-14);
  EXPECT_EQ(spd.transport(x, x, v), v);
}

TEST(SpdAi, ScalarDistance) {
  const SpdAffineInvariant spd(2);
  EXPECT_NEAR(spd.dist(Matrix::Identity(2, 2), std::exp(1.0) * Matrix::Identity(2, 2)),
              std::sqrt(2.0), 1e-14);
}

TEST(SpdAi, AffineAndInversionInvariance) {
  const SpdAffineInvariant spd(4);
  Rng rng(3);
  for (int k = 0; k < 20; ++k) {
    const Matrix x = random_spd(4, rng);
    const Matrix y = random_spd(4, rng);
    const Matrix a = gaussian_matrix(4, 4, rng) + 2.0 * Matrix::Identity(4, 4);
    const double d = spd.dist(x, y);
    EXPECT_NEAR(spd.dist(a * x * a.transpose(), a * y * a.transpose()), d, 1e-8);
    EXPECT_NEAR(spd.dist(x.inverse(), y.inverse()), d, 1e-8);
  }
}

TEST(SpdLe, MetricCases) {
  const SpdLogEuclidean spd(3);
  Rng rng(4);
  const Matrix u = random_symmetric(3, rng);
  const Matrix v = random_symmetric(3, rng);
  EXPECT_NEAR(spd.inner(Matrix::Identity(3, 3), u, v), (u * v).trace(), 1e-14);
  EXPECT_EQ(spd.inner(random_spd(3, rng), Matrix::Zero(3, 3), v), 0.0);
  // Gram matrix over a basis of Sym(3) is symmetric positive definite.
  const Matrix x = random_spd(3, rng);
  std::vector<Matrix> basis;
  for (Index i = 0; i < 3; ++i) {
    for (Index j = i; j < 3; ++j) {
      Matrix e = Matrix::Zero(3, 3);
      e(i, j) = e(j, i) = 1.0;
      basis.push_back(e);
    }
  }
  Matrix gram(6, 6);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) gram(i, j) = spd.inner(x, basis[i], basis[j]);
  }
  EXPECT_LT((gram - gram.transpose()).norm(), 1e-12);
  EXPECT_GT(linalg::sym_eig(gram).eigenvalues[0], 0.0);
}

TEST(SpdLe, OracleValues) {
  const SpdLogEuclidean spd(3);
  const Matrix a = from_array(o::kSpdA, 3, 3);
  const Matrix b = from_array(o::kSpdB, 3, 3);
  const Matrix u = from_array(o::kSpdU, 3, 3);
  const Matrix v = from_array(o::kSpdV, 3, 3);
  EXPECT_NEAR(spd.dist(a, b), o::kLeDist, 1e-13);
  EXPECT_NEAR(spd.inner(a, u, v), o::kLeInner, 1e-13);
  EXPECT_LT((spd.exp(a, u) - from_array(o::kLeExp, 3, 3)).norm(), 1e-12);
}

TEST(SpdLe, TrivialAndCommutingCases) {
  const SpdLogEuclidean spd(3);
  Rng rng(5);
  const Matrix x = random_spd(3, rng);
  EXPECT_EQ(spd.exp(x, Matrix::Zero(3, 3)), x);
  EXPECT_EQ(spd.log(x, x), Matrix::Zero(3, 3));
  EXPECT_EQ(spd.dist(x, x), 0.0);
  Eigen::Vector3d a(0.5, 2.0, 3.0), b(1.5, 0.25, 3.0);
  const double expect =
      (a.array().log() - b.array().log()).matrix().norm();
  EXPECT_NEAR(spd.dist(a.asDiagonal().toDenseMatrix(),
                       b.asDiagonal().toDenseMatrix()),
              expect, 1e-14);
}

TEST(SpdLe, FlatInLogCoordinates) {
  const SpdLogEuclidean spd(4);
  Rng rng(6);
  for (int k = 0; k < 20; ++k) {
    const Matrix l1 = random_symmetric(4, rng);
    const Matrix l2 = random_symmetric(4, rng);
    EXPECT_NEAR(spd.dist(expm(l1), expm(l2)), (l1 - l2).norm(), 1e-9);
  }
}

TEST(Spd, MetricsAgreeAtIdentity) {
  const SpdAffineInvariant ai(4);
  const SpdLogEuclidean le(4);
  Rng rng(7);
  const Matrix id = Matrix::Identity(4, 4);
  for (int k = 0; k < 20; ++k) {
    const Matrix u = random_symmetric(4, rng);
    const Matrix v = random_symmetric(4, rng);
    EXPECT_NEAR(ai.inner(id, u, v), le.inner(id, u, v), 1e-10);
  }
}

class SpdBoth : public ::testing::TestWithParam<int> {
 protected:
  std::unique_ptr<SpdManifold> make(Index m) const {
    if (GetParam() == 0) return std::make_unique<SpdAffineInvariant>(m);
    return std::make_unique<SpdLogEuclidean>(m);
  }
};

TEST_P(SpdBoth, RoundTripSpeedAndTransport) {
  const auto spd = make(5);
  Rng rng(8);
  for (int k = 0; k < 20; ++k) {
    const Matrix x = spd->random_point(rng);
    const Matrix v = tangent_with_norm(*spd, x, 0.5, rng);
    const Matrix y = spd->exp(x, v);
    EXPECT_TRUE(spd->is_point(y));
    EXPECT_LT(spd->norm(x, spd->log(x, y) - v), 1e-8 * 1.5);
    const Matrix u = tangent_with_norm(*spd, x, 1.0, rng);
    for (double t : {0.1, 0.5, 1.0}) {
      EXPECT_NEAR(spd->dist(x, spd->exp(x, t * u)), t, 1e-8);
    }
    const Matrix a = spd->random_tangent(x, rng);
    const Matrix b = spd->random_tangent(x, rng);
    const Matrix z = spd->random_point(rng);
    EXPECT_NEAR(spd->inner(z, spd->transport(x, z, a), spd->transport(x, z, b)),
                spd->inner(x, a, b), 1e-9 * (1 + std::abs(spd->inner(x, a, b))));
  }
}

TEST_P(SpdBoth, GradientIdentity) {
  const auto spd = make(4);
  Rng rng(9);
  const Matrix c = random_spd(4, rng);
  auto cost = [&](const Matrix& x) {
    return (c * x).trace() + 0.5 * (x * x).trace();
  };
  for (int k = 0; k < 5; ++k) {
    const Matrix x = spd->random_point(rng);
    const Matrix g = gaussian_matrix(4, 4, rng);
    const Matrix egrad = c + x + (g - g.transpose());  // antisymmetric part is ignored
    const Matrix rgrad = spd->egrad_to_rgrad(x, egrad);
    EXPECT_TRUE(spd->is_tangent(x, rgrad));
    const double h = 1e-5;
    for (int j = 0; j < 5; ++j) {
      const Matrix v = tangent_with_norm(*spd, x, 1.0, rng);
      const double fd =
          (cost(spd->exp(x, h * v)) - cost(spd->exp(x, -h * v))) / (2 * h);
      EXPECT_NEAR(spd->inner(x, rgrad, v), fd, 1e-4 * (1 + std::abs(fd)));
    }
  }
}

TEST_P(SpdBoth, RandomTangentSecondMoment) {
  const auto spd = make(3);
  Rng rng(10);
  const Matrix x = spd->random_point(rng);
  double acc = 0.0;
  const int n = 20000;
  for (int k = 0; k < n; ++k) {
    const Matrix t = spd->random_tangent(x, rng);
    acc += spd->inner(x, t, t);
  }
  EXPECT_NEAR(acc / n, 6.0, 0.15);
}

INSTANTIATE_TEST_SUITE_P(Metrics, SpdBoth, ::testing::Values(0, 1));

}  // namespace
}  // namespace rieopt
