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

#include <gtest/gtest.h>

#include <cmath>

#include "oracle_values.hpp"
#include "rieopt/error.hpp"
#include "rieopt/random.hpp"
#include "testing.hpp"

namespace rieopt {
namespace {

namespace o = oracle;
using testing::column;
using testing::tangent_with_norm;

Matrix e(Index d, Index i) {
  Matrix v = Matrix::Zero(d, 1);
  v(i) = 1.0;
  return v;
}

// Uniform direction, radius uniform on [0, r_max).
Matrix ball_vector(Index d, double r_max, Rng& rng) {
  Matrix v = gaussian_matrix(d, 1, rng).normalized();
  std::uniform_real_distribution<double> u(0.0, r_max);
  return u(rng) * v;
}

TEST(Mobius, IdentityAndInverse) {
  Rng rng(1);
  const Matrix y = ball_vector(4, 0.9, rng);
  EXPECT_EQ(mobius_add(Matrix::Zero(4, 1), y), y);
  EXPECT_LT(mobius_add(y, -y).norm(), 1e-12);
  EXPECT_LT(mobius_add(-y, y).norm(), 1e-12);
}

TEST(Mobius, Closure) {
  Rng rng(2);
  for (int k = 0; k < 200; ++k) {
    const Matrix x = ball_vector(5, 0.9, rng);
    const Matrix y = ball_vector(5, 0.9, rng);
    EXPECT_LT(mobius_add(x, y).norm(), 1.0 + 1e-12);
  }
}

TEST(Gyration, MatchesMobiusIdentityInsideBall) {
  Rng rng(3);
  for (int k = 0; k < 50; ++k) {
    const Matrix a = ball_vector(4, 0.8, rng);
    const Matrix b = ball_vector(4, 0.8, rng);
    const Matrix w = ball_vector(4, 0.2, rng);
    const Matrix nested =
        mobius_add(-mobius_add(a, b), mobius_add(a, mobius_add(b, w)));
    EXPECT_LT((gyration(a, b, w) - nested).norm(), 1e-12);
  }
}

TEST(Gyration, IsLinearIsometry) {
  Rng rng(4);
  const Matrix a = ball_vector(6, 0.9, rng);
  const Matrix b = ball_vector(6, 0.9, rng);
  const Matrix u = gaussian_matrix(6, 1, rng) * 5.0;
  const Matrix v = gaussian_matrix(6, 1, rng);
  EXPECT_NEAR(gyration(a, b, u).norm(), u.norm(), 1e-12);
  EXPECT_LT((gyration(a, b, 2 * u + v) -
             (2 * gyration(a, b, u) + gyration(a, b, v))).norm(), 1e-12);
}

TEST(Poincare, Metric) {
  const PoincareBall ball(3);
  Rng rng(5);
  const Matrix u = gaussian_matrix(3, 1, rng);
  const Matrix v = gaussian_matrix(3, 1, rng);
  EXPECT_NEAR(ball.inner(Matrix::Zero(3, 1), u, v),
              4.0 * (u.transpose() * v)(0), 1e-14);
  EXPECT_EQ(ball.inner(u * 0.1, Matrix::Zero(3, 1), v), 0.0);
  Matrix x = Matrix::Zero(3, 1);
  x(1) = std::sqrt(0.5);
  EXPECT_NEAR(ball.inner(x, e(3, 0), e(3, 0)), 16.0, 1e-12);
}

TEST(Poincare, OracleValues) {
  const PoincareBall ball(3);
  const Matrix x = column(o::kBallX);
  const Matrix y = column(o::kBallY);
  EXPECT_NEAR(ball.dist(x, y), o::kBallDist, 1e-14);
  EXPECT_NEAR(ball.norm(x, ball.log(x, y)), o::kBallDist, 1e-14);
  EXPECT_LT((ball.transport(x, y, column(o::kBallV)) -
             column(o::kBallTransport)).norm(), 1e-13);
  EXPECT_LT((poincare_to_lorentz(x) - column(o::kLorentzX)).norm(), 1e-14);
  EXPECT_LT((poincare_to_lorentz(y) - column(o::kLorentzY)).norm(), 1e-14);
}

TEST(Poincare, ExpAtOrigin) {
  const PoincareBall ball(4);
  Rng rng(6);
  const Matrix dir = gaussian_matrix(4, 1, rng).normalized();
  for (double t : {0.1, 0.7, 2.0}) {
    const Matrix p = ball.exp(Matrix::Zero(4, 1), t * dir);
    EXPECT_NEAR(p.norm(), std::tanh(t), 1e-14);
    EXPECT_NEAR(ball.dist(Matrix::Zero(4, 1), p), 2 * t, 1e-12);
    EXPECT_LT((ball.log(Matrix::Zero(4, 1), p) - t * dir).norm(), 1e-12);
  }
  const Matrix x = ball_vector(4, 0.5, rng);
  EXPECT_EQ(ball.exp(x, Matrix::Zero(4, 1)), x);
  EXPECT_EQ(ball.log(x, x), Matrix::Zero(4, 1));
}

TEST(Poincare, RadialDistance) {
  const PoincareBall ball(2);
  for (double r : {0.1, 0.5, 0.9, 0.999}) {
    EXPECT_NEAR(ball.dist(Matrix::Zero(2, 1), r * e(2, 0)),
                2 * std::atanh(r), 1e-12);
  }
}

TEST(Poincare, RoundTripUpToNormFive) {
  const PoincareBall ball(3);
  Rng rng(7);
  for (int k = 0; k < 50; ++k) {
    const Matrix x = ball_vector(3, 0.6, rng);
    const double len = 0.1 + 4.9 * (k / 49.0);
    const Matrix v = tangent_with_norm(ball, x, len, rng);
    const Matrix back = ball.log(x, ball.exp(x, v));
    EXPECT_LT(ball.norm(x, back - v), 1e-9 * (1 + len)) << len;
  }
}

TEST(Poincare, DistSymmetry) {
  const PoincareBall ball(5);
  Rng rng(8);
  for (int k = 0; k < 100; ++k) {
    const Matrix x = ball_vector(5, 0.9, rng);
    const Matrix y = ball_vector(5, 0.9, rng);
    EXPECT_NEAR(ball.dist(x, y), ball.dist(y, x), 1e-12);
    EXPECT_NEAR(ball.dist(x, x), 0.0, 1e-14);
  }
}

TEST(Poincare, TransportIsometry) {
  const PoincareBall ball(4);
  Rng rng(9);
  const Matrix v = gaussian_matrix(4, 1, rng);
  const Matrix x0 = ball_vector(4, 0.5, rng);
  EXPECT_EQ(ball.transport(x0, x0, v), v);
  for (int k = 0; k < 100; ++k) {
    const Matrix x = ball_vector(4, 0.9, rng);
    const Matrix y = ball_vector(4, 0.9, rng);
    const Matrix u = ball.random_tangent(x, rng);
    const Matrix w = ball.random_tangent(x, rng);
    EXPECT_NEAR(ball.inner(y, ball.transport(x, y, u), ball.transport(x, y, w)),
                ball.inner(x, u, w), 1e-9 * (1 + std::abs(ball.inner(x, u, w))));
  }
}

TEST(Poincare, EgradToRgrad) {
  const PoincareBall ball(3);
  const Matrix g = Matrix::Constant(3, 1, 2.0);
  EXPECT_LT((ball.egrad_to_rgrad(Matrix::Zero(3, 1), g) - g / 4).norm(), 1e-15);
  EXPECT_EQ(ball.egrad_to_rgrad(0.3 * e(3, 1), Matrix::Zero(3, 1)).norm(), 0.0);
}

TEST(Poincare, BoundaryClamp) {
  const Matrix near = (1.0 - 1e-9) * e(3, 0);
  const Matrix c = PoincareBall::clamp_to_ball(near);
  EXPECT_NEAR(c.norm(), 1.0 - PoincareBall::kBoundaryMargin, 1e-15);
  const PoincareBall ball(3);
  EXPECT_FALSE(ball.is_point(e(3, 0)));
  EXPECT_TRUE(ball.is_point(c));
  const Matrix far = ball.exp(Matrix::Zero(3, 1), 40.0 * e(3, 0));
  EXPECT_TRUE(ball.is_point(far));
}

TEST(Lorentz, InnerProduct) {
  EXPECT_EQ(lorentz_inner(e(4, 0), e(4, 0)), -1.0);
  EXPECT_EQ(lorentz_inner(e(4, 1), e(4, 1)), 1.0);
  const LorentzHyperboloid h(5);
  Rng rng(10);
  for (int k = 0; k < 20; ++k) {
    const Matrix x = h.random_point(rng);
    EXPECT_NEAR(lorentz_inner(x, x), -1.0, 1e-9 * x(0) * x(0));
  }
}

TEST(Lorentz, Closedforms) {
  const LorentzHyperboloid h(4);
  const Matrix x = h.origin();
  Rng rng(11);
  const Matrix v = h.random_tangent(x, rng);
  EXPECT_EQ(h.exp(x, Matrix::Zero(4, 1)), x);
  EXPECT_EQ(h.log(x, x), Matrix::Zero(4, 1));
  EXPECT_EQ(h.transport(x, x, v), v);
  for (double t : {0.2, 1.0, 3.0}) {
    const Matrix y = h.exp(x, t * e(4, 1));
    EXPECT_NEAR(y(0), std::cosh(t), 1e-12 * std::cosh(t));
    EXPECT_NEAR(y(1), std::sinh(t), 1e-12 * std::cosh(t));
    EXPECT_NEAR(h.dist(x, y), t, 1e-12);
  }
}

TEST(Lorentz, OracleDistance) {
  const LorentzHyperboloid h(4);
  EXPECT_NEAR(h.dist(column(o::kLorentzX), column(o::kLorentzY)),
              o::kBallDist, 1e-14);
}

TEST(Lorentz, InvalidPairRejected) {
  const LorentzHyperboloid h(3);
  Matrix lower = -h.origin();
  EXPECT_THROW(h.dist(h.origin(), lower), InvalidPoint);
}

TEST(Lorentz, TransportAndRoundTrip) {
  const LorentzHyperboloid h(6);
  Rng rng(12);
  for (int k = 0; k < 100; ++k) {
    const Matrix x = h.random_point(rng);
    const Matrix y = h.random_point(rng);
    const Matrix u = h.random_tangent(x, rng);
    const Matrix w = h.random_tangent(x, rng);
    const Matrix tu = h.transport(x, y, u);
    EXPECT_TRUE(h.is_tangent(y, tu));
    EXPECT_NEAR(h.inner(y, tu, h.transport(x, y, w)), h.inner(x, u, w),
                1e-9 * (1 + std::abs(h.inner(x, u, w))));
    const Matrix v = tangent_with_norm(h, x, 0.5, rng);
    EXPECT_LT(h.norm(x, h.log(x, h.exp(x, v)) - v), 1e-9);
  }
}

TEST(Models, DistancesAgree) {
  const PoincareBall ball(5);
  const LorentzHyperboloid h(6);
  Rng rng(13);
  for (int k = 0; k < 100; ++k) {
    const Matrix x = ball_vector(5, 0.9, rng);
    const Matrix y = ball_vector(5, 0.9, rng);
    EXPECT_NEAR(ball.dist(x, y),
                h.dist(poincare_to_lorentz(x), poincare_to_lorentz(y)), 1e-8);
    EXPECT_LT((lorentz_to_poincare(poincare_to_lorentz(x)) - x).norm(), 1e-14);
  }
}

TEST(Hyperbolic, CoreProperties) {
  Rng rng(14);
  for (Index d : {2, 50, 1000}) {
    const PoincareBall ball(d);
    const LorentzHyperboloid h(d);
    for (const Manifold* m : {static_cast<const Manifold*>(&ball),
                              static_cast<const Manifold*>(&h)}) {
      for (int k = 0; k < 10; ++k) {
        const Matrix x = m->random_point(rng);
        const Matrix v = tangent_with_norm(*m, x, 0.5, rng);
        EXPECT_LT(m->norm(x, m->log(x, m->exp(x, v)) - v), 1e-8 * 1.5)
            << m->name() << " d=" << d;
        const Matrix u = tangent_with_norm(*m, x, 1.0, rng);
        for (double t : {0.1, 0.5, 1.0}) {
          EXPECT_NEAR(m->dist(x, m->exp(x, t * u)), t, 1e-8);
        }
      }
    }
  }
}

}  // namespace
}  // namespace rieopt
