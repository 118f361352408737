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

#include "rieopt/random.hpp"

#include <cmath>

namespace rieopt {

Eigen::MatrixXd gaussian_matrix(Eigen::Index rows, Eigen::Index cols,
                                std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd out(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) out(i, j) = normal(rng);
  }
  return out;
}

Eigen::MatrixXd symmetric_gaussian(Eigen::Index m, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double off_scale = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXd out(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    out(j, j) = normal(rng);
    for (Eigen::Index i = j + 1; i < m; ++i) {
      out(i, j) = off_scale * normal(rng);
      out(j, i) = out(i, j);
    }
  }
  return out;
}

Eigen::MatrixXd orthonormal_factor(const Eigen::MatrixXd& a) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ() *
                      Eigen::MatrixXd::Identity(a.rows(), a.cols());
  const Eigen::MatrixXd& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

Eigen::MatrixXd random_orthonormal(Eigen::Index rows, Eigen::Index cols,
                                   std::mt19937_64& rng) {
  return orthonormal_factor(gaussian_matrix(rows, cols, rng));
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  // splitmix64 finalizer over the combined words
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace rieopt
