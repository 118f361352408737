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
#include <random>

namespace rieopt {

// I.i.d. N(0, 1) entries, filled in column-major order.
Eigen::MatrixXd gaussian_matrix(Eigen::Index rows, Eigen::Index cols,
                                std::mt19937_64& rng);

// Symmetric matrix whose isometric coordinates (diagonal, sqrt(2) * upper
// off-diagonal) are i.i.d. N(0, 1): diagonal ~ N(0, 1), off-diagonal
// ~ N(0, 1/2).
Eigen::MatrixXd symmetric_gaussian(Eigen::Index m, std::mt19937_64& rng);

// Orthonormal factor of a Gaussian matrix, thin QR with positive diagonal.
Eigen::MatrixXd random_orthonormal(Eigen::Index rows, Eigen::Index cols,
                                   std::mt19937_64& rng);

// Thin QR orthonormal factor with the sign convention diag(R) >= 0.
Eigen::MatrixXd orthonormal_factor(const Eigen::MatrixXd& a);

// Seed for the k-th independent stream derived from a base seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace rieopt
