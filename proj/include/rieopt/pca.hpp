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

#include <cstdint>
#include <string_view>
#include <vector>

#include "rieopt/core.hpp"
#include "rieopt/optimizers.hpp"
#include "rieopt/privacy.hpp"

namespace rieopt::pca {

// Synthetic data with population covariance Q diag(scale * decay^k) Q^T.
struct SyntheticSpec {
  long n = 200;
  long d = 50;
  double decay = 0.5;
  double scale = 150.0;
};

// "n:d:decay" or "n:d:decay:scale".
SyntheticSpec parse_synthetic(std::string_view text);
// n x d, one sample per row.
Matrix synthetic_data(const SyntheticSpec& spec, std::uint64_t seed);

// f(U; z) = |z - U U^T z|^2 with Euclidean gradient -2 z z^T U.
CostFn reconstruction_cost();
// (1/n) sum_i |z_i - U U^T z_i|^2 over the rows of data.
double reconstruction_loss(const Matrix& data, const Matrix& u);

struct Optimum {
  Matrix subspace;  // top-rank eigenvectors of Z^T Z / n
  double loss = 0.0;
};
Optimum eigen_optimum(const Matrix& data, Index rank);

struct PcaConfig {
  Index rank = 5;
  double lr = 3e-3;
  int epochs = 400;
  bool is_private = false;
  privacy::PrivacyBudget budget{0.1, 1e-6};
  double clip = 0.1;
  std::uint64_t seed = 0;
};

struct PcaRun {
  Matrix subspace;
  double initial_loss = 0.0;
  double final_loss = 0.0;
  std::vector<optim::TracePoint> trace;
  // Calibrated noise multiplier; zero for non-private runs.
  double sigma_mult = 0.0;
};

// Full-batch rsgd (or dp_rsgd with calibrated noise) on Gr(d, rank) from a
// seeded random subspace.
PcaRun run_pca(const Matrix& data, const PcaConfig& config);

}  // namespace rieopt::pca
