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
#include <span>
#include <vector>

#include "rieopt/core.hpp"

namespace rieopt::privacy {

struct PrivacyBudget {
  double epsilon = 1.0;
  double delta = 1e-6;

  // epsilon > 0 and delta in [0, 1); delta == 0 only when allowed.
  void validate(bool allow_zero_delta = false) const;
};

// Integer orders 2..64 plus 128 and 256.
const std::vector<double>& default_orders();

// RDP ledger. Composition is an explicit fold returning a new value.
struct AccountantState {
  std::vector<double> orders;
  std::vector<double> rdp;
  std::int64_t steps_composed = 0;

  static AccountantState with_orders(std::vector<double> orders);
  static AccountantState with_default_orders();
};

// Adds `times` copies of a per-step RDP curve (one value per order).
AccountantState compose(const AccountantState& state,
                        std::span<const double> per_step_rdp,
                        std::int64_t times = 1);
AccountantState compose_gaussian(const AccountantState& state,
                                 double sigma_mult, std::int64_t steps);
// Orders must be integers >= 2.
AccountantState compose_subsampled_gaussian(const AccountantState& state,
                                            double sigma_mult, double q,
                                            std::int64_t steps);

// order / (2 sigma_mult^2)
double rdp_gaussian(double sigma_mult, double order);

// RDP of the Poisson-subsampled Gaussian mechanism at integer order a:
// log(sum_k C(a,k) (1-q)^(a-k) q^k exp((k^2 - k) / (2 sigma^2))) / (a - 1).
double rdp_subsampled_gaussian(double sigma_mult, double q, int order);

// min_a rdp(a) + log(1/delta) / (a - 1).
double rdp_to_dp(const AccountantState& state, double delta);

// sqrt(2 log(1.25/delta)) / epsilon.
double classical_gaussian_sigma(const PrivacyBudget& budget);

// Search bracket of the calibration routines.
inline constexpr double kSigmaLower = 1e-3;
inline constexpr double kSigmaUpper = 1e6;
inline constexpr double kSigmaRelTol = 1e-4;

// Smallest noise multiplier whose steps-fold Gaussian composition meets the
// budget. The mechanism adds tangent noise of std sigma_mult * (2 clip / n)
// to the clipped mean gradient (replace-one sensitivity).
double calibrate_dprgd(const PrivacyBudget& budget, double clip, long n,
                       long steps);
// As calibrate_dprgd with Poisson sampling rate batch / n.
double calibrate_dprsgd(const PrivacyBudget& budget, double clip, long n,
                        long steps, long batch);

struct McmcOptions {
  int burn_in = 500;
  // <= 0 selects sigma / 2.
  double proposal_std = 0.0;
};

// Metropolis-Hastings sample from the density proportional to
// exp(-dist(x, center) / sigma), sigma = sensitivity / epsilon.
ManifoldPoint rie_laplace_mechanism(const ManifoldPoint& center,
                                    double sensitivity, double epsilon,
                                    const McmcOptions& mcmc,
                                    std::uint64_t seed);

// expm(logm(X) + N), N symmetric with i.i.d. N(0, s^2) isometric coordinates,
// s = sensitivity * sqrt(2 log(1.25/delta)) / epsilon.
ManifoldPoint log_euclidean_mechanism(const ManifoldPoint& x,
                                      double sensitivity,
                                      const PrivacyBudget& budget,
                                      std::uint64_t seed);

}  // namespace rieopt::privacy
