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

#include "rieopt/privacy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "rieopt/error.hpp"
#include "rieopt/linalg.hpp"
#include "rieopt/random.hpp"
#include "rieopt/spd.hpp"

namespace rieopt::privacy {

namespace {

void require_positive(double value, const char* what, const char* op) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw InvalidArgument(std::string(op) + ": " + what +
                          " must be finite and positive, got " +
                          std::to_string(value));
  }
}

double log_sum_exp(std::span<const double> terms) {
  const double top = *std::max_element(terms.begin(), terms.end());
  if (!std::isfinite(top)) return top;
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - top);
  return top + std::log(acc);
}

void check_integer_orders(const AccountantState& state, const char* op) {
  for (double a : state.orders) {
    if (a < 2.0 || a != std::floor(a)) {
      throw InvalidArgument(std::string(op) +
                            ": subsampled accounting needs integer orders "
                            ">= 2, got " +
                            std::to_string(a));
    }
  }
}

// Smallest sigma on [kSigmaLower, kSigmaUpper] with epsilon_of(sigma) <= eps,
// bisected in log space.
double search_sigma(const std::function<double(double)>& epsilon_of,
                    double epsilon, const char* op) {
  double lo = kSigmaLower;
  double hi = kSigmaUpper;
  if (epsilon_of(hi) > epsilon) {
    throw CalibrationFailure(std::string(op) + ": budget epsilon " +
                                 std::to_string(epsilon) +
                                 " unreachable on the search bracket",
                             lo, hi);
  }
  if (epsilon_of(lo) <= epsilon) return lo;
  while (hi / lo - 1.0 > kSigmaRelTol) {
    const double mid = std::sqrt(lo * hi);
    if (epsilon_of(mid) <= epsilon) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

void check_calibration_args(const PrivacyBudget& budget, double clip, long n,
                            long steps, const char* op) {
  budget.validate();
  require_positive(clip, "clip", op);
  if (n < 1) throw InvalidArgument(std::string(op) + ": n must be >= 1");
  if (steps < 1) throw InvalidArgument(std::string(op) + ": steps must be >= 1");
}

}  // namespace

void PrivacyBudget::validate(bool allow_zero_delta) const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidArgument("PrivacyBudget: epsilon must be positive, got " +
                          std::to_string(epsilon));
  }
  const bool delta_ok =
      allow_zero_delta ? (delta >= 0.0 && delta < 1.0)
                       : (delta > 0.0 && delta < 1.0);
  if (!delta_ok) {
    throw InvalidArgument(std::string("PrivacyBudget: delta must lie in ") +
                          (allow_zero_delta ? "[0, 1)" : "(0, 1)") + ", got " +
                          std::to_string(delta));
  }
}

const std::vector<double>& default_orders() {
  static const std::vector<double> orders = [] {
    std::vector<double> o;
    for (int a = 2; a <= 64; ++a) o.push_back(a);
    o.push_back(128);
    o.push_back(256);
    return o;
  }();
  return orders;
}

AccountantState AccountantState::with_orders(std::vector<double> orders) {
  for (double a : orders) {
    if (!(a > 1.0) || !std::isfinite(a)) {
      throw InvalidArgument("AccountantState: orders must be finite and > 1");
    }
  }
  AccountantState s;
  s.rdp.assign(orders.size(), 0.0);
  s.orders = std::move(orders);
  return s;
}

AccountantState AccountantState::with_default_orders() {
  return with_orders(default_orders());
}

AccountantState compose(const AccountantState& state,
                        std::span<const double> per_step_rdp,
                        std::int64_t times) {
  if (per_step_rdp.size() != state.orders.size() ||
      state.rdp.size() != state.orders.size()) {
    throw InvalidArgument("compose: RDP curve does not match the order grid");
  }
  if (times < 0) throw InvalidArgument("compose: times must be >= 0");
  AccountantState out = state;
  const double k = static_cast<double>(times);
  for (std::size_t i = 0; i < per_step_rdp.size(); ++i) {
    if (!(per_step_rdp[i] >= 0.0)) {
      throw InvalidArgument("compose: RDP values must be nonnegative");
    }
    out.rdp[i] += k * per_step_rdp[i];
  }
  out.steps_composed += times;
  return out;
}

AccountantState compose_gaussian(const AccountantState& state,
                                 double sigma_mult, std::int64_t steps) {
  std::vector<double> curve;
  curve.reserve(state.orders.size());
  for (double a : state.orders) curve.push_back(rdp_gaussian(sigma_mult, a));
  return compose(state, curve, steps);
}

AccountantState compose_subsampled_gaussian(const AccountantState& state,
                                            double sigma_mult, double q,
                                            std::int64_t steps) {
  check_integer_orders(state, "compose_subsampled_gaussian");
  std::vector<double> curve;
  curve.reserve(state.orders.size());
  for (double a : state.orders) {
    curve.push_back(rdp_subsampled_gaussian(sigma_mult, q, static_cast<int>(a)));
  }
  return compose(state, curve, steps);
}

double rdp_gaussian(double sigma_mult, double order) {
  require_positive(sigma_mult, "sigma_mult", "rdp_gaussian");
  if (!(order > 1.0)) {
    throw InvalidArgument("rdp_gaussian: order must be > 1, got " +
                          std::to_string(order));
  }
  return order / (2.0 * sigma_mult * sigma_mult);
}

double rdp_subsampled_gaussian(double sigma_mult, double q, int order) {
  require_positive(sigma_mult, "sigma_mult", "rdp_subsampled_gaussian");
  if (!(q > 0.0 && q <= 1.0)) {
    throw InvalidArgument("rdp_subsampled_gaussian: q must lie in (0, 1], got " +
                          std::to_string(q));
  }
  if (order < 2) {
    throw InvalidArgument("rdp_subsampled_gaussian: order must be >= 2");
  }
  if (q == 1.0) return rdp_gaussian(sigma_mult, order);
  const double a = order;
  const double log_q = std::log(q);
  const double log_1mq = std::log1p(-q);
  const double inv_two_var = 1.0 / (2.0 * sigma_mult * sigma_mult);
  std::vector<double> terms(static_cast<std::size_t>(order) + 1);
  for (int k = 0; k <= order; ++k) {
    const double log_binom =
        std::lgamma(a + 1.0) - std::lgamma(k + 1.0) - std::lgamma(a - k + 1.0);
    terms[k] = log_binom + (a - k) * log_1mq + k * log_q +
               (double(k) * k - k) * inv_two_var;
  }
  return std::max(0.0, log_sum_exp(terms) / (a - 1.0));
}

double rdp_to_dp(const AccountantState& state, double delta) {
  if (state.orders.empty()) {
    throw InvalidArgument("rdp_to_dp: empty order grid");
  }
  if (state.rdp.size() != state.orders.size()) {
    throw InvalidArgument("rdp_to_dp: RDP values do not match the order grid");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw InvalidArgument("rdp_to_dp: delta must lie in (0, 1), got " +
                          std::to_string(delta));
  }
  const double log_inv_delta = -std::log(delta);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < state.orders.size(); ++i) {
    best = std::min(best,
                    state.rdp[i] + log_inv_delta / (state.orders[i] - 1.0));
  }
  return best;
}

double classical_gaussian_sigma(const PrivacyBudget& budget) {
  budget.validate();
  return std::sqrt(2.0 * std::log(1.25 / budget.delta)) / budget.epsilon;
}

double calibrate_dprgd(const PrivacyBudget& budget, double clip, long n,
                       long steps) {
  check_calibration_args(budget, clip, n, steps, "calibrate_dprgd");
  const AccountantState empty = AccountantState::with_default_orders();
  return search_sigma(
      [&](double sigma) {
        return rdp_to_dp(compose_gaussian(empty, sigma, steps), budget.delta);
      },
      budget.epsilon, "calibrate_dprgd");
}

double calibrate_dprsgd(const PrivacyBudget& budget, double clip, long n,
                        long steps, long batch) {
  check_calibration_args(budget, clip, n, steps, "calibrate_dprsgd");
  if (batch < 1 || batch > n) {
    throw InvalidArgument("calibrate_dprsgd: batch must lie in [1, n]");
  }
  const double q = static_cast<double>(batch) / static_cast<double>(n);
  const AccountantState empty = AccountantState::with_default_orders();
  return search_sigma(
      [&](double sigma) {
        return rdp_to_dp(compose_subsampled_gaussian(empty, sigma, q, steps),
                         budget.delta);
      },
      budget.epsilon, "calibrate_dprsgd");
}

ManifoldPoint rie_laplace_mechanism(const ManifoldPoint& center,
                                    double sensitivity, double epsilon,
                                    const McmcOptions& mcmc,
                                    std::uint64_t seed) {
  require_positive(sensitivity, "sensitivity", "rie_laplace_mechanism");
  require_positive(epsilon, "epsilon", "rie_laplace_mechanism");
  if (mcmc.burn_in < 0) {
    throw InvalidArgument("rie_laplace_mechanism: burn_in must be >= 0");
  }
  const Manifold& m = center.manifold();
  const Matrix& c = center.value();
  const double sigma = sensitivity / epsilon;
  const double step = mcmc.proposal_std > 0.0 ? mcmc.proposal_std : sigma / 2;

  Rng rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Matrix x = c;
  double energy = 0.0;  // dist(x, c) / sigma
  for (int it = 0; it <= mcmc.burn_in; ++it) {
    const Matrix xi = m.random_tangent(x, rng);
    const double u = unif(rng);
    Matrix y;
    double proposed;
    try {
      y = m.exp(x, step * xi);
      if (!m.is_point(y)) continue;
      proposed = m.dist(y, c) / sigma;
    } catch (const Error& e) {
      if (e.kind() == Error::Kind::kInvalidArgument) throw;
      continue;
    }
    if (!std::isfinite(proposed)) continue;
    if (std::log(u) < energy - proposed) {
      x = std::move(y);
      energy = proposed;
    }
  }
  return ManifoldPoint(center.manifold_ptr(), std::move(x));
}

ManifoldPoint log_euclidean_mechanism(const ManifoldPoint& x,
                                      double sensitivity,
                                      const PrivacyBudget& budget,
                                      std::uint64_t seed) {
  if (dynamic_cast<const SpdManifold*>(&x.manifold()) == nullptr) {
    throw InvalidArgument("log_euclidean_mechanism: point is not on an SPD "
                          "manifold (" + x.manifold().name() + ")");
  }
  require_positive(sensitivity, "sensitivity", "log_euclidean_mechanism");
  if (budget.delta == 0.0) {
    throw InvalidArgument(
        "log_euclidean_mechanism: the Gaussian mechanism needs delta > 0");
  }
  budget.validate();
  const double scale = sensitivity * classical_gaussian_sigma(budget);
  Rng rng(seed);
  const Matrix noise = scale * symmetric_gaussian(x.value().rows(), rng);
  const Matrix log_x = linalg::spd_fun(x.value(), linalg::SpectralFunction::log());
  Matrix out =
      linalg::spd_fun(log_x + noise, linalg::SpectralFunction::exp());
  if (!x.manifold().is_point(out)) {
    throw NumericFailure(
        "log_euclidean_mechanism: noisy logarithm left the representable SPD "
        "range");
  }
  return ManifoldPoint(x.manifold_ptr(), std::move(out));
}

}  // namespace rieopt::privacy
