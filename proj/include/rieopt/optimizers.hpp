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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "rieopt/core.hpp"

namespace rieopt::optim {

// Learning rate as a function of the 0-based step counter.
using Schedule = std::function<double(std::int64_t step)>;

Schedule constant_schedule(double lr);
// lr / sqrt(step + 1).
Schedule inverse_sqrt_schedule(double lr);

// Empirical risk (1/n) sum_i f(w; z_i) over a fixed data set.
class FiniteSum {
 public:
  FiniteSum(ManifoldPtr manifold, CostFn cost, std::vector<Matrix> data);

  std::size_t size() const { return data_.size(); }
  const ManifoldPtr& manifold() const { return manifold_; }
  const CostFn& cost() const { return cost_; }
  const std::vector<Matrix>& data() const { return data_; }

  double loss(const Matrix& w) const;
  double batch_loss(const Matrix& w, std::span<const std::size_t> batch) const;
  TangentVector gradient(const ManifoldPoint& w, std::size_t i) const;
  std::vector<TangentVector> gradients(
      const ManifoldPoint& w, std::span<const std::size_t> batch) const;
  // mean_tangent over the whole data set, in index order.
  TangentVector full_gradient(const ManifoldPoint& w) const;

 private:
  ManifoldPtr manifold_;
  CostFn cost_;
  std::vector<Matrix> data_;
};

// What an update may consult besides the incoming gradients: the problem
// (for full gradients, anchor gradients and cost values) and the indices of
// the current batch.
struct StepContext {
  const FiniteSum* problem = nullptr;
  std::span<const std::size_t> batch;
};

struct VarianceState {
  bool has_anchor = false;
  Matrix anchor;
  Matrix anchor_full_grad;
};

struct RecursiveState {
  bool has_prev = false;
  Matrix prev_point;
  Matrix prev_direction;
};

struct RasaState {
  Eigen::VectorXd row;
  Eigen::VectorXd col;
  Eigen::VectorXd row_max;
  Eigen::VectorXd col_max;
};

using StageState =
    std::variant<std::monostate, VarianceState, RecursiveState, RasaState>;

// Per-stage state. Chains keep one child per stage; count advances by one on
// every update.
struct OptState {
  std::int64_t count = 0;
  StageState stage;
  std::vector<OptState> children;
};

using Gradients = std::vector<TangentVector>;

// init/update pair. An update maps a gradient list (per-example, or a single
// aggregated entry) to a new list; a complete optimizer ends with exactly one
// entry, the update to apply at params.
struct GradientTransformation {
  std::function<OptState(const ManifoldPoint& params)> init;
  std::function<std::pair<Gradients, OptState>(
      Gradients grads, const OptState& state, const ManifoldPoint& params,
      const StepContext& ctx)>
      update;
  // False for optimizers that only query cost values.
  bool needs_gradients = true;
};

GradientTransformation chain(std::vector<GradientTransformation> stages);

// Building blocks.
GradientTransformation aggregate_mean();
GradientTransformation clip_per_example(double clip);
GradientTransformation scale_by_schedule(Schedule schedule);  // * -lr(t)
GradientTransformation variance_reduce(int epoch_length);
GradientTransformation recursive_gradient(int epoch_length);

struct RasaOptions {
  double beta = 0.99;
  double eps = 1e-8;
  // Row-only adaptivity; always used for vector parameters.
  bool row_only = false;
  // Accumulators pinned to this value (> 0) instead of being learned.
  double fixed_accumulator = 0.0;
};
GradientTransformation scale_by_rasa(RasaOptions options);
GradientTransformation zo_estimate(double mu, int num_dirs,
                                   std::uint64_t seed);
// Sum, add N(0, (sigma * clip)^2) tangent noise, divide by the list length.
GradientTransformation noisy_sum(double sigma, double clip,
                                 std::uint64_t seed);

// Optimizers.
GradientTransformation rsgd(Schedule schedule);
GradientTransformation rsvrg(Schedule schedule, int epoch_length);
GradientTransformation rsrg(Schedule schedule, int epoch_length);
GradientTransformation rasa(Schedule schedule, double eps_adapt = 1e-8);
GradientTransformation rasa(Schedule schedule, RasaOptions options);
GradientTransformation zo_rgd(Schedule schedule, double mu, int num_dirs,
                              std::uint64_t seed);
GradientTransformation dp_rsgd(Schedule schedule, double sigma, double clip,
                               std::uint64_t seed);

// Runs one update and returns the single resulting tangent.
std::pair<TangentVector, OptState> step(const GradientTransformation& opt,
                                        Gradients grads, const OptState& state,
                                        const ManifoldPoint& params,
                                        const StepContext& ctx);

struct FitOptions {
  // 0 selects the full data set every epoch; otherwise a fixed-size batch
  // drawn without replacement.
  std::size_t batch_size = 0;
  // Hand the optimizer the per-example list rather than its mean.
  bool per_example = true;
  std::uint64_t seed = 0;
};

struct TracePoint {
  std::int64_t step = 0;
  double wall_seconds = 0.0;
  double loss = 0.0;
};

struct FitResult {
  ManifoldPoint params;
  std::vector<TracePoint> trace;
};

// init once, then one update/apply cycle per epoch; the loss over the full
// data set is recorded after every cycle.
FitResult fit(const FiniteSum& problem, const ManifoldPoint& params0,
              const GradientTransformation& optimizer, int epochs,
              const FitOptions& options = {});

}  // namespace rieopt::optim
