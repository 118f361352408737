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

#include "rieopt/optimizers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

#include "rieopt/error.hpp"
#include "rieopt/random.hpp"

namespace rieopt::optim {

namespace {

const FiniteSum& require_problem(const StepContext& ctx, const char* op) {
  if (ctx.problem == nullptr) {
    throw InvalidArgument(std::string(op) + ": step context has no problem");
  }
  return *ctx.problem;
}

TangentVector single(const Gradients& grads, const char* op) {
  if (grads.empty()) {
    throw InvalidArgument(std::string(op) + ": empty gradient list");
  }
  if (grads.size() == 1) return grads.front();
  return mean_tangent(grads);
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return idx;
}

// Mean gradient over the context batch (all examples when it is empty).
TangentVector batch_gradient(const FiniteSum& problem, const ManifoldPoint& w,
                             std::span<const std::size_t> batch) {
  if (batch.empty()) return problem.full_gradient(w);
  return mean_tangent(problem.gradients(w, batch));
}

OptState next(const OptState& state, StageState stage) {
  return OptState{state.count + 1, std::move(stage), {}};
}

GradientTransformation stateless(
    std::function<Gradients(Gradients, const OptState&, const ManifoldPoint&)>
        fn) {
  GradientTransformation t;
  t.init = [](const ManifoldPoint&) { return OptState{}; };
  t.update = [fn = std::move(fn)](Gradients grads, const OptState& state,
                                  const ManifoldPoint& params,
                                  const StepContext&) {
    return std::make_pair(fn(std::move(grads), state, params),
                          next(state, std::monostate{}));
  };
  return t;
}

void check_schedule(const Schedule& schedule, const char* op) {
  if (!schedule) throw InvalidArgument(std::string(op) + ": empty schedule");
}

void check_epoch_length(int epoch_length, const char* op) {
  if (epoch_length < 1) {
    throw InvalidArgument(std::string(op) + ": epoch_length must be >= 1");
  }
}

}  // namespace

Schedule constant_schedule(double lr) {
  return [lr](std::int64_t) { return lr; };
}

Schedule inverse_sqrt_schedule(double lr) {
  return [lr](std::int64_t step) {
    return lr / std::sqrt(static_cast<double>(step + 1));
  };
}

// ---------------------------------------------------------------------------
// FiniteSum

FiniteSum::FiniteSum(ManifoldPtr manifold, CostFn cost,
                     std::vector<Matrix> data)
    : manifold_(std::move(manifold)),
      cost_(std::move(cost)),
      data_(std::move(data)) {
  if (!manifold_) throw InvalidArgument("FiniteSum: null manifold");
  if (!cost_.evaluate) throw InvalidArgument("FiniteSum: cost has no value");
  if (data_.empty()) throw InvalidArgument("FiniteSum: empty data set");
}

double FiniteSum::loss(const Matrix& w) const {
  double total = 0.0;
  for (const Matrix& z : data_) total += cost_.evaluate(w, z);
  return total / static_cast<double>(data_.size());
}

double FiniteSum::batch_loss(const Matrix& w,
                             std::span<const std::size_t> batch) const {
  if (batch.empty()) return loss(w);
  double total = 0.0;
  for (std::size_t i : batch) total += cost_.evaluate(w, data_.at(i));
  return total / static_cast<double>(batch.size());
}

TangentVector FiniteSum::gradient(const ManifoldPoint& w,
                                  std::size_t i) const {
  return riemannian_gradient(cost_, w, data_.at(i));
}

std::vector<TangentVector> FiniteSum::gradients(
    const ManifoldPoint& w, std::span<const std::size_t> batch) const {
  std::vector<TangentVector> out;
  out.reserve(batch.size());
  for (std::size_t i : batch) out.push_back(gradient(w, i));
  return out;
}

TangentVector FiniteSum::full_gradient(const ManifoldPoint& w) const {
  const std::vector<std::size_t> idx = all_indices(data_.size());
  return mean_tangent(gradients(w, idx));
}

// ---------------------------------------------------------------------------
// Combinators and stages

GradientTransformation chain(std::vector<GradientTransformation> stages) {
  if (stages.empty()) throw InvalidArgument("chain: no stages");
  for (const GradientTransformation& s : stages) {
    if (!s.init || !s.update) throw InvalidArgument("chain: empty stage");
  }
  GradientTransformation t;
  t.needs_gradients = stages.front().needs_gradients;
  t.init = [stages](const ManifoldPoint& params) {
    OptState state;
    for (const GradientTransformation& s : stages) {
      state.children.push_back(s.init(params));
    }
    return state;
  };
  t.update = [stages](Gradients grads, const OptState& state,
                      const ManifoldPoint& params, const StepContext& ctx) {
    if (state.children.size() != stages.size()) {
      throw InvalidArgument("chain: state does not match the stage count");
    }
    OptState out{state.count + 1, std::monostate{}, {}};
    out.children.reserve(stages.size());
    for (std::size_t i = 0; i < stages.size(); ++i) {
      auto [g, s] =
          stages[i].update(std::move(grads), state.children[i], params, ctx);
      grads = std::move(g);
      out.children.push_back(std::move(s));
    }
    return std::make_pair(std::move(grads), std::move(out));
  };
  return t;
}

GradientTransformation aggregate_mean() {
  return stateless([](Gradients grads, const OptState&, const ManifoldPoint&) {
    return Gradients{single(grads, "aggregate_mean")};
  });
}

GradientTransformation clip_per_example(double clip) {
  if (!(clip > 0.0)) {
    throw InvalidArgument("clip_per_example: clip must be positive");
  }
  return stateless(
      [clip](Gradients grads, const OptState&, const ManifoldPoint&) {
        for (TangentVector& g : grads) g = clip_tangent(g, clip);
        return grads;
      });
}

GradientTransformation scale_by_schedule(Schedule schedule) {
  check_schedule(schedule, "scale_by_schedule");
  return stateless([schedule = std::move(schedule)](
                       Gradients grads, const OptState& state,
                       const ManifoldPoint&) {
    const double lr = schedule(state.count);
    if (!(lr >= 0.0) || !std::isfinite(lr)) {
      throw InvalidArgument("scale_by_schedule: learning rate " +
                            std::to_string(lr) + " at step " +
                            std::to_string(state.count));
    }
    for (TangentVector& g : grads) g = g.scaled(-lr);
    return grads;
  });
}

GradientTransformation variance_reduce(int epoch_length) {
  check_epoch_length(epoch_length, "variance_reduce");
  GradientTransformation t;
  t.init = [](const ManifoldPoint&) { return OptState{0, VarianceState{}, {}}; };
  t.update = [epoch_length](Gradients grads, const OptState& state,
                            const ManifoldPoint& params,
                            const StepContext& ctx) {
    const FiniteSum& problem = require_problem(ctx, "variance_reduce");
    const Manifold& m = params.manifold();
    VarianceState vs = std::get<VarianceState>(state.stage);
    if (state.count % epoch_length == 0 || !vs.has_anchor) {
      const TangentVector mu = problem.full_gradient(params);
      vs = {true, params.value(), mu.value()};
      return std::make_pair(Gradients{mu}, next(state, std::move(vs)));
    }
    const TangentVector g = single(grads, "variance_reduce");
    const ManifoldPoint anchor(params.manifold_ptr(), vs.anchor);
    const TangentVector anchor_grad = batch_gradient(problem, anchor, ctx.batch);
    const Matrix correction = m.transport(
        vs.anchor, params.value(), anchor_grad.value() - vs.anchor_full_grad);
    TangentVector v(params, g.value() - correction);
    return std::make_pair(Gradients{std::move(v)}, next(state, std::move(vs)));
  };
  return t;
}

GradientTransformation recursive_gradient(int epoch_length) {
  check_epoch_length(epoch_length, "recursive_gradient");
  GradientTransformation t;
  t.init = [](const ManifoldPoint&) {
    return OptState{0, RecursiveState{}, {}};
  };
  t.update = [epoch_length](Gradients grads, const OptState& state,
                            const ManifoldPoint& params,
                            const StepContext& ctx) {
    const FiniteSum& problem = require_problem(ctx, "recursive_gradient");
    const Manifold& m = params.manifold();
    RecursiveState rs = std::get<RecursiveState>(state.stage);
    Matrix v;
    if (state.count % epoch_length == 0 || !rs.has_prev) {
      v = problem.full_gradient(params).value();
    } else {
      const TangentVector g = single(grads, "recursive_gradient");
      const ManifoldPoint prev(params.manifold_ptr(), rs.prev_point);
      const TangentVector prev_grad = batch_gradient(problem, prev, ctx.batch);
      v = g.value() - m.transport(rs.prev_point, params.value(),
                                  prev_grad.value() - rs.prev_direction);
    }
    TangentVector out(params, v);
    rs = {true, params.value(), std::move(v)};
    return std::make_pair(Gradients{std::move(out)},
                          next(state, std::move(rs)));
  };
  return t;
}

GradientTransformation scale_by_rasa(RasaOptions options) {
  if (!(options.beta >= 0.0 && options.beta < 1.0)) {
    throw InvalidArgument("scale_by_rasa: beta must lie in [0, 1)");
  }
  const bool fixed = options.fixed_accumulator > 0.0;
  if (fixed ? !(options.eps >= 0.0) : !(options.eps > 0.0)) {
    throw InvalidArgument(
        "scale_by_rasa: eps_adapt must be positive (zero only with fixed "
        "accumulators)");
  }
  GradientTransformation t;
  t.init = [options, fixed](const ManifoldPoint& params) {
    const Matrix& x = params.value();
    const double fill = fixed ? options.fixed_accumulator : 0.0;
    RasaState rs;
    rs.row = Eigen::VectorXd::Constant(x.rows(), fill);
    rs.col = Eigen::VectorXd::Constant(x.cols(), fill);
    rs.row_max = rs.row;
    rs.col_max = rs.col;
    return OptState{0, std::move(rs), {}};
  };
  t.update = [options, fixed](Gradients grads, const OptState& state,
                              const ManifoldPoint& params,
                              const StepContext&) {
    const TangentVector g = single(grads, "scale_by_rasa");
    const Matrix& G = g.value();
    RasaState rs = std::get<RasaState>(state.stage);
    if (rs.row.size() != G.rows() || rs.col.size() != G.cols()) {
      throw InvalidArgument("scale_by_rasa: gradient shape changed");
    }
    const bool row_only = options.row_only || G.cols() == 1;
    if (!fixed) {
      const double b = options.beta;
      rs.row = b * rs.row +
               (1.0 - b) * G.rowwise().squaredNorm() / double(G.cols());
      rs.col = b * rs.col + (1.0 - b) * G.colwise().squaredNorm().transpose() /
                                double(G.rows());
      rs.row_max = rs.row_max.cwiseMax(rs.row);
      rs.col_max = rs.col_max.cwiseMax(rs.col);
    }
    Matrix scaled(G.rows(), G.cols());
    for (Index j = 0; j < G.cols(); ++j) {
      for (Index i = 0; i < G.rows(); ++i) {
        const double denom =
            row_only ? std::sqrt(rs.row_max[i])
                     : std::sqrt(std::sqrt(rs.row_max[i] * rs.col_max[j]));
        scaled(i, j) = G(i, j) / (denom + options.eps);
      }
    }
    TangentVector out(params,
                      params.manifold().project_tangent(params.value(), scaled));
    return std::make_pair(Gradients{std::move(out)},
                          next(state, std::move(rs)));
  };
  return t;
}

GradientTransformation zo_estimate(double mu, int num_dirs,
                                   std::uint64_t seed) {
  if (!(mu > 0.0)) throw InvalidArgument("zo_estimate: mu must be positive");
  if (num_dirs < 1) throw InvalidArgument("zo_estimate: num_dirs must be >= 1");
  GradientTransformation t;
  t.needs_gradients = false;
  t.init = [](const ManifoldPoint&) { return OptState{}; };
  t.update = [mu, num_dirs, seed](Gradients, const OptState& state,
                                  const ManifoldPoint& params,
                                  const StepContext& ctx) {
    const FiniteSum& problem = require_problem(ctx, "zo_estimate");
    const Manifold& m = params.manifold();
    const Matrix& w = params.value();
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(state.count)));
    const double f0 = problem.batch_loss(w, ctx.batch);
    Matrix acc = Matrix::Zero(w.rows(), w.cols());
    for (int j = 0; j < num_dirs; ++j) {
      Matrix u = m.random_tangent(w, rng);
      u /= m.norm(w, u);
      const double f1 = problem.batch_loss(m.exp(w, mu * u), ctx.batch);
      acc += ((f1 - f0) / mu) * u;
    }
    acc *= static_cast<double>(m.intrinsic_dim()) / num_dirs;
    return std::make_pair(Gradients{TangentVector(params, std::move(acc))},
                          next(state, std::monostate{}));
  };
  return t;
}

GradientTransformation noisy_sum(double sigma, double clip,
                                 std::uint64_t seed) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw InvalidArgument("noisy_sum: sigma must be finite and >= 0");
  }
  if (!(clip > 0.0)) throw InvalidArgument("noisy_sum: clip must be positive");
  GradientTransformation t;
  t.init = [](const ManifoldPoint&) { return OptState{}; };
  t.update = [sigma, clip, seed](Gradients grads, const OptState& state,
                                 const ManifoldPoint& params,
                                 const StepContext&) {
    if (grads.empty()) throw InvalidArgument("dp_rsgd: empty gradient list");
    TangentVector sum = grads.front();
    for (std::size_t i = 1; i < grads.size(); ++i) sum = sum + grads[i];
    if (sigma > 0.0) {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(state.count)));
      const Matrix xi =
          (sigma * clip) * params.manifold().random_tangent(params.value(), rng);
      sum = sum + TangentVector(params, xi);
    }
    return std::make_pair(
        Gradients{sum.scaled(1.0 / static_cast<double>(grads.size()))},
        next(state, std::monostate{}));
  };
  return t;
}

// ---------------------------------------------------------------------------
// Optimizers

GradientTransformation rsgd(Schedule schedule) {
  return chain({aggregate_mean(), scale_by_schedule(std::move(schedule))});
}

GradientTransformation rsvrg(Schedule schedule, int epoch_length) {
  return chain({aggregate_mean(), variance_reduce(epoch_length),
                scale_by_schedule(std::move(schedule))});
}

GradientTransformation rsrg(Schedule schedule, int epoch_length) {
  return chain({aggregate_mean(), recursive_gradient(epoch_length),
                scale_by_schedule(std::move(schedule))});
}

GradientTransformation rasa(Schedule schedule, double eps_adapt) {
  RasaOptions options;
  options.eps = eps_adapt;
  return rasa(std::move(schedule), options);
}

GradientTransformation rasa(Schedule schedule, RasaOptions options) {
  return chain({aggregate_mean(), scale_by_rasa(options),
                scale_by_schedule(std::move(schedule))});
}

GradientTransformation zo_rgd(Schedule schedule, double mu, int num_dirs,
                              std::uint64_t seed) {
  return chain({zo_estimate(mu, num_dirs, seed),
                scale_by_schedule(std::move(schedule))});
}

GradientTransformation dp_rsgd(Schedule schedule, double sigma, double clip,
                               std::uint64_t seed) {
  return chain({clip_per_example(clip), noisy_sum(sigma, clip, seed),
                scale_by_schedule(std::move(schedule))});
}

// ---------------------------------------------------------------------------
// Driver

std::pair<TangentVector, OptState> step(const GradientTransformation& opt,
                                        Gradients grads, const OptState& state,
                                        const ManifoldPoint& params,
                                        const StepContext& ctx) {
  auto [out, next_state] = opt.update(std::move(grads), state, params, ctx);
  if (out.size() != 1) {
    throw InvalidArgument("step: optimizer produced " +
                          std::to_string(out.size()) +
                          " updates; end the chain with an aggregating stage");
  }
  return {std::move(out.front()), std::move(next_state)};
}

FitResult fit(const FiniteSum& problem, const ManifoldPoint& params0,
              const GradientTransformation& optimizer, int epochs,
              const FitOptions& options) {
  if (epochs < 1) throw InvalidArgument("fit: epochs must be >= 1");
  if (params0.manifold_ptr() != problem.manifold()) {
    throw InvalidArgument("fit: params0 lives on a different manifold");
  }
  const std::size_t n = problem.size();
  const bool full = options.batch_size == 0 || options.batch_size >= n;
  std::vector<std::size_t> pool = all_indices(n);
  std::vector<std::size_t> batch = full ? pool : std::vector<std::size_t>{};

  using Clock = std::chrono::steady_clock;
  const Clock::time_point start = Clock::now();
  OptState state = optimizer.init(params0);
  ManifoldPoint w = params0;
  std::vector<TracePoint> trace;
  trace.reserve(static_cast<std::size_t>(epochs));
  for (int epoch = 0; epoch < epochs; ++epoch) {
    if (!full) {
      Rng rng(derive_seed(options.seed, static_cast<std::uint64_t>(epoch)));
      for (std::size_t i = 0; i < options.batch_size; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(pool[i], pool[pick(rng)]);
      }
      batch.assign(pool.begin(), pool.begin() + options.batch_size);
      std::sort(batch.begin(), batch.end());
    }
    Gradients grads;
    if (optimizer.needs_gradients) {
      grads = problem.gradients(w, batch);
      if (!options.per_example) grads = Gradients{mean_tangent(grads)};
    }
    const StepContext ctx{&problem, batch};
    auto [update, next_state] = step(optimizer, std::move(grads), state, w, ctx);
    state = std::move(next_state);
    w = apply_updates(w, update);
    const double loss = problem.loss(w.value());
    const double elapsed =
        std::chrono::duration<double>(Clock::now() - start).count();
    trace.push_back({epoch + 1, elapsed, loss});
  }
  return {std::move(w), std::move(trace)};
}

}  // namespace rieopt::optim
