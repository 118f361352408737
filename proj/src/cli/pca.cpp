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

#include "rieopt/pca.hpp"

#include <charconv>
#include <memory>
#include <string>

#include "rieopt/error.hpp"
#include "rieopt/grassmann.hpp"
#include "rieopt/linalg.hpp"
#include "rieopt/random.hpp"

namespace rieopt::pca {

namespace {

constexpr std::uint64_t kDataStream = 0;
constexpr std::uint64_t kInitStream = 1;
constexpr std::uint64_t kNoiseStream = 2;

template <typename T>
T parse_field(std::string_view field, std::string_view text) {
  T value{};
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw InvalidArgument("--synthetic: cannot parse '" + std::string(field) +
                          "' in '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

SyntheticSpec parse_synthetic(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = text.find(':', start);
    parts.push_back(text.substr(start, colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 3 && parts.size() != 4) {
    throw InvalidArgument("--synthetic: expected n:d:decay[:scale], got '" +
                          std::string(text) + "'");
  }
  SyntheticSpec spec;
  spec.n = parse_field<long>(parts[0], text);
  spec.d = parse_field<long>(parts[1], text);
  spec.decay = parse_field<double>(parts[2], text);
  if (parts.size() == 4) spec.scale = parse_field<double>(parts[3], text);
  if (spec.n < 1 || spec.d < 2 || !(spec.decay > 0.0) || !(spec.scale > 0.0)) {
    throw InvalidArgument("--synthetic: need n >= 1, d >= 2, decay > 0, "
                          "scale > 0");
  }
  return spec;
}

Matrix synthetic_data(const SyntheticSpec& spec, std::uint64_t seed) {
  Rng rng(derive_seed(seed, kDataStream));
  const Matrix q = random_orthonormal(spec.d, spec.d, rng);
  Eigen::VectorXd root(spec.d);
  for (long k = 0; k < spec.d; ++k) {
    root[k] = std::sqrt(spec.scale * std::pow(spec.decay, double(k)));
  }
  const Matrix g = gaussian_matrix(spec.n, spec.d, rng);
  return g * root.asDiagonal() * q.transpose();
}

CostFn reconstruction_cost() {
  CostFn cost;
  cost.evaluate = [](const Matrix& u, const Matrix& z) {
    return (z - u * (u.transpose() * z)).squaredNorm();
  };
  cost.euclidean_grad = [](const Matrix& u, const Matrix& z) {
    return Matrix(-2.0 * z * (z.transpose() * u));
  };
  return cost;
}

double reconstruction_loss(const Matrix& data, const Matrix& u) {
  const Matrix residual = data - (data * u) * u.transpose();
  return residual.squaredNorm() / static_cast<double>(data.rows());
}

Optimum eigen_optimum(const Matrix& data, Index rank) {
  if (rank < 1 || rank >= data.cols()) {
    throw InvalidArgument("eigen_optimum: rank must lie in [1, d)");
  }
  const Matrix cov = data.transpose() * data / static_cast<double>(data.rows());
  const linalg::SymEig eig = linalg::sym_eig(cov);
  const Index d = data.cols();
  Optimum opt;
  opt.subspace = eig.eigenvectors.rightCols(rank);
  opt.loss = eig.eigenvalues.head(d - rank).sum();
  return opt;
}

PcaRun run_pca(const Matrix& data, const PcaConfig& config) {
  const Index d = data.cols();
  if (config.rank < 1 || config.rank >= d) {
    throw InvalidArgument("pca: rank must satisfy 1 <= r < d (r = " +
                          std::to_string(config.rank) +
                          ", d = " + std::to_string(d) + ")");
  }
  if (config.epochs < 1) throw InvalidArgument("pca: epochs must be >= 1");
  if (!(config.lr > 0.0)) throw InvalidArgument("pca: lr must be positive");

  auto manifold = std::make_shared<const Grassmann>(d, config.rank);
  std::vector<Matrix> rows;
  rows.reserve(static_cast<std::size_t>(data.rows()));
  for (Index i = 0; i < data.rows(); ++i) {
    rows.push_back(data.row(i).transpose());
  }
  const optim::FiniteSum problem(manifold, reconstruction_cost(),
                                 std::move(rows));

  Rng init_rng(derive_seed(config.seed, kInitStream));
  const ManifoldPoint u0(manifold, manifold->random_point(init_rng));

  PcaRun run;
  optim::GradientTransformation opt;
  const optim::Schedule schedule = optim::constant_schedule(config.lr);
  if (config.is_private) {
    run.sigma_mult = privacy::calibrate_dprgd(
        config.budget, config.clip, static_cast<long>(problem.size()),
        config.epochs);
    opt = optim::dp_rsgd(schedule, 2.0 * run.sigma_mult, config.clip,
                         derive_seed(config.seed, kNoiseStream));
  } else {
    opt = optim::rsgd(schedule);
  }
  run.initial_loss = problem.loss(u0.value());
  optim::FitResult result = optim::fit(problem, u0, opt, config.epochs);
  run.subspace = result.params.value();
  run.final_loss = result.trace.back().loss;
  run.trace = std::move(result.trace);
  return run;
}

}  // namespace rieopt::pca
