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

#include "rieopt/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <ostream>

#include "cli/csv.hpp"
#include "rieopt/error.hpp"
#include "rieopt/grassmann.hpp"
#include "rieopt/hyperbolic.hpp"
#include "rieopt/hypersphere.hpp"
#include "rieopt/pca.hpp"
#include "rieopt/privacy.hpp"
#include "rieopt/random.hpp"
#include "rieopt/spd.hpp"

namespace rieopt::cli {

namespace {

// Bad flags or flag combinations detected by the front end.
class UsageError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

const std::vector<std::string> kOps = {"exp", "log", "dist", "pt"};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    std::string item = text.substr(start, comma - start);
    if (!item.empty()) out.push_back(std::move(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

long parse_long(std::string_view text, std::string_view what) {
  long value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw UsageError("invalid " + std::string(what) + " '" +
                     std::string(text) + "'");
  }
  return value;
}

std::uint64_t resolve_seed(const CLI::Option* flag, std::uint64_t value) {
  if (flag->count() > 0) return value;
  const char* env = std::getenv("RIEOPT_SEED");
  if (env == nullptr || *env == '\0') return 0;
  std::uint64_t seed = 0;
  const std::string_view text(env);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError("RIEOPT_SEED is not an unsigned integer: '" +
                     std::string(text) + "'");
  }
  return seed;
}

bool is_spd(std::string_view geometry) {
  return geometry == "spd-ai" || geometry == "spd-le";
}

void check_geometry(std::string_view geometry) {
  const auto& names = geometry_names();
  if (std::find(names.begin(), names.end(), geometry) == names.end()) {
    throw UsageError("unknown geometry '" + std::string(geometry) + "'");
  }
}

class OutputTarget {
 public:
  OutputTarget(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      stream_ = &fallback;
    } else {
      file_.open(path);
      if (!file_) throw UsageError("cannot write '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

double median(std::vector<double> values) {
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + mid);
  return 0.5 * (lower + upper);
}

// ---------------------------------------------------------------------------
// bench

struct BenchFlags {
  std::string geometry;
  std::string dims;
  std::string ops = "exp,log,dist,pt";
  int repeats = 10;
  std::uint64_t seed = 0;
  std::string output;
  CLI::Option* seed_flag = nullptr;
};

int cmd_bench(const BenchFlags& flags, std::ostream& out) {
  check_geometry(flags.geometry);
  const std::vector<std::string> ops = split_list(flags.ops);
  if (ops.empty()) throw UsageError("--ops is empty");
  for (const std::string& op : ops) {
    if (std::find(kOps.begin(), kOps.end(), op) == kOps.end()) {
      throw UsageError("unknown op '" + op + "'");
    }
  }
  if (flags.repeats < 3) throw UsageError("--repeats must be >= 3");
  const std::vector<std::string> dims = flags.dims.empty()
                                            ? default_dims(flags.geometry)
                                            : split_list(flags.dims);
  if (dims.empty()) throw UsageError("--dims is empty");
  const std::uint64_t seed = resolve_seed(flags.seed_flag, flags.seed);

  std::vector<ManifoldPtr> manifolds;
  for (const std::string& spec : dims) {
    manifolds.push_back(make_manifold(flags.geometry, spec));
  }

  // timings[dim][op][repeat]; repeats are interleaved across dims and ops.
  std::vector<std::vector<std::vector<double>>> timings(
      dims.size(), std::vector<std::vector<double>>(ops.size()));
  volatile double sink = 0.0;
  using Clock = std::chrono::steady_clock;
  for (int rep = 0; rep < flags.repeats; ++rep) {
    for (std::size_t di = 0; di < dims.size(); ++di) {
      const Manifold& m = *manifolds[di];
      for (std::size_t oi = 0; oi < ops.size(); ++oi) {
        const std::uint64_t s = derive_seed(
            derive_seed(derive_seed(seed, di), oi), static_cast<std::uint64_t>(rep));
        const BenchInputs in = bench_inputs(m, s);
        const std::string& op = ops[oi];
        const Clock::time_point t0 = Clock::now();
        if (op == "exp") {
          sink = sink + m.exp(in.x, in.v)(0);
        } else if (op == "log") {
          sink = sink + m.log(in.x, in.y)(0);
        } else if (op == "dist") {
          sink = sink + m.dist(in.x, in.y);
        } else {
          sink = sink + m.transport(in.x, in.y, in.v)(0);
        }
        const Clock::time_point t1 = Clock::now();
        timings[di][oi].push_back(
            std::chrono::duration<double>(t1 - t0).count());
      }
    }
  }

  OutputTarget target(flags.output, out);
  std::ostream& csv = target.get();
  write_row(csv, {"geometry", "op", "dim_spec", "repeats", "median_seconds",
                  "mad_seconds"});
  for (std::size_t oi = 0; oi < ops.size(); ++oi) {
    for (std::size_t di = 0; di < dims.size(); ++di) {
      const std::vector<double>& t = timings[di][oi];
      const double med = median(t);
      std::vector<double> dev;
      dev.reserve(t.size());
      for (double v : t) dev.push_back(std::abs(v - med));
      write_row(csv, {flags.geometry, ops[oi], dims[di],
                      std::to_string(flags.repeats), format_double(med),
                      format_double(median(dev))});
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// pca

struct PcaFlags {
  std::string input;
  std::string synthetic;
  long rank = 0;
  double lr = 3e-3;
  int epochs = 400;
  bool is_private = false;
  double eps = 0.1;
  double delta = 1e-6;
  double clip = 0.1;
  std::uint64_t seed = 0;
  std::string output_dir = ".";
  CLI::Option* seed_flag = nullptr;
  CLI::Option* epochs_flag = nullptr;
};

int cmd_pca(const PcaFlags& flags, std::ostream& out) {
  if (flags.input.empty() == flags.synthetic.empty()) {
    throw UsageError("pca needs exactly one of --input and --synthetic");
  }
  const std::uint64_t seed = resolve_seed(flags.seed_flag, flags.seed);
  const Matrix data = flags.input.empty()
                          ? pca::synthetic_data(
                                pca::parse_synthetic(flags.synthetic), seed)
                          : read_matrix_file(flags.input, false);
  if (flags.rank < 1 || flags.rank >= data.cols()) {
    throw UsageError("--rank must satisfy 1 <= r < d (r = " +
                     std::to_string(flags.rank) +
                     ", d = " + std::to_string(data.cols()) + ")");
  }
  pca::PcaConfig config;
  config.rank = flags.rank;
  config.lr = flags.lr;
  config.epochs = flags.epochs_flag->count() > 0 ? flags.epochs
                  : flags.is_private             ? 200
                                                 : 400;
  config.is_private = flags.is_private;
  config.budget = {flags.eps, flags.delta};
  config.clip = flags.clip;
  config.seed = seed;
  const pca::PcaRun run = pca::run_pca(data, config);

  const std::filesystem::path dir(flags.output_dir);
  std::filesystem::create_directories(dir);
  {
    std::ofstream trace(dir / "trace.csv");
    if (!trace) throw UsageError("cannot write " + (dir / "trace.csv").string());
    write_row(trace, {"step", "wall_seconds", "loss", "variant"});
    const std::string variant = flags.is_private ? "private" : "nonprivate";
    for (const optim::TracePoint& p : run.trace) {
      write_row(trace, {std::to_string(p.step), format_double(p.wall_seconds),
                        format_double(p.loss), variant});
    }
  }
  {
    std::ofstream subspace(dir / "subspace.csv");
    if (!subspace) {
      throw UsageError("cannot write " + (dir / "subspace.csv").string());
    }
    write_matrix(subspace, run.subspace);
  }
  out << "seed: " << seed << '\n';
  out << "final_loss: " << format_double(run.final_loss) << '\n';
  if (flags.is_private) {
    out << "sigma_mult: " << format_double(run.sigma_mult) << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// frechet

struct FrechetFlags {
  std::string geometry;
  std::string input;
  std::string mechanism = "none";
  double sensitivity = 0.0;
  double eps = 1.0;
  double delta = 1e-6;
  std::uint64_t seed = 0;
  double step = 1.0;
  int iters = 100;
  long rank = 0;
  std::string output;
  CLI::Option* seed_flag = nullptr;
  CLI::Option* sensitivity_flag = nullptr;
};

int cmd_frechet(const FrechetFlags& flags, std::ostream& out) {
  check_geometry(flags.geometry);
  if (flags.mechanism != "none" && flags.mechanism != "laplace" &&
      flags.mechanism != "log-euclidean") {
    throw UsageError("unknown mechanism '" + flags.mechanism + "'");
  }
  if (flags.mechanism == "log-euclidean" && flags.geometry != "spd-le") {
    throw UsageError("--private log-euclidean requires --geometry spd-le");
  }
  if (flags.mechanism != "none" && flags.sensitivity_flag->count() == 0) {
    throw UsageError("--private " + flags.mechanism + " needs --sensitivity");
  }
  if (flags.iters < 0) throw UsageError("--iters must be >= 0");
  const std::uint64_t seed = resolve_seed(flags.seed_flag, flags.seed);
  const Matrix rows = read_matrix_file(flags.input);
  const Index width = rows.cols();

  Index prows = width;
  Index pcols = 1;
  std::string dim_spec = std::to_string(width);
  if (is_spd(flags.geometry)) {
    const Index m = static_cast<Index>(std::llround(std::sqrt(double(width))));
    if (m * m != width) {
      throw UsageError("SPD rows need m*m fields, got " + std::to_string(width));
    }
    prows = pcols = m;
    dim_spec = std::to_string(m);
  } else if (flags.geometry == "grassmann") {
    if (flags.rank < 1 || width % flags.rank != 0) {
      throw UsageError("grassmann input needs --rank r dividing the row width " +
                       std::to_string(width));
    }
    pcols = flags.rank;
    prows = width / flags.rank;
    dim_spec = std::to_string(prows) + ":" + std::to_string(pcols);
  }
  const ManifoldPtr manifold = make_manifold(flags.geometry, dim_spec);

  std::vector<ManifoldPoint> points;
  points.reserve(static_cast<std::size_t>(rows.rows()));
  for (Index i = 0; i < rows.rows(); ++i) {
    Matrix p(prows, pcols);
    for (Index a = 0; a < prows; ++a) {
      for (Index b = 0; b < pcols; ++b) p(a, b) = rows(i, a * pcols + b);
    }
    points.emplace_back(manifold, std::move(p));
  }
  ManifoldPoint mean =
      frechet_mean(manifold, points, flags.step, flags.iters).mean;
  if (flags.mechanism == "laplace") {
    mean = privacy::rie_laplace_mechanism(mean, flags.sensitivity, flags.eps,
                                          privacy::McmcOptions{}, seed);
  } else if (flags.mechanism == "log-euclidean") {
    mean = privacy::log_euclidean_mechanism(
        mean, flags.sensitivity, {flags.eps, flags.delta}, seed);
  }

  OutputTarget target(flags.output, out);
  std::vector<std::string> header;
  std::vector<std::string> values;
  const Matrix& w = mean.value();
  for (Index a = 0; a < prows; ++a) {
    for (Index b = 0; b < pcols; ++b) {
      header.push_back("c" + std::to_string(a * pcols + b));
      values.push_back(format_double(w(a, b)));
    }
  }
  write_row(target.get(), header);
  write_row(target.get(), values);
  return kExitOk;
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case Error::Kind::kInvalidArgument:
      return kExitUsage;
    default:
      return kExitNumeric;
  }
}

}  // namespace

const std::vector<std::string>& geometry_names() {
  static const std::vector<std::string> names = {
      "hypersphere", "lorentz", "poincare", "grassmann", "spd-ai", "spd-le"};
  return names;
}

ManifoldPtr make_manifold(std::string_view geometry,
                          std::string_view dim_spec) {
  check_geometry(geometry);
  if (geometry == "grassmann") {
    const std::size_t colon = dim_spec.find(':');
    if (colon == std::string_view::npos) {
      throw UsageError("grassmann dims are m:r pairs, got '" +
                       std::string(dim_spec) + "'");
    }
    const long m = parse_long(dim_spec.substr(0, colon), "grassmann m");
    const long r = parse_long(dim_spec.substr(colon + 1), "grassmann r");
    return std::make_shared<const Grassmann>(m, r);
  }
  const long d = parse_long(dim_spec, "dimension");
  if (geometry == "hypersphere") return std::make_shared<const Hypersphere>(d);
  if (geometry == "lorentz") {
    return std::make_shared<const LorentzHyperboloid>(d);
  }
  if (geometry == "poincare") return std::make_shared<const PoincareBall>(d);
  if (geometry == "spd-ai") return std::make_shared<const SpdAffineInvariant>(d);
  return std::make_shared<const SpdLogEuclidean>(d);
}

std::vector<std::string> default_dims(std::string_view geometry) {
  check_geometry(geometry);
  if (geometry == "grassmann") {
    return {"100:10", "500:10", "750:10", "1000:10"};
  }
  if (is_spd(geometry)) return {"10", "50", "75", "100"};
  return {"50", "100", "500", "1000", "5000", "10000"};
}

BenchInputs bench_inputs(const Manifold& manifold, std::uint64_t seed) {
  Rng rng(seed);
  BenchInputs in;
  in.x = manifold.random_point(rng);
  auto unit_step = [&] {
    Matrix t = manifold.random_tangent(in.x, rng);
    return Matrix(0.5 / manifold.norm(in.x, t) * t);
  };
  in.v = unit_step();
  in.y = manifold.exp(in.x, unit_step());
  return in;
}

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Riemannian optimization toolkit", "rieopt"};
  app.require_subcommand(1);

  BenchFlags bench;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "Time exp/log/dist/pt over dimension grids");
  bench_cmd->add_option("--geometry", bench.geometry, "Geometry name")
      ->required();
  bench_cmd->add_option("--dims", bench.dims,
                        "Comma list of d, m:r (grassmann) or m (spd)");
  bench_cmd->add_option("--ops", bench.ops, "Comma list of exp,log,dist,pt");
  bench_cmd->add_option("--repeats", bench.repeats, "Repeats per cell")
      ->capture_default_str();
  bench.seed_flag = bench_cmd->add_option("--seed", bench.seed, "Input seed");
  bench_cmd->add_option("--output", bench.output, "CSV path (default stdout)");

  PcaFlags pca;
  CLI::App* pca_cmd = app.add_subcommand(
      "pca", "Subspace PCA by (private) Riemannian gradient descent");
  pca_cmd->add_option("--input", pca.input, "Header-free n x d CSV");
  pca_cmd->add_option("--synthetic", pca.synthetic, "n:d:decay[:scale]");
  pca_cmd->add_option("--rank", pca.rank, "Subspace dimension r")->required();
  pca_cmd->add_option("--lr", pca.lr, "Learning rate")->capture_default_str();
  pca.epochs_flag = pca_cmd->add_option(
      "--epochs", pca.epochs, "Epochs (default 400, 200 with --private)");
  pca_cmd->add_flag("--private", pca.is_private,
                    "Full-batch DP-RGD with calibrated noise");
  pca_cmd->add_option("--eps", pca.eps, "Privacy epsilon")
      ->capture_default_str();
  pca_cmd->add_option("--delta", pca.delta, "Privacy delta")
      ->capture_default_str();
  pca_cmd->add_option("--clip", pca.clip, "Per-example clip norm")
      ->capture_default_str();
  pca.seed_flag = pca_cmd->add_option("--seed", pca.seed, "Seed");
  pca_cmd->add_option("--output-dir", pca.output_dir, "Output directory")
      ->capture_default_str();

  FrechetFlags frechet;
  CLI::App* frechet_cmd =
      app.add_subcommand("frechet", "Frechet mean of CSV points");
  frechet_cmd->add_option("--geometry", frechet.geometry, "Geometry name")
      ->required();
  frechet_cmd->add_option("--input", frechet.input, "One point per row")
      ->required();
  frechet_cmd->add_option("--private", frechet.mechanism,
                          "none, laplace or log-euclidean")
      ->capture_default_str();
  frechet.sensitivity_flag = frechet_cmd->add_option(
      "--sensitivity", frechet.sensitivity, "Mechanism sensitivity");
  frechet_cmd->add_option("--eps", frechet.eps, "Privacy epsilon")
      ->capture_default_str();
  frechet_cmd->add_option("--delta", frechet.delta, "Privacy delta")
      ->capture_default_str();
  frechet.seed_flag = frechet_cmd->add_option("--seed", frechet.seed, "Seed");
  frechet_cmd->add_option("--step", frechet.step, "Gradient step")
      ->capture_default_str();
  frechet_cmd->add_option("--iters", frechet.iters, "Iterations")
      ->capture_default_str();
  frechet_cmd->add_option("--rank", frechet.rank,
                          "Columns per point (grassmann)");
  frechet_cmd->add_option("--output", frechet.output,
                          "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "rieopt: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*bench_cmd) return cmd_bench(bench, out);
    if (*pca_cmd) return cmd_pca(pca, out);
    return cmd_frechet(frechet, out);
  } catch (const Error& e) {
    err << "rieopt: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "rieopt: " << e.what() << '\n';
    return kExitNumeric;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("rieopt");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace rieopt::cli
