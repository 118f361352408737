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

#include <gtest/gtest.h>

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rieopt/grassmann.hpp"
#include "rieopt/hypersphere.hpp"
#include "rieopt/pca.hpp"
#include "testing.hpp"

namespace rieopt::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::stringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    rows.push_back(fields);
  }
  return rows;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("rieopt_cli_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  std::string file(const std::string& name, const std::string& body) const {
    std::ofstream(path_ / name) << body;
    return (path_ / name).string();
  }

 private:
  fs::path path_;
};

// Drops the wall_seconds column.
std::string without_timing(const std::string& trace) {
  std::string kept;
  for (const auto& row : parse_csv(trace)) {
    kept += row[0] + "," + row[2] + "," + row[3] + "\n";
  }
  return kept;
}

TEST(Bench, SmokeRow) {
  const Result r = invoke({"bench", "--geometry", "hypersphere", "--dims", "50",
                           "--ops", "exp", "--repeats", "3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"geometry", "op", "dim_spec",
                                               "repeats", "median_seconds",
                                               "mad_seconds"}));
  EXPECT_EQ(rows[1][0], "hypersphere");
  EXPECT_EQ(rows[1][1], "exp");
  EXPECT_EQ(rows[1][2], "50");
  EXPECT_EQ(rows[1][3], "3");
  EXPECT_GT(std::stod(rows[1][4]), 0.0);
  EXPECT_GE(std::stod(rows[1][5]), 0.0);
}

TEST(Bench, RowCountIsOpsTimesDims) {
  TempDir tmp;
  const std::string path = (tmp.path() / "bench.csv").string();
  const Result r = invoke({"bench", "--geometry", "grassmann", "--dims",
                           "10:2,20:3", "--repeats", "3", "--output", path});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  const auto rows = parse_csv(slurp(path));
  EXPECT_EQ(rows.size(), 1u + 4u * 2u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(rows[i].size(), 6u);
}

TEST(Bench, DefaultGridCardinality) {
  const Result r = invoke({"bench", "--geometry", "poincare", "--ops",
                           "exp,dist", "--repeats", "3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(parse_csv(r.out).size(), 1u + 2u * default_dims("poincare").size());
  EXPECT_EQ(default_dims("grassmann").size(), 4u);
  EXPECT_EQ(default_dims("spd-ai").size(), 4u);
  EXPECT_EQ(default_dims("lorentz").size(), 6u);
}

TEST(Bench, InputsAreSeeded) {
  for (const std::string& g : geometry_names()) {
    const ManifoldPtr m = make_manifold(g, g == "grassmann" ? "6:2" : "4");
    const BenchInputs a = bench_inputs(*m, 5);
    const BenchInputs b = bench_inputs(*m, 5);
    const BenchInputs c = bench_inputs(*m, 6);
    EXPECT_EQ(a.x, b.x) << g;
    EXPECT_EQ(a.v, b.v) << g;
    EXPECT_EQ(a.y, b.y) << g;
    EXPECT_NE(a.x, c.x) << g;
    EXPECT_TRUE(m->is_point(a.x) && m->is_point(a.y)) << g;
    EXPECT_TRUE(m->is_tangent(a.x, a.v)) << g;
  }
}

TEST(Bench, UsageErrors) {
  EXPECT_EQ(invoke({"bench", "--geometry", "torus"}).code, kExitUsage);
  EXPECT_EQ(invoke({"bench", "--geometry", "hypersphere", "--ops", "retract"})
                .code,
            kExitUsage);
  EXPECT_EQ(invoke({"bench", "--geometry", "hypersphere", "--repeats", "2"})
                .code,
            kExitUsage);
  EXPECT_EQ(invoke({"bench", "--geometry", "grassmann", "--dims", "10"}).code,
            kExitUsage);
  EXPECT_EQ(invoke({"bench"}).code, kExitUsage);
  EXPECT_EQ(invoke({"nonsense"}).code, kExitUsage);
  const Result r = invoke({"bench", "--geometry", "torus"});
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
}

TEST(Pca, SyntheticRunWritesSchemaExactFiles) {
  TempDir tmp;
  const Result r =
      invoke({"pca", "--synthetic", "60:12:0.5", "--rank", "3", "--epochs",
              "25", "--seed", "4", "--output-dir", tmp.path().string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("seed: 4"), std::string::npos);
  EXPECT_NE(r.out.find("final_loss: "), std::string::npos);
  const auto trace = parse_csv(slurp(tmp.path() / "trace.csv"));
  ASSERT_EQ(trace.size(), 26u);
  EXPECT_EQ(trace[0], (std::vector<std::string>{"step", "wall_seconds", "loss",
                                                "variant"}));
  for (std::size_t i = 1; i < trace.size(); ++i) {
    EXPECT_EQ(trace[i][0], std::to_string(i));
    EXPECT_EQ(trace[i][3], "nonprivate");
    if (i > 1) EXPECT_GE(std::stod(trace[i][1]), std::stod(trace[i - 1][1]));
  }
  const auto sub = parse_csv(slurp(tmp.path() / "subspace.csv"));
  ASSERT_EQ(sub.size(), 12u);
  for (const auto& row : sub) EXPECT_EQ(row.size(), 3u);
}

TEST(Pca, FixedSeedIsBitStable) {
  TempDir a;
  TempDir b;
  for (const TempDir* d : {&a, &b}) {
    ASSERT_EQ(invoke({"pca", "--synthetic", "40:8:0.6", "--rank", "2",
                      "--epochs", "15", "--private", "--eps", "1", "--seed",
                      "9", "--output-dir", d->path().string()})
                  .code,
              kExitOk);
  }
  EXPECT_EQ(without_timing(slurp(a.path() / "trace.csv")),
            without_timing(slurp(b.path() / "trace.csv")));
  EXPECT_EQ(slurp(a.path() / "subspace.csv"), slurp(b.path() / "subspace.csv"));
}

TEST(Pca, PrivateRunReportsSigma) {
  TempDir tmp;
  const Result r =
      invoke({"pca", "--synthetic", "40:8:0.6", "--rank", "2", "--private",
              "--epochs", "5", "--output-dir", tmp.path().string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("sigma_mult: "), std::string::npos);
  const auto trace = parse_csv(slurp(tmp.path() / "trace.csv"));
  ASSERT_EQ(trace.size(), 6u);
  EXPECT_EQ(trace[1][3], "private");
}

TEST(Pca, InputFileAndErrors) {
  TempDir tmp;
  const std::string good = tmp.file("good.csv", "1,0,0\n0,2,0\n0,0,3\n1,1,1\n");
  EXPECT_EQ(invoke({"pca", "--input", good, "--rank", "1", "--epochs", "3",
                    "--output-dir", tmp.path().string()})
                .code,
            kExitOk);
  EXPECT_EQ(invoke({"pca", "--input", good, "--rank", "3"}).code, kExitUsage);
  const std::string ragged = tmp.file("ragged.csv", "1,2,3\n4,5\n");
  const Result r = invoke({"pca", "--input", ragged, "--rank", "1"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("2"), std::string::npos);
  EXPECT_EQ(invoke({"pca", "--rank", "1"}).code, kExitUsage);
}

TEST(Pca, ReachesEigenOptimum) {
  const pca::SyntheticSpec spec = pca::parse_synthetic("200:50:0.5");
  pca::PcaConfig cfg;
  cfg.seed = 0;
  const Matrix z = pca::synthetic_data(spec, cfg.seed);
  const pca::PcaRun run = pca::run_pca(z, cfg);
  const pca::Optimum opt = pca::eigen_optimum(z, cfg.rank);
  EXPECT_LE(run.final_loss, opt.loss + 1e-6 * run.initial_loss);
  EXPECT_LT(principal_angles(run.subspace, opt.subspace).maxCoeff(), 1e-3);
}

TEST(Frechet, TwoSpherePointsGiveMidpoint) {
  TempDir tmp;
  const std::string in = tmp.file("pts.csv", "1,0,0\n0,1,0\n");
  const Result r = invoke({"frechet", "--geometry", "hypersphere", "--input", in});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"c0", "c1", "c2"}));
  const double h = std::sqrt(0.5);
  EXPECT_NEAR(std::stod(rows[1][0]), h, 1e-12);
  EXPECT_NEAR(std::stod(rows[1][1]), h, 1e-12);
  EXPECT_NEAR(std::stod(rows[1][2]), 0.0, 1e-12);
}

TEST(Frechet, SingleRowIsEchoed) {
  TempDir tmp;
  const std::string in = tmp.file("one.csv", "2,0.5,0.5,3\n");
  const Result r = invoke({"frechet", "--geometry", "spd-ai", "--input", in});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1], (std::vector<std::string>{"2", "0.5", "0.5", "3"}));
}

TEST(Frechet, LaplaceAtHugeEpsilonStaysClose) {
  TempDir tmp;
  const std::string in = tmp.file("pts.csv", "0.1,0.2\n-0.3,0.1\n0.2,-0.2\n");
  const Result plain = invoke({"frechet", "--geometry", "poincare", "--input", in});
  const Result noisy =
      invoke({"frechet", "--geometry", "poincare", "--input", in, "--private",
              "laplace", "--sensitivity", "1", "--eps", "1e6", "--seed", "3"});
  ASSERT_EQ(plain.code, kExitOk) << plain.err;
  ASSERT_EQ(noisy.code, kExitOk) << noisy.err;
  const auto a = parse_csv(plain.out)[1];
  const auto b = parse_csv(noisy.out)[1];
  Matrix x(2, 1);
  Matrix y(2, 1);
  for (int i = 0; i < 2; ++i) {
    x(i) = std::stod(a[i]);
    y(i) = std::stod(b[i]);
  }
  EXPECT_LT(PoincareBall(2).dist(x, y), 1e-2);
}

TEST(Frechet, GrassmannAndLogEuclidean) {
  TempDir tmp;
  const std::string g = tmp.file("g.csv", "1,0,0,1,0,0\n");
  EXPECT_EQ(invoke({"frechet", "--geometry", "grassmann", "--input", g,
                    "--rank", "2"})
                .code,
            kExitOk);
  EXPECT_EQ(invoke({"frechet", "--geometry", "grassmann", "--input", g}).code,
            kExitUsage);
  const std::string s = tmp.file("s.csv", "2,0,0,1\n1,0,0,2\n");
  const Result le =
      invoke({"frechet", "--geometry", "spd-le", "--input", s, "--private",
              "log-euclidean", "--sensitivity", "0.1", "--eps", "1"});
  ASSERT_EQ(le.code, kExitOk) << le.err;
  EXPECT_EQ(parse_csv(le.out)[1].size(), 4u);
  EXPECT_EQ(invoke({"frechet", "--geometry", "spd-ai", "--input", s,
                    "--private", "log-euclidean", "--sensitivity", "0.1"})
                .code,
            kExitUsage);
  EXPECT_EQ(invoke({"frechet", "--geometry", "spd-le", "--input", s,
                    "--private", "log-euclidean"})
                .code,
            kExitUsage);
  const std::string bad = tmp.file("bad.csv", "1,2,3\n");
  EXPECT_EQ(invoke({"frechet", "--geometry", "spd-ai", "--input", bad}).code,
            kExitUsage);
}

TEST(Frechet, DomainFailureIsExitThree) {
  TempDir tmp;
  const std::string s = tmp.file("s.csv", "1,0,0,-1\n");
  const Result r = invoke({"frechet", "--geometry", "spd-ai", "--input", s});
  EXPECT_EQ(r.code, kExitNumeric) << r.err;
}

TEST(Seed, EnvironmentFallback) {
  TempDir a;
  TempDir b;
  ::setenv("RIEOPT_SEED", "17", 1);
  const Result env = invoke({"pca", "--synthetic", "30:6:0.5", "--rank", "2",
                             "--epochs", "3", "--output-dir",
                             a.path().string()});
  ::unsetenv("RIEOPT_SEED");
  const Result flag = invoke({"pca", "--synthetic", "30:6:0.5", "--rank", "2",
                              "--epochs", "3", "--seed", "17", "--output-dir",
                              b.path().string()});
  ASSERT_EQ(env.code, kExitOk) << env.err;
  EXPECT_EQ(env.out, flag.out);
  EXPECT_EQ(slurp(a.path() / "subspace.csv"), slurp(b.path() / "subspace.csv"));
}

TEST(Help, ExitsZero) {
  const Result r = invoke({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("bench"), std::string::npos);
}

}  // namespace
}  // namespace rieopt::cli
