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

#include <atomic>
#include <cstdlib>
#include <string>

#include "rieopt/error.hpp"
#include "rieopt/simd/kernels.hpp"

namespace rieopt::simd {
namespace {

constexpr KernelTable kScalarTable{&scalar::dot, &scalar::squared_distance,
                                   &scalar::axpby};
#if defined(RIEOPT_HAVE_AVX2)
constexpr KernelTable kAvx2Table{&avx2::dot, &avx2::squared_distance,
                                 &avx2::axpby};
#endif
#if defined(RIEOPT_HAVE_NEON)
constexpr KernelTable kNeonTable{&neon::dot, &neon::squared_distance,
                                 &neon::axpby};
#endif

bool cpu_has_avx2() {
#if defined(RIEOPT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend detect() {
  if (const char* env = std::getenv("RIEOPT_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return Backend::kScalar;
    if (want == "avx2" && backend_supported(Backend::kAvx2)) {
      return Backend::kAvx2;
    }
    if (want == "neon" && backend_supported(Backend::kNeon)) {
      return Backend::kNeon;
    }
  }
  if (backend_supported(Backend::kAvx2)) return Backend::kAvx2;
  if (backend_supported(Backend::kNeon)) return Backend::kNeon;
  return Backend::kScalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> backend{detect()};
  return backend;
}

void check_same_size(std::size_t a, std::size_t b, const char* op) {
  if (a != b) {
    throw InvalidArgument(std::string(op) + ": length mismatch (" +
                          std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

std::string_view backend_name(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return "scalar";
    case Backend::kAvx2:
      return "avx2";
    case Backend::kNeon:
      return "neon";
  }
  return "unknown";
}

bool backend_supported(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return true;
    case Backend::kAvx2: {
      static const bool has = cpu_has_avx2();
      return has;
    }
    case Backend::kNeon:
#if defined(RIEOPT_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend backend) {
  if (!backend_supported(backend)) {
    throw InvalidArgument("SIMD backend '" + std::string(backend_name(backend)) +
                          "' is not supported on this machine");
  }
  current().store(backend, std::memory_order_relaxed);
}

const KernelTable& kernels(Backend backend) {
  switch (backend) {
#if defined(RIEOPT_HAVE_AVX2)
    case Backend::kAvx2:
      return kAvx2Table;
#endif
#if defined(RIEOPT_HAVE_NEON)
    case Backend::kNeon:
      return kNeonTable;
#endif
    default:
      return kScalarTable;
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  check_same_size(a.size(), b.size(), "dot");
  return kernels(active_backend()).dot(a.data(), b.data(), a.size());
}

double squared_norm(std::span<const double> a) {
  return kernels(active_backend()).dot(a.data(), a.data(), a.size());
}

double lorentz_dot(std::span<const double> a, std::span<const double> b) {
  check_same_size(a.size(), b.size(), "lorentz_dot");
  if (a.empty()) return 0.0;
  const double spatial =
      kernels(active_backend()).dot(a.data() + 1, b.data() + 1, a.size() - 1);
  return spatial - a[0] * b[0];
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  check_same_size(a.size(), b.size(), "squared_distance");
  return kernels(active_backend())
      .squared_distance(a.data(), b.data(), a.size());
}

void axpby(double alpha, std::span<const double> x, double beta,
           std::span<const double> y, std::span<double> out) {
  check_same_size(x.size(), y.size(), "axpby");
  check_same_size(x.size(), out.size(), "axpby");
  kernels(active_backend())
      .axpby(alpha, x.data(), beta, y.data(), out.data(), x.size());
}

}  // namespace rieopt::simd
