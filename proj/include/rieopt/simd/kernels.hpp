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
#include <span>
#include <string_view>

// Dense vector kernels behind the vector-valued geometries.
//
// Each kernel has a portable scalar reference implementation and, where the
// target supports it, an AVX2/FMA (x86-64) or NEON (aarch64) variant. The
// variant is picked once at startup from the CPU feature set and can be
// overridden with set_backend() or the RIEOPT_SIMD environment variable
// ("scalar", "avx2", "neon"). Vectorized reductions use a fixed lane order,
// so results are deterministic for a given backend but differ from the scalar
// reference by floating-point reassociation.

namespace rieopt::simd {

enum class Backend { kScalar, kAvx2, kNeon };

std::string_view backend_name(Backend backend);
bool backend_supported(Backend backend);
Backend active_backend();
// Throws InvalidArgument if the backend is not available on this machine.
void set_backend(Backend backend);

// a . b
double dot(std::span<const double> a, std::span<const double> b);
// a . a
double squared_norm(std::span<const double> a);
// -a0 b0 + a1 b1 + ... + a_{n-1} b_{n-1}
double lorentz_dot(std::span<const double> a, std::span<const double> b);
// |a - b|^2
double squared_distance(std::span<const double> a, std::span<const double> b);
// out = alpha x + beta y. out may alias x or y.
void axpby(double alpha, std::span<const double> x, double beta,
           std::span<const double> y, std::span<double> out);

// Raw per-backend entry points, exposed for equivalence tests and benches.
struct KernelTable {
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*squared_distance)(const double* a, const double* b, std::size_t n);
  void (*axpby)(double alpha, const double* x, double beta, const double* y,
                double* out, std::size_t n);
};

const KernelTable& kernels(Backend backend);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double squared_distance(const double* a, const double* b, std::size_t n);
void axpby(double alpha, const double* x, double beta, const double* y,
           double* out, std::size_t n);
}  // namespace scalar

#if defined(RIEOPT_HAVE_AVX2)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double squared_distance(const double* a, const double* b, std::size_t n);
void axpby(double alpha, const double* x, double beta, const double* y,
           double* out, std::size_t n);
}  // namespace avx2
#endif

#if defined(RIEOPT_HAVE_NEON)
namespace neon {
double dot(const double* a, const double* b, std::size_t n);
double squared_distance(const double* a, const double* b, std::size_t n);
void axpby(double alpha, const double* x, double beta, const double* y,
           double* out, std::size_t n);
}  // namespace neon
#endif

}  // namespace rieopt::simd
