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
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rieopt/core.hpp"

namespace rieopt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

// Entry point of the rieopt tool. Returns the process exit code; one-line
// diagnostics go to err.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);
// Same, with the arguments after the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// Geometry names accepted by --geometry.
const std::vector<std::string>& geometry_names();
// dim_spec is "d" for vector geometries, "m:r" for grassmann and "m" for SPD.
ManifoldPtr make_manifold(std::string_view geometry, std::string_view dim_spec);
std::vector<std::string> default_dims(std::string_view geometry);

// Inputs of one benchmark repeat: a point x, a tangent v at x and a second
// point y, both tangents of norm 0.5.
struct BenchInputs {
  Matrix x;
  Matrix v;
  Matrix y;
};
BenchInputs bench_inputs(const Manifold& manifold, std::uint64_t seed);

}  // namespace rieopt::cli
