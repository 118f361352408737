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

#include <iosfwd>
#include <string>
#include <vector>

#include "rieopt/error.hpp"
#include "rieopt/linalg.hpp"

namespace rieopt::cli {

// Malformed CSV input; the message names the offending row.
class ParseError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Dense numeric CSV. A first row that does not parse as numbers is treated
// as a header when allow_header is set. Throws ParseError on ragged rows,
// unparsable or non-finite fields.
linalg::Matrix read_matrix(std::istream& in, bool allow_header = true);
linalg::Matrix read_matrix_file(const std::string& path,
                                bool allow_header = true);

// Round-trip exact formatting (%.17g).
std::string format_double(double value);
void write_row(std::ostream& out, const std::vector<std::string>& fields);
void write_matrix(std::ostream& out, const linalg::Matrix& m);

}  // namespace rieopt::cli
