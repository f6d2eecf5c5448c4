// Copyright 2026 The somdms Authors
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

// Text format for optical circuits. One statement per line, `#` starts a
// comment:
//
//     version 1
//     path <name>
//     source <path> weight=<real> pol=<H|V> mode=<h|v>
//     element <KIND>(<args>) on <path> [routes <path>-><transmitted>,<reflected>]
//     sink <path>
//
// Paths are declared by `path`, by a `source`, or as a route target. Angles
// are radians unless suffixed with `deg`; reals may also be written sqrt(x).

#ifndef SOMDMS_CIRCUITFILE_HPP
#define SOMDMS_CIRCUITFILE_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "somdms/optics.hpp"

namespace somdms {

class ParseError : public std::runtime_error {
   public:
    ParseError(int line, int column, std::string token, const std::string& message);

    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& token() const { return token_; }
    const std::string& message() const { return message_; }

   private:
    int line_;
    int column_;
    std::string token_;
    std::string message_;
};

enum class StatementKind { Version, Path, Source, Element, Sink };

struct Provenance {
    StatementKind kind;
    int line = 0;
    int first_column = 0;  // 1-based, inclusive
    int last_column = 0;
};

struct CircuitDocument {
    int version = 1;
    std::string file_name;
    Circuit circuit;
    std::vector<Provenance> statements;
};

/// Throws ParseError on the first problem; nothing partial is returned.
CircuitDocument parse_document(std::string_view text, std::string file_name = "<input>");
Circuit parse_circuit(std::string_view text);

/// Canonical text: version, paths, sources, elements, sinks. Angles are
/// written in degrees with six decimals, other reals in shortest
/// round-trip form.
std::string serialize_circuit(const Circuit& circuit);

/// Same conversion the parser uses for `deg`, so round trips are exact.
double degrees_to_radians(double degrees);
double radians_to_degrees(double radians);

}  // namespace somdms

#endif  // SOMDMS_CIRCUITFILE_HPP
