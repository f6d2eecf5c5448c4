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

#ifndef SOMDMS_FORMAT_HPP
#define SOMDMS_FORMAT_HPP

#include <charconv>
#include <string>

namespace somdms {

/// Shortest text that parses back to exactly `x`.
inline std::string format_real(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

}  // namespace somdms

#endif  // SOMDMS_FORMAT_HPP
