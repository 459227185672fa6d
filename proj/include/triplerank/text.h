// Copyright 2026 The Triplerank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TRIPLERANK_TEXT_H_
#define TRIPLERANK_TEXT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace triplerank {

// Splits on every occurrence of `sep`; "a\t\tb" yields three fields.
std::vector<std::string_view> Split(std::string_view s, char sep);

std::string_view TrimSpaces(std::string_view s);

// Strips one trailing '\r' (CRLF input).
std::string_view StripCr(std::string_view s);

std::string AsciiLower(std::string_view s);

std::optional<uint64_t> ParseUint64(std::string_view s);
std::optional<int64_t> ParseInt64(std::string_view s);
std::optional<double> ParseDouble(std::string_view s);

// Shortest representation that round-trips, printf("%g")-style layout.
std::string FormatDouble(double value);

// Escapes backslash, tab, newline and carriage return as \\ \t \n \r.
std::string EscapeField(std::string_view s);
std::string UnescapeField(std::string_view s);

// 64-bit FNV-1a, used for content-derived identifiers.
class Fnv1a64 {
 public:
  void Update(std::string_view bytes);
  uint64_t digest() const { return state_; }
  std::string HexDigest() const;

 private:
  uint64_t state_ = 14695981039346656037ull;
};

}  // namespace triplerank

#endif  // TRIPLERANK_TEXT_H_
