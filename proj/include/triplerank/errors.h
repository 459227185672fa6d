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

#ifndef TRIPLERANK_ERRORS_H_
#define TRIPLERANK_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace triplerank {

// Input that violates a documented contract (unknown labels, out of range
// scores, duplicate entries, mismatched key sets).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A line that cannot be parsed. Carries the source name and 1-based line
// number when known (0 otherwise).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string &what, std::string source = "",
             size_t line = 0)
      : std::runtime_error(Describe(what, source, line)),
        source_(std::move(source)),
        line_(line) {}

  const std::string &source() const { return source_; }
  size_t line() const { return line_; }

 private:
  static std::string Describe(const std::string &what,
                              const std::string &source, size_t line) {
    if (source.empty() && line == 0) return what;
    std::string prefix = source.empty() ? "<input>" : source;
    if (line > 0) prefix += ":" + std::to_string(line);
    return prefix + ": " + what;
  }

  std::string source_;
  size_t line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace triplerank

#endif  // TRIPLERANK_ERRORS_H_
