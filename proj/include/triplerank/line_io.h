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

#ifndef TRIPLERANK_LINE_IO_H_
#define TRIPLERANK_LINE_IO_H_

#include <cstddef>
#include <fstream>
#include <memory>
#include <string>
#include <string_view>

namespace triplerank {

bool HasGzipExtension(std::string_view path);

// Reads newline-terminated lines from a plain file, a gzip file (".gz"
// extension) or standard input ("-"). Throws IoError if the source cannot be
// opened.
class LineReader {
 public:
  explicit LineReader(const std::string &path);
  ~LineReader();
  LineReader(const LineReader &) = delete;
  LineReader &operator=(const LineReader &) = delete;

  // Fills `line` without the trailing newline. Returns false at end of input.
  bool Next(std::string *line);

  // 1-based number of the line last returned by Next().
  size_t line_number() const { return line_number_; }
  const std::string &path() const { return path_; }

 private:
  bool NextGzip(std::string *line);

  std::string path_;
  std::ifstream file_;
  std::istream *stream_ = nullptr;
  void *gz_ = nullptr;  // gzFile
  size_t line_number_ = 0;
};

// Writes lines to a plain file, a gzip file (".gz") or standard output ("-").
class LineWriter {
 public:
  explicit LineWriter(const std::string &path);
  ~LineWriter();
  LineWriter(const LineWriter &) = delete;
  LineWriter &operator=(const LineWriter &) = delete;

  void Write(std::string_view line);  // appends '\n'
  void WriteRaw(std::string_view bytes);
  // Flushes and closes; throws IoError on failure. Called by the destructor
  // (errors swallowed there).
  void Close();

 private:
  std::string path_;
  std::ofstream file_;
  std::ostream *stream_ = nullptr;
  void *gz_ = nullptr;
  bool closed_ = false;
};

// Whole-file helpers for small inputs.
std::string ReadFile(const std::string &path);
void WriteFile(const std::string &path, std::string_view contents);

}  // namespace triplerank

#endif  // TRIPLERANK_LINE_IO_H_
