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

#include "triplerank/line_io.h"

#include <zlib.h>

#include <cstring>
#include <iostream>

#include "triplerank/errors.h"

namespace triplerank {

namespace {

constexpr size_t kStreamBufferSize = 1 << 20;

}  // namespace

bool HasGzipExtension(std::string_view path) {
  return path.size() > 3 && path.substr(path.size() - 3) == ".gz";
}

LineReader::LineReader(const std::string &path) : path_(path) {
  if (path == "-") {
    stream_ = &std::cin;
    return;
  }
  if (HasGzipExtension(path)) {
    gzFile gz = gzopen(path.c_str(), "rb");
    if (gz == nullptr) throw IoError("cannot open " + path);
    gzbuffer(gz, kStreamBufferSize);
    gz_ = gz;
    return;
  }
  file_.open(path, std::ios::binary);
  if (!file_) throw IoError("cannot open " + path);
  stream_ = &file_;
}

LineReader::~LineReader() {
  if (gz_ != nullptr) gzclose(static_cast<gzFile>(gz_));
}

bool LineReader::Next(std::string *line) {
  bool ok;
  if (gz_ != nullptr) {
    ok = NextGzip(line);
  } else {
    ok = static_cast<bool>(std::getline(*stream_, *line));
    if (!ok && stream_->bad()) throw IoError("read error on " + path_);
  }
  if (ok) ++line_number_;
  return ok;
}

bool LineReader::NextGzip(std::string *line) {
  gzFile gz = static_cast<gzFile>(gz_);
  line->clear();
  char buf[8192];
  bool any = false;
  while (gzgets(gz, buf, sizeof(buf)) != nullptr) {
    any = true;
    size_t n = std::strlen(buf);
    if (n > 0 && buf[n - 1] == '\n') {
      line->append(buf, n - 1);
      return true;
    }
    line->append(buf, n);
  }
  int err = 0;
  const char *msg = gzerror(gz, &err);
  if (err != Z_OK && err != Z_STREAM_END) {
    throw IoError("read error on " + path_ + ": " + msg);
  }
  return any;
}

LineWriter::LineWriter(const std::string &path) : path_(path) {
  if (path == "-") {
    stream_ = &std::cout;
    return;
  }
  if (HasGzipExtension(path)) {
    gzFile gz = gzopen(path.c_str(), "wb");
    if (gz == nullptr) throw IoError("cannot create " + path);
    gzbuffer(gz, kStreamBufferSize);
    gz_ = gz;
    return;
  }
  file_.open(path, std::ios::binary | std::ios::trunc);
  if (!file_) throw IoError("cannot create " + path);
  stream_ = &file_;
}

LineWriter::~LineWriter() {
  try {
    Close();
  } catch (const IoError &) {
  }
}

void LineWriter::Write(std::string_view line) {
  WriteRaw(line);
  WriteRaw("\n");
}

void LineWriter::WriteRaw(std::string_view bytes) {
  if (closed_) throw IoError("write after close on " + path_);
  if (gz_ != nullptr) {
    if (bytes.empty()) return;
    int written = gzwrite(static_cast<gzFile>(gz_), bytes.data(),
                          static_cast<unsigned>(bytes.size()));
    if (written != static_cast<int>(bytes.size())) {
      throw IoError("write error on " + path_);
    }
    return;
  }
  stream_->write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

void LineWriter::Close() {
  if (closed_) return;
  closed_ = true;
  if (gz_ != nullptr) {
    int rc = gzclose(static_cast<gzFile>(gz_));
    gz_ = nullptr;
    if (rc != Z_OK) throw IoError("close error on " + path_);
    return;
  }
  stream_->flush();
  if (!*stream_) throw IoError("write error on " + path_);
  if (stream_ == &file_) file_.close();
}

std::string ReadFile(const std::string &path) {
  LineReader reader(path);
  std::string out, line;
  while (reader.Next(&line)) {
    out += line;
    out += '\n';
  }
  return out;
}

void WriteFile(const std::string &path, std::string_view contents) {
  LineWriter writer(path);
  writer.WriteRaw(contents);
  writer.Close();
}

}  // namespace triplerank
