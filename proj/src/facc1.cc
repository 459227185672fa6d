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

#include "triplerank/facc1.h"

#include <algorithm>
#include <array>
#include <random>

namespace triplerank {

namespace {

constexpr size_t kFieldCount = 8;

uint64_t ParseOffset(std::string_view field, const char *name) {
  auto value = ParseUint64(field);
  if (!value) {
    throw ParseError(std::string("non-numeric ") + name + " offset '" +
                     std::string(field) + "'");
  }
  return *value;
}

double ParseProbability(std::string_view field, const char *name) {
  auto value = ParseDouble(field);
  if (!value) {
    throw ParseError(std::string("non-numeric ") + name + " '" +
                     std::string(field) + "'");
  }
  if (!(*value >= 0.0 && *value <= 1.0)) {
    throw ParseError(std::string(name) + " " + std::string(field) +
                     " outside [0,1]");
  }
  return *value;
}

AnnotationRecord BuildRecord(std::string_view doc_id,
                             std::string_view encoding,
                             std::string_view surface,
                             const std::array<std::string_view, 5> &tail) {
  if (doc_id.empty()) throw ParseError("empty document id");
  uint64_t begin = ParseOffset(tail[0], "begin");
  uint64_t end = ParseOffset(tail[1], "end");
  if (end <= begin) {
    throw ParseError("end offset " + std::to_string(end) +
                     " not after begin offset " + std::to_string(begin));
  }
  double p_text_ctx = ParseProbability(tail[2], "mention probability");
  double p_ctx = ParseProbability(tail[3], "context probability");
  if (!EntityId::IsValid(tail[4])) {
    throw ParseError("malformed entity id '" + std::string(tail[4]) + "'");
  }
  return AnnotationRecord{std::string(doc_id),   std::string(encoding),
                          std::string(surface),  begin,
                          end,                   p_text_ctx,
                          p_ctx,                 EntityId::Parse(tail[4])};
}

// Consecutive runs of equal doc id as [begin, end) index ranges.
std::vector<std::pair<size_t, size_t>> DocumentRuns(
    std::span<const Annotation> corpus) {
  std::vector<std::pair<size_t, size_t>> runs;
  size_t start = 0;
  for (size_t i = 1; i <= corpus.size(); ++i) {
    if (i == corpus.size() ||
        corpus[i].record.doc_id != corpus[start].record.doc_id) {
      if (i > start) runs.emplace_back(start, i);
      start = i;
    }
  }
  return runs;
}

}  // namespace

AnnotationRecord ParseAnnotation(std::string_view line, char separator) {
  line = StripCr(line);
  if (separator == '\t') {
    std::array<std::string_view, kFieldCount> f;
    size_t n = 0, start = 0;
    while (true) {
      size_t pos = line.find('\t', start);
      if (n == kFieldCount) {
        n = kFieldCount + 1;
        break;
      }
      if (pos == std::string_view::npos) {
        f[n++] = line.substr(start);
        break;
      }
      f[n++] = line.substr(start, pos - start);
      start = pos + 1;
    }
    if (n != kFieldCount) {
      throw ParseError("expected 8 tab-separated fields, got " +
                       (n > kFieldCount ? std::string("more")
                                        : std::to_string(n)));
    }
    return BuildRecord(f[0], f[1], f[2], {f[3], f[4], f[5], f[6], f[7]});
  }

  auto fields = Split(line, separator);
  if (fields.size() < kFieldCount) {
    throw ParseError("expected 8 fields, got " +
                     std::to_string(fields.size()));
  }
  const size_t n = fields.size();
  std::array<std::string_view, 5> tail;
  for (size_t i = 0; i < 5; ++i) tail[i] = TrimSpaces(fields[n - 5 + i]);
  // The surface form spans everything between encoding and offsets.
  const char *surface_begin = fields[2].data();
  const char *surface_end = fields[n - 6].data() + fields[n - 6].size();
  std::string_view surface(surface_begin,
                           static_cast<size_t>(surface_end - surface_begin));
  return BuildRecord(TrimSpaces(fields[0]), TrimSpaces(fields[1]),
                     TrimSpaces(surface), tail);
}

std::string FormatAnnotation(const AnnotationRecord &r, char separator) {
  std::string out;
  out.reserve(96);
  auto add = [&](std::string_view s) {
    if (!out.empty()) out += separator;
    out += s;
  };
  add(r.doc_id);
  add(r.encoding);
  add(r.surface);
  add(std::to_string(r.begin));
  add(std::to_string(r.end));
  add(FormatDouble(r.p_text_ctx));
  add(FormatDouble(r.p_ctx));
  add(r.entity.str());
  return out;
}

std::optional<std::string_view> DocIdOf(std::string_view line,
                                        char separator) {
  if (std::count(line.begin(), line.end(), separator) <
      static_cast<std::ptrdiff_t>(kFieldCount - 1)) {
    return std::nullopt;
  }
  std::string_view id = line.substr(0, line.find(separator));
  return separator == '\t' ? id : TrimSpaces(id);
}

Corpus ParseCorpus(std::string_view contents, const ParseOptions &options,
                   size_t *skipped, const std::string &source) {
  Corpus corpus;
  size_t bad = 0, line_no = 0, start = 0;
  while (start < contents.size()) {
    size_t end = contents.find('\n', start);
    if (end == std::string_view::npos) end = contents.size();
    std::string_view line = StripCr(contents.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty()) continue;
    try {
      corpus.push_back({ParseAnnotation(line, options.separator),
                        std::string(line)});
    } catch (const ParseError &e) {
      if (options.on_error == OnParseError::kAbort) {
        throw ParseError(e.what(), source, line_no);
      }
      ++bad;
    }
  }
  if (skipped != nullptr) *skipped = bad;
  return corpus;
}

FilterSpec FilterSpec::FromCatalog(const EntityCatalog &catalog) {
  FilterSpec spec;
  for (const auto &e : catalog.persons.entries()) {
    if (e.id) spec.AddPerson(*e.id);
  }
  for (const auto &e : catalog.professions.entries()) {
    if (e.id) spec.AddProfession(*e.id);
  }
  for (const auto &e : catalog.nationalities.entries()) {
    if (e.id) spec.AddNationality(*e.id);
  }
  return spec;
}

bool ContiguityChecker::Observe(std::string_view doc_id) {
  if (started_ && doc_id == current_) return false;
  std::hash<std::string_view> hasher;
  if (closed_.count(hasher(doc_id)) > 0) {
    throw ValidationError("document '" + std::string(doc_id) +
                          "' reappears after other documents; input is not "
                          "document-contiguous");
  }
  if (started_) closed_.insert(hasher(current_));
  current_.assign(doc_id);
  started_ = true;
  return true;
}

Corpus FilterPass1(std::span<const Annotation> corpus,
                   const FilterSpec &spec) {
  Corpus out;
  for (const auto &a : corpus) {
    if (spec.Keeps(a.record.entity)) out.push_back(a);
  }
  return out;
}

bool HasCooccurrence(std::span<const Annotation> document,
                     const FilterSpec &spec) {
  bool person = false, value = false;
  for (const auto &a : document) {
    person = person || spec.IsPerson(a.record.entity);
    value = value || spec.IsValue(a.record.entity);
    if (person && value) return true;
  }
  return false;
}

Corpus FilterPass2(std::span<const Annotation> corpus,
                   const FilterSpec &spec) {
  Corpus out;
  ContiguityChecker contiguity;
  for (auto [begin, end] : DocumentRuns(corpus)) {
    contiguity.Observe(corpus[begin].record.doc_id);
    auto doc = corpus.subspan(begin, end - begin);
    if (HasCooccurrence(doc, spec)) out.insert(out.end(), doc.begin(), doc.end());
  }
  return out;
}

Corpus FilterPass2Unsorted(std::span<const Annotation> corpus,
                           const FilterSpec &spec) {
  std::unordered_map<std::string_view, uint8_t> flags;
  for (const auto &a : corpus) {
    uint8_t &f = flags[a.record.doc_id];
    if (spec.IsPerson(a.record.entity)) f |= 1;
    if (spec.IsValue(a.record.entity)) f |= 2;
  }
  Corpus out;
  for (const auto &a : corpus) {
    if (flags[a.record.doc_id] == 3) out.push_back(a);
  }
  return out;
}

void CorpusStatsAccumulator::Add(std::string_view doc_id) {
  if (stats_.annotations == 0 || doc_id != last_) {
    ++stats_.documents;
    last_.assign(doc_id);
  }
  ++stats_.annotations;
}

CorpusStats ComputeStats(std::span<const Annotation> corpus) {
  CorpusStatsAccumulator acc;
  for (const auto &a : corpus) acc.Add(a.record.doc_id);
  return acc.stats();
}

DocumentBatcher::DocumentBatcher(const std::string &path, char separator,
                                 size_t target_lines)
    : reader_(path),
      separator_(separator),
      target_lines_(std::max<size_t>(1, target_lines)) {}

bool DocumentBatcher::Next(Batch *batch) {
  batch->lines.clear();
  std::string line;
  std::string last_doc;
  auto take = [&](std::string &&l, size_t line_no) {
    if (batch->lines.empty()) batch->first_line = line_no;
    if (auto doc = DocIdOf(l, separator_)) last_doc.assign(*doc);
    batch->lines.push_back(std::move(l));
  };
  if (pending_) {
    take(std::move(*pending_), pending_line_);
    pending_.reset();
  }
  while (reader_.Next(&line)) {
    hash_.Update(line);
    hash_.Update("\n");
    if (batch->lines.size() >= target_lines_) {
      auto doc = DocIdOf(line, separator_);
      if (doc && *doc != last_doc) {
        pending_ = std::move(line);
        pending_line_ = reader_.line_number();
        return true;
      }
    }
    take(std::move(line), reader_.line_number());
    line = std::string();
  }
  return !batch->lines.empty();
}

ParsedBatch ParseBatch(const DocumentBatcher::Batch &batch,
                       const ParseOptions &options,
                       const std::string &source) {
  ParsedBatch out;
  out.records.reserve(batch.lines.size());
  for (size_t i = 0; i < batch.lines.size(); ++i) {
    std::string_view line = StripCr(batch.lines[i]);
    if (line.empty()) continue;
    ++out.lines;
    try {
      out.records.push_back(
          {ParseAnnotation(line, options.separator), batch.lines[i]});
    } catch (const ParseError &e) {
      if (options.on_error == OnParseError::kAbort) {
        out.error.emplace(e.what(), source, batch.first_line + i);
        break;
      }
      ++out.skipped;
      continue;
    }
    const std::string &doc = out.records.back().record.doc_id;
    if (out.runs.empty() || out.runs.back() != doc) out.runs.push_back(doc);
  }
  return out;
}

// Outside the anonymous namespace: RunBatched hands it to std::thread.
struct FilteredBatch {
  std::vector<std::string> lines;
  uint64_t read = 0;
  uint64_t pass1 = 0;
};

namespace {

PreprocessReport PreprocessUnsorted(const std::string &in,
                                    const std::string &out,
                                    const FilterSpec &spec,
                                    const StreamOptions &options) {
  PreprocessReport report;
  std::unordered_map<std::string, uint8_t> flags;
  report.skipped = ForEachAnnotation(in, options.parse, [&](const Annotation &a) {
    ++report.lines;
    uint8_t f = 0;
    if (spec.IsPerson(a.record.entity)) f |= 1;
    if (spec.IsValue(a.record.entity)) f |= 2;
    if (f != 0) {
      ++report.pass1_kept;
      flags[a.record.doc_id] |= f;
    }
  });
  report.lines += report.skipped;
  LineWriter writer(out);
  ParseOptions quiet = options.parse;
  quiet.on_error = OnParseError::kSkip;
  ForEachAnnotation(in, quiet, [&](const Annotation &a) {
    if (!spec.Keeps(a.record.entity)) return;
    auto it = flags.find(a.record.doc_id);
    if (it != flags.end() && it->second == 3) {
      writer.Write(a.raw);
      ++report.pass2_kept;
    }
  });
  writer.Close();
  return report;
}

}  // namespace

PreprocessReport Preprocess(const std::string &in, const std::string &out,
                            const FilterSpec &spec,
                            const StreamOptions &options) {
  if (!options.sorted) return PreprocessUnsorted(in, out, spec, options);

  PreprocessReport report;
  LineWriter writer(out);
  auto work = [&spec](const ParsedBatch &batch) {
    FilteredBatch result;
    result.read = batch.lines;
    Corpus kept = FilterPass1(batch.records, spec);
    result.pass1 = kept.size();
    // Batches never split a document, so per-batch runs are whole documents.
    for (auto [begin, end] : DocumentRuns(kept)) {
      auto doc = std::span<const Annotation>(kept).subspan(begin, end - begin);
      if (!HasCooccurrence(doc, spec)) continue;
      for (const auto &a : doc) result.lines.push_back(a.raw);
    }
    return result;
  };
  auto consume = [&](FilteredBatch &&batch) {
    report.lines += batch.read;
    report.pass1_kept += batch.pass1;
    report.pass2_kept += batch.lines.size();
    for (const auto &line : batch.lines) writer.Write(line);
  };
  RunBatched<FilteredBatch>(in, options, work, consume, &report.skipped);
  writer.Close();
  return report;
}

uint64_t ForEachAnnotation(
    const std::string &path, const ParseOptions &options,
    const std::function<void(const Annotation &)> &sink) {
  LineReader reader(path);
  std::string line;
  uint64_t skipped = 0;
  Annotation a;
  while (reader.Next(&line)) {
    std::string_view view = StripCr(line);
    if (view.empty()) continue;
    try {
      a.record = ParseAnnotation(view, options.separator);
    } catch (const ParseError &e) {
      if (options.on_error == OnParseError::kAbort) {
        throw ParseError(e.what(), path, reader.line_number());
      }
      ++skipped;
      continue;
    }
    a.raw = line;
    sink(a);
  }
  return skipped;
}

CorpusStats ComputeFileStats(const std::string &path,
                             const ParseOptions &options, uint64_t *skipped) {
  CorpusStatsAccumulator acc;
  uint64_t bad = ForEachAnnotation(
      path, options, [&](const Annotation &a) { acc.Add(a.record.doc_id); });
  if (skipped != nullptr) *skipped = bad;
  return acc.stats();
}

uint64_t SampleDocuments(const std::string &in, const std::string &out,
                         const SampleOptions &options) {
  // Document index of each line: incremented whenever the doc id changes.
  // Lines without a doc id belong to the current document.
  auto scan = [&](const std::function<void(uint64_t, const std::string &)>
                      &visit) {
    LineReader reader(in);
    std::string line, last;
    uint64_t doc_index = 0;
    bool started = false;
    while (reader.Next(&line)) {
      if (auto doc = DocIdOf(StripCr(line), options.separator)) {
        if (!started || *doc != last) {
          if (started) ++doc_index;
          last.assign(*doc);
          started = true;
        }
      }
      if (started) visit(doc_index, line);
    }
    return started ? doc_index + 1 : 0;
  };

  LineWriter writer(out);
  uint64_t written = 0;
  if (options.mode == SampleMode::kFirst) {
    scan([&](uint64_t doc, const std::string &line) {
      if (doc < options.documents) {
        writer.Write(line);
        written = doc + 1;
      }
    });
  } else {
    // Selection sampling: document i of `total` is taken with probability
    // (still needed) / (still unseen), which keeps input order.
    uint64_t total = scan([](uint64_t, const std::string &) {});
    std::mt19937_64 rng(options.seed);
    uint64_t needed = std::min(options.documents, total);
    uint64_t current = 0;
    bool keep = false;
    bool decided = false;
    scan([&](uint64_t doc, const std::string &line) {
      if (!decided || doc != current) {
        current = doc;
        decided = true;
        keep = needed > 0 && rng() % (total - doc) < needed;
        if (keep) {
          --needed;
          ++written;
        }
      }
      if (keep) writer.Write(line);
    });
  }
  writer.Close();
  return written;
}

}  // namespace triplerank
