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

#ifndef TRIPLERANK_FACC1_H_
#define TRIPLERANK_FACC1_H_

#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "triplerank/errors.h"
#include "triplerank/line_io.h"
#include "triplerank/model.h"
#include "triplerank/text.h"

namespace triplerank {

// One FACC1 annotation: a mention of `entity` in document `doc_id` spanning
// bytes [begin, end).
struct AnnotationRecord {
  std::string doc_id;
  std::string encoding;
  std::string surface;
  uint64_t begin = 0;
  uint64_t end = 0;
  double p_text_ctx = 0;  // P(entity | mention text and context)
  double p_ctx = 0;       // P(entity | context only)
  EntityId entity = EntityId::Parse("/m/0");

  friend bool operator==(const AnnotationRecord &,
                         const AnnotationRecord &) = default;
};

enum class OnParseError { kSkip, kAbort };

struct ParseOptions {
  char separator = '\t';
  OnParseError on_error = OnParseError::kAbort;
};

// Parses one line. With ',' as separator fields are whitespace-trimmed and
// the surface form may itself contain commas. Throws ParseError (without a
// line number; readers add it).
AnnotationRecord ParseAnnotation(std::string_view line, char separator = '\t');
std::string FormatAnnotation(const AnnotationRecord &record,
                             char separator = '\t');

// Document id of a raw line without a full parse, or nullopt when the line
// does not have enough fields to be a record.
std::optional<std::string_view> DocIdOf(std::string_view line,
                                        char separator = '\t');

// A parsed record together with its original bytes, so filters can emit the
// input unchanged.
struct Annotation {
  AnnotationRecord record;
  std::string raw;
};

using Corpus = std::vector<Annotation>;

// Parses a whole in-memory corpus. Blank lines are ignored. On kSkip, bad
// lines are dropped and counted in `*skipped`.
Corpus ParseCorpus(std::string_view contents, const ParseOptions &options = {},
                   size_t *skipped = nullptr,
                   const std::string &source = "");

class FilterSpec {
 public:
  static FilterSpec FromCatalog(const EntityCatalog &catalog);

  void AddPerson(const EntityId &id) { persons_.insert(id); }
  void AddProfession(const EntityId &id) { professions_.insert(id); }
  void AddNationality(const EntityId &id) { nationalities_.insert(id); }

  bool Keeps(const EntityId &id) const { return IsPerson(id) || IsValue(id); }
  bool IsPerson(const EntityId &id) const { return persons_.count(id) > 0; }
  // Profession or nationality id.
  bool IsValue(const EntityId &id) const {
    return professions_.count(id) > 0 || nationalities_.count(id) > 0;
  }

  const std::unordered_set<EntityId> &person_ids() const { return persons_; }
  const std::unordered_set<EntityId> &profession_ids() const {
    return professions_;
  }
  const std::unordered_set<EntityId> &nationality_ids() const {
    return nationalities_;
  }

 private:
  std::unordered_set<EntityId> persons_;
  std::unordered_set<EntityId> professions_;
  std::unordered_set<EntityId> nationalities_;
};

// Tracks document runs in a stream and rejects a document id that reappears
// after a different document. Closed ids are remembered by 64-bit hash.
class ContiguityChecker {
 public:
  // Returns true when `doc_id` starts a new document. Throws ValidationError
  // if it was already closed.
  bool Observe(std::string_view doc_id);

 private:
  std::string current_;
  bool started_ = false;
  std::unordered_set<uint64_t> closed_;
};

// Keeps the records whose entity is a person, profession or nationality.
Corpus FilterPass1(std::span<const Annotation> corpus, const FilterSpec &spec);

// True iff the records contain a person annotation and a profession or
// nationality annotation.
bool HasCooccurrence(std::span<const Annotation> document,
                     const FilterSpec &spec);

// Keeps whole documents that satisfy HasCooccurrence. Requires document
// contiguity (throws ValidationError otherwise).
Corpus FilterPass2(std::span<const Annotation> corpus, const FilterSpec &spec);

// Same result without the contiguity requirement: one scan collects the
// qualifying document ids, a second keeps their records in input order.
Corpus FilterPass2Unsorted(std::span<const Annotation> corpus,
                           const FilterSpec &spec);

struct CorpusStats {
  uint64_t documents = 0;
  uint64_t annotations = 0;

  double MeanPerDocument() const {
    return documents == 0 ? 0.0
                          : static_cast<double>(annotations) /
                                static_cast<double>(documents);
  }
  friend bool operator==(const CorpusStats &, const CorpusStats &) = default;
};

// Documents are counted as runs of equal doc id.
class CorpusStatsAccumulator {
 public:
  void Add(std::string_view doc_id);
  const CorpusStats &stats() const { return stats_; }

 private:
  CorpusStats stats_;
  std::string last_;
};

CorpusStats ComputeStats(std::span<const Annotation> corpus);

// Reads raw lines from a file and cuts them into batches that never split a
// document. Lines that do not look like records stay with the current batch.
class DocumentBatcher {
 public:
  struct Batch {
    std::vector<std::string> lines;
    size_t first_line = 1;  // line number of lines[0]
  };

  DocumentBatcher(const std::string &path, char separator,
                  size_t target_lines);

  bool Next(Batch *batch);
  // Hash of every line read so far (each followed by '\n').
  const Fnv1a64 &content_hash() const { return hash_; }

 private:
  LineReader reader_;
  char separator_;
  size_t target_lines_;
  std::optional<std::string> pending_;
  size_t pending_line_ = 0;
  Fnv1a64 hash_;
};

struct StreamOptions {
  ParseOptions parse;
  bool sorted = true;  // assume document contiguity
  int shards = 1;      // worker threads
  size_t batch_lines = 1 << 15;
};

struct PreprocessReport {
  uint64_t lines = 0;  // non-blank input lines, skipped ones included
  uint64_t skipped = 0;
  uint64_t pass1_kept = 0;
  uint64_t pass2_kept = 0;
};

// Streams `in` through both filter passes into `out`, preserving the bytes of
// surviving lines. Works on plain or gzip files.
PreprocessReport Preprocess(const std::string &in, const std::string &out,
                            const FilterSpec &spec,
                            const StreamOptions &options);

// Streams a corpus file, calling `sink` for each valid record in input order.
// Returns the number of skipped lines.
uint64_t ForEachAnnotation(
    const std::string &path, const ParseOptions &options,
    const std::function<void(const Annotation &)> &sink);

CorpusStats ComputeFileStats(const std::string &path,
                             const ParseOptions &options,
                             uint64_t *skipped = nullptr);

// Records parsed from one batch plus the bookkeeping needed to validate
// document contiguity across batches.
struct ParsedBatch {
  Corpus records;
  std::vector<std::string> runs;  // doc ids of consecutive record runs
  uint64_t lines = 0;
  uint64_t skipped = 0;
  std::optional<ParseError> error;  // first error under kAbort
};

ParsedBatch ParseBatch(const DocumentBatcher::Batch &batch,
                       const ParseOptions &options, const std::string &source);

// Reads `path` in document-aligned batches, runs `work(const ParsedBatch&)`
// on up to `options.shards` batches concurrently and hands the results to
// `consume(Result&&)` in input order. Parse errors under kAbort and (when
// `options.sorted`) non-contiguous documents are thrown from the calling
// thread. Returns the content hash of all lines read.
template <typename Result, typename Work, typename Consume>
Fnv1a64 RunBatched(const std::string &path, const StreamOptions &options,
                   Work work, Consume consume, uint64_t *skipped = nullptr) {
  DocumentBatcher batcher(path, options.parse.separator, options.batch_lines);
  ContiguityChecker contiguity;
  const size_t shards = options.shards < 1 ? 1 : options.shards;
  uint64_t skipped_total = 0;
  bool done = false;
  while (!done) {
    std::vector<ParsedBatch> parsed;
    std::vector<DocumentBatcher::Batch> raw;
    while (raw.size() < shards) {
      DocumentBatcher::Batch batch;
      if (!batcher.Next(&batch)) {
        done = true;
        break;
      }
      raw.push_back(std::move(batch));
    }
    parsed.resize(raw.size());
    std::vector<std::optional<Result>> results(raw.size());
    auto run_one = [&](size_t i) {
      parsed[i] = ParseBatch(raw[i], options.parse, path);
      raw[i].lines.clear();
      results[i].emplace(work(static_cast<const ParsedBatch &>(parsed[i])));
    };
    if (raw.size() == 1) {
      run_one(0);
    } else if (!raw.empty()) {
      std::vector<std::thread> threads;
      std::vector<std::exception_ptr> failures(raw.size());
      for (size_t i = 0; i < raw.size(); ++i) {
        threads.emplace_back([&, i] {
          try {
            run_one(i);
          } catch (...) {
            failures[i] = std::current_exception();
          }
        });
      }
      for (auto &t : threads) t.join();
      for (auto &f : failures) {
        if (f) std::rethrow_exception(f);
      }
    }
    for (size_t i = 0; i < parsed.size(); ++i) {
      if (parsed[i].error) throw *parsed[i].error;
      if (options.sorted) {
        for (const auto &doc : parsed[i].runs) contiguity.Observe(doc);
      }
      skipped_total += parsed[i].skipped;
      consume(std::move(*results[i]));
    }
  }
  if (skipped != nullptr) *skipped = skipped_total;
  return batcher.content_hash();
}

enum class SampleMode { kFirst, kUniform };

struct SampleOptions {
  SampleMode mode = SampleMode::kFirst;
  uint64_t documents = 0;
  uint64_t seed = 1;
  char separator = '\t';
};

// Copies N whole documents from `in` to `out` in input order. Returns the
// number of documents written.
uint64_t SampleDocuments(const std::string &in, const std::string &out,
                         const SampleOptions &options);

}  // namespace triplerank

#endif  // TRIPLERANK_FACC1_H_
