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

#ifndef TRIPLERANK_COOCCUR_H_
#define TRIPLERANK_COOCCUR_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "triplerank/facc1.h"
#include "triplerank/model.h"

namespace triplerank {

// kAnnotation: count(p, e) sums the annotations of e over the distinct
// documents mentioning p. kDocument: number of distinct documents mentioning
// both.
enum class CountMode { kAnnotation, kDocument };

// person id -> (profession/nationality id -> co-occurrence count). Zero
// counts are never stored.
class CooccurrenceIndex {
 public:
  using Row = std::map<EntityId, uint64_t>;

  // Adds `n` (> 0) to count(person, entity).
  void Add(const EntityId &person, const EntityId &entity, uint64_t n);
  // Adds `n` to the corpus-wide occurrence total of `entity`.
  void AddMarginal(const EntityId &entity, uint64_t n);

  uint64_t Count(const EntityId &person, const EntityId &entity) const;

  // Restriction of the person's row to `candidates`; absent pairs (and
  // unknown persons) map to 0.
  std::map<EntityId, uint64_t> CountsFor(
      const EntityId &person, std::span<const EntityId> candidates) const;

  // Pointwise sum; built_from identifiers are joined with '+'.
  void MergeFrom(const CooccurrenceIndex &other);

  const std::map<EntityId, Row> &rows() const { return rows_; }
  const std::map<EntityId, uint64_t> &marginals() const { return marginals_; }
  const std::string &built_from() const { return built_from_; }
  void set_built_from(std::string id) { built_from_ = std::move(id); }
  bool empty() const { return rows_.empty(); }

  // Header "#built_from=<id>", then "#marginal\t<mid>\t<n>" lines, then
  // "<person>\t<entity>\t<count>" sorted by person and entity.
  std::string Serialize() const;
  static CooccurrenceIndex Parse(std::string_view contents,
                                 const std::string &source);
  static CooccurrenceIndex Load(const std::string &path);
  void Save(const std::string &path) const;

  friend bool operator==(const CooccurrenceIndex &,
                         const CooccurrenceIndex &) = default;

 private:
  std::map<EntityId, Row> rows_;
  std::map<EntityId, uint64_t> marginals_;
  std::string built_from_;
};

CooccurrenceIndex Merge(const CooccurrenceIndex &a, const CooccurrenceIndex &b);

struct BuildOptions {
  CountMode mode = CountMode::kAnnotation;
  // Require document contiguity; otherwise records are grouped by doc id
  // in memory.
  bool sorted = true;
};

// Accumulates documents one at a time.
class IndexBuilder {
 public:
  IndexBuilder(const FilterSpec &spec, CountMode mode);

  // All records of one document.
  void AddDocument(std::span<const AnnotationRecord *const> document);
  CooccurrenceIndex Finish(std::string built_from);

 private:
  const FilterSpec &spec_;
  CountMode mode_;
  std::unordered_map<EntityId, std::unordered_map<EntityId, uint64_t>> counts_;
  std::unordered_map<EntityId, uint64_t> marginals_;
};

// Builds from an in-memory corpus. built_from is the FNV-1a hash of the raw
// lines. Throws ValidationError on non-contiguous documents when sorted.
CooccurrenceIndex BuildIndex(std::span<const Annotation> corpus,
                             const FilterSpec &spec,
                             const BuildOptions &options = {});

struct IndexFileReport {
  uint64_t skipped = 0;
};

// Streams a (filtered) corpus file; with `stream.shards` > 1 document batches
// are indexed concurrently and merged. built_from hashes every input line.
CooccurrenceIndex BuildIndexFromFile(const std::string &path,
                                     const FilterSpec &spec,
                                     const BuildOptions &options,
                                     const StreamOptions &stream,
                                     IndexFileReport *report = nullptr);

std::string ContentId(const Fnv1a64 &hash);

}  // namespace triplerank

#endif  // TRIPLERANK_COOCCUR_H_
