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

#include "triplerank/cli.h"

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>

#include "triplerank/cooccur.h"
#include "triplerank/errors.h"
#include "triplerank/eval.h"
#include "triplerank/facc1.h"
#include "triplerank/line_io.h"
#include "triplerank/model.h"
#include "triplerank/strategies.h"
#include "triplerank/text.h"
#include "triplerank/verify_ids.h"

namespace triplerank::cli {

namespace {

namespace fs = std::filesystem;

// Shared corpus-reading flags.
struct CorpusFlags {
  std::string separator = "tab";
  std::string on_parse_error = "abort";
  bool sorted = true;
  int shards = 1;

  ParseOptions Parse() const {
    return {separator == "comma" ? ',' : '\t',
            on_parse_error == "skip" ? OnParseError::kSkip
                                     : OnParseError::kAbort};
  }
  StreamOptions Stream() const {
    StreamOptions s;
    s.parse = Parse();
    s.sorted = sorted;
    s.shards = shards;
    return s;
  }
};

void AddCorpusFlags(CLI::App *cmd, CorpusFlags *flags, bool streaming) {
  cmd->add_option("--separator", flags->separator,
                  "Annotation field separator")
      ->check(CLI::IsMember({"tab", "comma"}))
      ->capture_default_str();
  cmd->add_option("--on-parse-error", flags->on_parse_error,
                  "Skip (and count) or abort on malformed annotation lines")
      ->check(CLI::IsMember({"skip", "abort"}))
      ->capture_default_str();
  if (!streaming) return;
  cmd->add_option("--sorted", flags->sorted,
                  "Assume document-contiguous input (false: two-scan / "
                  "in-memory grouping)")
      ->capture_default_str();
  cmd->add_option("--shards", flags->shards,
                  "Worker threads over document-aligned batches")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();
}

void RequireFile(const std::string &path, const char *what) {
  if (path != "-" && !fs::is_regular_file(path)) {
    throw IoError(std::string(what) + " not found: " + path);
  }
}

void RequireDir(const std::string &path, const char *what) {
  if (!fs::is_directory(path)) {
    throw IoError(std::string(what) + " not found: " + path);
  }
}

void Emit(const std::string &path, const std::string &contents,
          std::ostream &out) {
  if (path.empty() || path == "-") {
    out << contents;
  } else {
    WriteFile(path, contents);
  }
}

std::vector<Relation> Relations(const std::string &name) {
  if (name == "both") return {Relation::kProfession, Relation::kNationality};
  return {*ParseRelation(name)};
}

// ---- preprocess ----

struct PreprocessArgs {
  std::string catalog_dir, in, out;
  CorpusFlags corpus;
};

void DoPreprocess(const PreprocessArgs &a, std::ostream &err) {
  RequireDir(a.catalog_dir, "catalog directory");
  RequireFile(a.in, "corpus");
  if (!a.corpus.sorted && a.in == "-") {
    throw ValidationError("--sorted=false needs a re-readable input file");
  }
  EntityCatalog catalog = LoadCatalogDir(a.catalog_dir);
  FilterSpec spec = FilterSpec::FromCatalog(catalog);
  PreprocessReport r = Preprocess(a.in, a.out, spec, a.corpus.Stream());
  err << "preprocess: skipped " << r.skipped << " malformed lines; pass 1 kept "
      << r.pass1_kept << " annotations; pass 2 kept " << r.pass2_kept << "\n";
}

// ---- index ----

struct IndexArgs {
  std::string catalog_dir, in, out;
  bool doc_level = false;
  CorpusFlags corpus;
};

void DoIndex(const IndexArgs &a, std::ostream &out, std::ostream &err) {
  RequireDir(a.catalog_dir, "catalog directory");
  RequireFile(a.in, "corpus");
  EntityCatalog catalog = LoadCatalogDir(a.catalog_dir);
  FilterSpec spec = FilterSpec::FromCatalog(catalog);
  BuildOptions build;
  build.mode = a.doc_level ? CountMode::kDocument : CountMode::kAnnotation;
  build.sorted = a.corpus.sorted;
  IndexFileReport report;
  CooccurrenceIndex index =
      BuildIndexFromFile(a.in, spec, build, a.corpus.Stream(), &report);
  Emit(a.out, index.Serialize(), out);
  err << "index: " << index.rows().size() << " persons; skipped "
      << report.skipped << " malformed lines\n";
}

// ---- score ----

struct ScoreArgs {
  std::string relation = "both";
  int default_score = -1;  // unset
  std::string index, abstracts, kb_dir, catalog_dir, out;
  std::string strategy = "both";
  bool provenance = false;
  int workers = 1;
};

void DoScore(const ScoreArgs &a, std::ostream &out, std::ostream &err) {
  Strategy strategy = *ParseStrategy(a.strategy);
  if (strategy != Strategy::kAbstracts && a.index.empty()) {
    throw ValidationError("--index is required for strategy '" + a.strategy +
                          "'");
  }
  std::string catalog_dir = a.catalog_dir.empty() ? a.kb_dir : a.catalog_dir;
  RequireDir(a.kb_dir, "KB directory");
  RequireDir(catalog_dir, "catalog directory");
  if (!a.index.empty()) RequireFile(a.index, "index");
  if (!a.abstracts.empty()) RequireFile(a.abstracts, "abstracts");

  EntityCatalog catalog = LoadCatalogDir(catalog_dir);
  KnowledgeBase kb = LoadKnowledgeBaseDir(a.kb_dir, catalog);
  AbstractStore abstracts;
  if (!a.abstracts.empty()) abstracts = LoadAbstracts(a.abstracts, catalog);
  CooccurrenceIndex index;
  if (!a.index.empty()) index = CooccurrenceIndex::Load(a.index);

  ScoringConfig config;
  config.strategy = strategy;
  config.relations = Relations(a.relation);
  config.workers = a.workers;
  // Single-strategy runs report raw scores unless a default is requested.
  config.default_score =
      a.default_score >= 0 ? a.default_score
                           : (strategy == Strategy::kBoth ? 4 : 0);

  ScoreResult result = ScoreAll(kb, catalog, abstracts, index, config);
  for (const auto &w : result.warnings) err << "warning: " << w << "\n";
  Emit(a.out, FormatPredictions(result.triples, a.provenance), out);
  size_t defaulted = 0;
  for (const auto &t : result.triples) defaulted += t.defaulted ? 1 : 0;
  err << "score: " << result.triples.size() << " triples, " << defaulted
      << " without evidence\n";
}

// ---- evaluate / confusion ----

struct EvalArgs {
  std::string pred, gold, relation = "both", kb_dir, catalog_dir, out;
  int accuracy_window = 2;
  std::string format = "table";
  bool tau_a = false;
  bool tau_include_singletons = false;
  bool tau_pooled = false;
  bool allow_extra = false;
};

using RelationScores = std::map<Relation, ScoreMap>;

// Splits score lines by relation: via the KB when given, otherwise every
// line belongs to the single requested relation.
RelationScores SplitByRelation(
    const std::vector<std::pair<LabelPair, int>> &lines,
    const std::vector<Relation> &relations, const KnowledgeBase *kb,
    const std::string &source) {
  RelationScores out;
  for (Relation r : relations) out[r];
  for (const auto &[key, score] : lines) {
    Relation relation = relations.front();
    if (kb != nullptr) {
      bool prof = kb->profession_pairs.count(key) > 0;
      bool nat = kb->nationality_pairs.count(key) > 0;
      if (prof && nat) {
        throw ValidationError(source + ": (" + key.first + ", " + key.second +
                              ") is ambiguous between relations");
      }
      if (!prof && !nat) {
        throw ValidationError(source + ": (" + key.first + ", " + key.second +
                              ") is not in the knowledge base");
      }
      relation = prof ? Relation::kProfession : Relation::kNationality;
    }
    auto it = out.find(relation);
    if (it == out.end()) continue;
    if (!it->second.emplace(key, score).second) {
      throw ValidationError(source + ": duplicate triple (" + key.first +
                            ", " + key.second + ")");
    }
  }
  return out;
}

struct EvalInputs {
  std::vector<Relation> relations;
  RelationScores pred, gold;
};

EvalInputs LoadEvalInputs(const EvalArgs &a, std::ostream &err) {
  RequireFile(a.pred, "predictions");
  RequireFile(a.gold, "gold");
  EvalInputs in;
  in.relations = Relations(a.relation);
  std::optional<KnowledgeBase> kb;
  if (!a.kb_dir.empty()) {
    std::string catalog_dir = a.catalog_dir.empty() ? a.kb_dir : a.catalog_dir;
    RequireDir(a.kb_dir, "KB directory");
    EntityCatalog catalog = LoadCatalogDir(catalog_dir);
    kb = LoadKnowledgeBaseDir(a.kb_dir, catalog);
  } else if (in.relations.size() > 1) {
    throw ValidationError("--relation both needs --kb-dir to tell relations "
                          "apart");
  }
  const KnowledgeBase *kbp = kb ? &*kb : nullptr;
  in.pred = SplitByRelation(ParseScoreLines(ReadFile(a.pred), a.pred),
                            in.relations, kbp, a.pred);
  in.gold = SplitByRelation(ParseScoreLines(ReadFile(a.gold), a.gold),
                            in.relations, kbp, a.gold);
  if (a.allow_extra) {
    for (Relation r : in.relations) {
      size_t dropped = std::erase_if(in.pred[r], [&](const auto &kv) {
        return in.gold[r].count(kv.first) == 0;
      });
      if (dropped > 0) {
        err << RelationName(r) << ": ignoring " << dropped
            << " predictions without gold scores\n";
      }
    }
  }
  return in;
}

void DoEvaluate(const EvalArgs &a, std::ostream &out, std::ostream &err) {
  EvalInputs in = LoadEvalInputs(a, err);
  EvalOptions options;
  options.accuracy_window = a.accuracy_window;
  options.tau.tau_b = !a.tau_a;
  options.tau.include_singletons = a.tau_include_singletons;
  options.tau.pooled = a.tau_pooled;

  std::vector<EvalRow> rows;
  for (Relation r : in.relations) {
    if (in.gold[r].empty() && in.relations.size() > 1) continue;
    TauResult tau = MeanKendallTau(in.pred[r], in.gold[r], options.tau);
    if (tau.groups == 0) {
      err << "warning: " << RelationName(r)
          << ": no person has a defined Kendall tau; reporting 0\n";
    }
    rows.push_back(Evaluate(std::string(RelationName(r)), in.pred[r],
                            in.gold[r], options));
  }
  if (in.relations.size() > 1) rows.push_back(WeightedSummary(rows));
  Emit(a.out, FormatReport(rows, *ParseReportFormat(a.format)), out);
}

void DoConfusion(const EvalArgs &a, std::ostream &out, std::ostream &err) {
  EvalInputs in = LoadEvalInputs(a, err);
  std::string text;
  for (Relation r : in.relations) {
    if (in.relations.size() > 1) {
      text += "# " + std::string(RelationName(r)) + "\n";
    }
    text += FormatConfusion(Confusion(in.pred[r], in.gold[r]));
  }
  Emit(a.out, text, out);
}

// ---- sample / verify-ids / stats ----

struct SampleArgs {
  std::string in, out, mode = "first", separator = "tab";
  uint64_t docs = 0, seed = 1;
};

void DoSample(const SampleArgs &a, std::ostream &err) {
  RequireFile(a.in, "corpus");
  SampleOptions options;
  options.mode = a.mode == "uniform" ? SampleMode::kUniform : SampleMode::kFirst;
  options.documents = a.docs;
  options.seed = a.seed;
  options.separator = a.separator == "comma" ? ',' : '\t';
  uint64_t n = SampleDocuments(a.in, a.out, options);
  err << "sample: wrote " << n << " documents\n";
}

struct VerifyArgs {
  std::string catalog_dir, in, out;
  CorpusFlags corpus;
};

void DoVerify(const VerifyArgs &a, std::ostream &out, std::ostream &err) {
  RequireDir(a.catalog_dir, "catalog directory");
  RequireFile(a.in, "corpus");
  EntityCatalog catalog = LoadCatalogDir(a.catalog_dir);
  uint64_t skipped = 0;
  auto rows = VerifyIdsFile(catalog, a.in, a.corpus.Parse(), &skipped);
  Emit(a.out, FormatIdReport(rows), out);
  size_t missing = 0;
  for (const auto &r : rows) missing += r.flagged() ? 1 : 0;
  err << "verify-ids: " << missing << " of " << rows.size()
      << " entries not found in the corpus\n";
}

struct StatsArgs {
  std::string in;
  CorpusFlags corpus;
};

void DoStats(const StatsArgs &a, std::ostream &out) {
  RequireFile(a.in, "corpus");
  uint64_t skipped = 0;
  CorpusStats s = ComputeFileStats(a.in, a.corpus.Parse(), &skipped);
  out << "documents\t" << s.documents << "\n"
      << "annotations\t" << s.annotations << "\n"
      << "annotations_per_document\t" << FormatDouble(s.MeanPerDocument())
      << "\n"
      << "skipped_lines\t" << skipped << "\n";
}

// ---- pipeline ----

// Flat "key = value" file; '#' starts a comment line.
std::map<std::string, std::string> ReadConfig(const std::string &path) {
  static const std::set<std::string> kKeys = {
      "catalog_dir", "kb_dir",   "corpus",          "abstracts",
      "out_dir",     "separator", "on_parse_error", "sorted",
      "shards",      "doc_level", "relation",       "strategy",
      "default",     "provenance", "accuracy_window", "format"};
  std::map<std::string, std::string> config;
  std::string contents = ReadFile(path);
  size_t line_no = 0;
  for (auto line : Split(contents, '\n')) {
    ++line_no;
    line = TrimSpaces(StripCr(line));
    if (line.empty() || line.front() == '#') continue;
    size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("expected key = value", path, line_no);
    }
    std::string key(TrimSpaces(line.substr(0, eq)));
    std::string value(TrimSpaces(line.substr(eq + 1)));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (kKeys.count(key) == 0) {
      throw ValidationError(path + ":" + std::to_string(line_no) +
                            ": unknown key '" + key + "'");
    }
    config[key] = value;
  }
  return config;
}

bool ParseBool(const std::string &key, const std::string &value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ValidationError("config key '" + key + "' expects true or false");
}

int ParseIntIn(const std::string &key, const std::string &value, int lo,
               int hi) {
  auto v = ParseInt64(value);
  if (!v || *v < lo || *v > hi) {
    throw ValidationError("config key '" + key + "' expects an integer in " +
                          std::to_string(lo) + ".." + std::to_string(hi));
  }
  return static_cast<int>(*v);
}

void CheckMember(const std::string &key, const std::string &value,
                 std::initializer_list<const char *> allowed) {
  for (const char *a : allowed) {
    if (value == a) return;
  }
  throw ValidationError("config key '" + key + "' has invalid value '" +
                        value + "'");
}

void DoPipeline(const std::string &config_path, std::ostream &out,
                std::ostream &err) {
  RequireFile(config_path, "config");
  auto config = ReadConfig(config_path);
  fs::path base = fs::path(config_path).parent_path();
  auto get = [&](const std::string &key, const std::string &fallback) {
    auto it = config.find(key);
    return it == config.end() ? fallback : it->second;
  };
  auto path = [&](const std::string &key, bool required) -> std::string {
    auto it = config.find(key);
    if (it == config.end()) {
      if (required) throw ValidationError("config key '" + key + "' missing");
      return "";
    }
    fs::path p(it->second);
    return (p.is_absolute() ? p : base / p).lexically_normal().string();
  };

  CorpusFlags corpus;
  corpus.separator = get("separator", "tab");
  CheckMember("separator", corpus.separator, {"tab", "comma"});
  corpus.on_parse_error = get("on_parse_error", "abort");
  CheckMember("on_parse_error", corpus.on_parse_error, {"skip", "abort"});
  corpus.sorted = ParseBool("sorted", get("sorted", "true"));
  corpus.shards = ParseIntIn("shards", get("shards", "1"), 1, 256);

  const std::string catalog_dir = path("catalog_dir", true);
  const std::string kb_dir = path("kb_dir", true);
  const std::string out_dir = path("out_dir", true);
  fs::create_directories(out_dir);
  auto out_file = [&](const char *name) { return (fs::path(out_dir) / name).string(); };

  PreprocessArgs pre{catalog_dir, path("corpus", true), out_file("filtered.tsv"),
                     corpus};
  DoPreprocess(pre, err);

  IndexArgs idx{catalog_dir, pre.out, out_file("index.tsv"),
                ParseBool("doc_level", get("doc_level", "false")), corpus};
  DoIndex(idx, out, err);

  ScoreArgs score;
  score.relation = get("relation", "both");
  CheckMember("relation", score.relation, {"profession", "nationality", "both"});
  score.strategy = get("strategy", "both");
  CheckMember("strategy", score.strategy, {"abstracts", "counts", "both"});
  if (config.count("default") > 0) {
    score.default_score = ParseIntIn("default", config["default"], 0, 7);
  }
  score.index = idx.out;
  score.abstracts = path("abstracts", false);
  score.kb_dir = kb_dir;
  score.catalog_dir = catalog_dir;
  score.out = out_file("predictions.tsv");
  score.provenance = ParseBool("provenance", get("provenance", "false"));
  DoScore(score, out, err);

  const std::string gold = (fs::path(kb_dir) / "gold.tsv").string();
  if (!fs::exists(gold)) {
    err << "pipeline: no gold.tsv in " << kb_dir << "; skipping evaluation\n";
    return;
  }
  EvalArgs eval;
  eval.pred = score.out;
  eval.gold = gold;
  eval.relation = score.relation;
  eval.kb_dir = kb_dir;
  eval.catalog_dir = catalog_dir;
  eval.accuracy_window =
      ParseIntIn("accuracy_window", get("accuracy_window", "2"), 0, 7);
  eval.format = get("format", "tsv");
  CheckMember("format", eval.format, {"table", "tsv", "json-lines"});
  eval.allow_extra = true;
  eval.out = out_file("evaluation.txt");
  DoEvaluate(eval, out, err);
  eval.out = out_file("confusion.tsv");
  DoConfusion(eval, out, err);
}

void AddEvalFlags(CLI::App *cmd, EvalArgs *a) {
  cmd->add_option("--pred", a->pred, "Predictions <person>\\t<value>\\t<score>")
      ->required();
  cmd->add_option("--gold", a->gold, "Gold scores <person>\\t<value>\\t<score>")
      ->required();
  cmd->add_option("--relation", a->relation, "Relation(s) to evaluate")
      ->check(CLI::IsMember({"profession", "nationality", "both"}))
      ->capture_default_str();
  cmd->add_option("--kb-dir", a->kb_dir,
                  "KB directory used to assign triples to relations");
  cmd->add_option("--catalog-dir", a->catalog_dir,
                  "Catalog directory (defaults to --kb-dir)");
  cmd->add_flag("--allow-extra", a->allow_extra,
                  "Ignore predictions that have no gold score");
  cmd->add_option("--out", a->out, "Output file (default: stdout)");
}

}  // namespace

int Run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err) {
  CLI::App app{"Knowledge-base triple scoring from entity co-occurrences",
               "triplerank"};
  app.require_subcommand(1);

  PreprocessArgs pre;
  auto *pre_cmd = app.add_subcommand(
      "preprocess", "Keep catalog annotations in documents that pair a person "
                    "with a profession or nationality");
  pre_cmd->add_option("--catalog-dir", pre.catalog_dir, "Catalog directory")
      ->required();
  pre_cmd->add_option("--in", pre.in, "Annotation corpus (.gz allowed)")
      ->required();
  pre_cmd->add_option("--out", pre.out, "Filtered corpus (.gz allowed)")
      ->required();
  AddCorpusFlags(pre_cmd, &pre.corpus, true);

  IndexArgs idx;
  auto *idx_cmd = app.add_subcommand(
      "index", "Build the person/entity co-occurrence index");
  idx_cmd->add_option("--catalog-dir", idx.catalog_dir, "Catalog directory")
      ->required();
  idx_cmd->add_option("--in", idx.in, "Filtered corpus")->required();
  idx_cmd->add_option("--out", idx.out, "Index TSV")->required();
  idx_cmd->add_flag("--doc-level", idx.doc_level,
                    "Count distinct documents instead of annotations");
  AddCorpusFlags(idx_cmd, &idx.corpus, true);

  ScoreArgs score;
  auto *score_cmd = app.add_subcommand("score", "Score knowledge-base triples 0-7");
  score_cmd->add_option("--relation", score.relation, "Relation(s) to score")
      ->check(CLI::IsMember({"profession", "nationality", "both"}))
      ->capture_default_str();
  score_cmd->add_option("--default", score.default_score,
                        "Score when no strategy finds evidence (default 4 "
                        "for --strategy both, 0 otherwise)")
      ->check(CLI::Range(0, 7));
  score_cmd->add_option("--index", score.index, "Co-occurrence index TSV");
  score_cmd->add_option("--abstracts", score.abstracts, "Abstracts TSV");
  score_cmd->add_option("--kb-dir", score.kb_dir, "KB directory")->required();
  score_cmd->add_option("--catalog-dir", score.catalog_dir,
                        "Catalog directory (defaults to --kb-dir)");
  score_cmd->add_option("--out", score.out, "Predictions TSV ('-' for stdout)")
      ->required();
  score_cmd->add_option("--strategy", score.strategy, "Scoring strategy")
      ->check(CLI::IsMember({"abstracts", "counts", "both"}))
      ->capture_default_str();
  score_cmd->add_flag("--provenance", score.provenance,
                      "Append abstract_score, count_score and defaulted columns");
  score_cmd->add_option("--workers", score.workers, "Scoring threads")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();

  EvalArgs eval;
  auto *eval_cmd = app.add_subcommand(
      "evaluate", "Accuracy, average score difference and Kendall tau");
  AddEvalFlags(eval_cmd, &eval);
  eval_cmd->add_option("--accuracy-window", eval.accuracy_window,
                       "Max |pred - gold| counted as correct")
      ->check(CLI::Range(0, 7))
      ->capture_default_str();
  eval_cmd->add_option("--format", eval.format, "Report format")
      ->check(CLI::IsMember({"table", "tsv", "json-lines"}))
      ->capture_default_str();
  eval_cmd->add_flag("--tau-a", eval.tau_a, "Use tau-a instead of tau-b");
  eval_cmd->add_flag("--tau-include-singletons", eval.tau_include_singletons,
                     "Count persons without a defined tau as 0");
  eval_cmd->add_flag("--tau-pooled", eval.tau_pooled,
                     "One tau over all triples instead of per person");

  EvalArgs conf;
  auto *conf_cmd = app.add_subcommand(
      "confusion", "8x8 true-vs-predicted score matrix");
  AddEvalFlags(conf_cmd, &conf);

  SampleArgs sample;
  auto *sample_cmd = app.add_subcommand("sample", "Copy a subset of documents");
  sample_cmd->add_option("--in", sample.in, "Annotation corpus")->required();
  sample_cmd->add_option("--out", sample.out, "Sampled corpus")->required();
  sample_cmd->add_option("--docs", sample.docs, "Number of documents")
      ->required();
  sample_cmd->add_option("--mode", sample.mode,
                         "first N documents or a seeded uniform sample")
      ->check(CLI::IsMember({"first", "uniform"}))
      ->capture_default_str();
  sample_cmd->add_option("--seed", sample.seed, "Seed for --mode uniform")
      ->capture_default_str();
  sample_cmd->add_option("--separator", sample.separator, "Field separator")
      ->check(CLI::IsMember({"tab", "comma"}))
      ->capture_default_str();

  VerifyArgs verify;
  auto *verify_cmd = app.add_subcommand(
      "verify-ids", "Count corpus annotations for every catalog id");
  verify_cmd->add_option("--catalog-dir", verify.catalog_dir,
                         "Catalog directory")
      ->required();
  verify_cmd->add_option("--in", verify.in, "Annotation corpus")->required();
  verify_cmd->add_option("--out", verify.out, "Report TSV (default: stdout)");
  AddCorpusFlags(verify_cmd, &verify.corpus, false);

  StatsArgs stats;
  auto *stats_cmd = app.add_subcommand(
      "stats", "Document and annotation counts of a corpus");
  stats_cmd->add_option("--in", stats.in, "Annotation corpus")->required();
  AddCorpusFlags(stats_cmd, &stats.corpus, false);

  std::string config_path;
  auto *pipe_cmd = app.add_subcommand(
      "pipeline", "preprocess, index, score, evaluate and confusion in one go");
  pipe_cmd->add_option("--config", config_path, "key = value config file")
      ->required();

  std::vector<std::string> argv_storage{"triplerank"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char *> argv;
  for (auto &s : argv_storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*pre_cmd) DoPreprocess(pre, err);
    if (*idx_cmd) DoIndex(idx, out, err);
    if (*score_cmd) DoScore(score, out, err);
    if (*eval_cmd) DoEvaluate(eval, out, err);
    if (*conf_cmd) DoConfusion(conf, out, err);
    if (*sample_cmd) DoSample(sample, err);
    if (*verify_cmd) DoVerify(verify, out, err);
    if (*stats_cmd) DoStats(stats, out);
    if (*pipe_cmd) DoPipeline(config_path, out, err);
  } catch (const ValidationError &e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ParseError &e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const IoError &e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error &e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace triplerank::cli
