#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "transum/rouge.hpp"
#include "transum/textprep.hpp"
#include "transum/themegraph.hpp"
#include "transum/topics.hpp"
#include "transum/transversal.hpp"

namespace transum {

enum class SummaryMode { kLength, kCoverage };

SummaryMode parse_mode(const std::string& name);  // "length" | "coverage"
std::string mode_name(SummaryMode mode);

struct Config {
  SummaryMode mode = SummaryMode::kLength;
  double target_length = 250.0;  // words, length mode
  double gamma = 0.7;            // coverage target, coverage mode
  double lambda = 0.4;           // query weight in hyperedge weights
  double delta = 0.85;           // topic tagging threshold
  double mu = 1.98;              // isf threshold rescuing noisy terms
  double epsilon0 = 0.9;
  double beta = 0.95;
  int min_terms = 3;             // DBSCAN neighborhood size m
  double max_cluster_frac = 0.1;
  std::string stoplist_path = "data/stopwords.txt";
  std::uint64_t seed = 0;        // bootstrap resampling only

  void validate() const;
  nlohmann::json to_json() const;
};

struct StageTimings {
  double preprocess_ms = 0.0;
  double vocabulary_ms = 0.0;
  double topics_ms = 0.0;
  double themes_ms = 0.0;
  double hypergraph_ms = 0.0;
  double selection_ms = 0.0;
  double total_ms() const {
    return preprocess_ms + vocabulary_ms + topics_ms + themes_ms + hypergraph_ms + selection_ms;
  }
};

/// Everything the pipeline derives from a corpus before sentence selection.
struct PipelineResult {
  std::vector<Sentence> sentences;
  Vocabulary vocab;
  TopicAssignment topics;
  std::vector<Theme> themes;
  SentenceHypergraph hypergraph;
  StageTimings timings;
  std::vector<std::string> warnings;
};

struct ThemeInfo {
  int topic_id = 0;
  std::vector<std::string> terms;
  int size = 0;
  double weight = 0.0;
};

struct RunReport {
  std::string summary_text;
  Summary selection;
  std::vector<Sentence> selected_sentences;
  std::vector<ThemeInfo> themes;
  int topic_count = 0;
  StageTimings timings;
  Config config;
  std::string query;
  std::vector<std::string> warnings;

  nlohmann::json to_json() const;
};

/// Directory of .txt files (one document each, query.txt excluded) or a
/// JSON manifest [{"doc_id":..., "text":...}].
std::vector<Document> load_corpus(const std::string& path);

/// Contents of <dir>/query.txt when present.
std::optional<std::string> corpus_query_file(const std::string& corpus_path);

std::vector<Sentence> build_sentences(const std::vector<Document>& docs, const Stoplist& stoplist);

/// Stages 1-5: preprocessing through hypergraph construction.
PipelineResult run_pipeline(const std::vector<Document>& docs, const std::string& query,
                            const Config& config);

/// Full run: pipeline plus transversal selection and report assembly.
RunReport summarize(const std::vector<Document>& docs, const std::string& query,
                    const Config& config);
RunReport summarize_path(const std::string& corpus_path, const std::optional<std::string>& query,
                         const Config& config);

struct EvalOptions {
  bool jackknife = false;
  bool bootstrap = false;
  int iterations = 1000;
  std::uint64_t seed = 0;
};

/// Scores candidate summaries (<id>.txt) against reference directories
/// (<id>/*.txt); returns per-corpus and mean ROUGE-2 / ROUGE-SU4 plus
/// optional bootstrap intervals.
nlohmann::json evaluate_dirs(const std::string& candidate_dir, const std::string& reference_dir,
                             const EvalOptions& options);

struct SweepRow {
  double value = 0.0;
  double rouge2 = 0.0;
  double rouge_su4 = 0.0;
  double mean_length = 0.0;
};

/// Runs the pipeline over every corpus in corpus_set_dir (one subdirectory
/// per corpus) for each grid value of `parameter` (delta, lambda or gamma)
/// and scores against the references.
std::vector<SweepRow> sweep(const std::string& corpus_set_dir, const std::string& reference_dir,
                            const std::string& parameter, const std::vector<double>& grid,
                            const Config& base, const EvalOptions& eval_options);

std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace transum
