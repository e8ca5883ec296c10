#include "transum/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "transum/errors.hpp"

namespace fs = std::filesystem;

namespace transum {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Runs one pipeline stage, records its wall time and prefixes errors with
// the stage label.
template <typename Fn>
auto stage(const char* name, double& slot, Fn&& fn) {
  auto t0 = Clock::now();
  try {
    auto result = fn();
    slot = ms_since(t0);
    return result;
  } catch (const input_error& e) {
    throw input_error(std::string(name) + ": " + e.what());
  } catch (const internal_error& e) {
    throw internal_error(std::string(name) + ": " + e.what());
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot read file: " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<fs::path> sorted_entries(const fs::path& dir, const std::string& extension) {
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == extension)
      out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

SummaryMode parse_mode(const std::string& name) {
  if (name == "length") return SummaryMode::kLength;
  if (name == "coverage") return SummaryMode::kCoverage;
  throw input_error("unknown mode '" + name + "' (expected 'length' or 'coverage')");
}

std::string mode_name(SummaryMode mode) {
  return mode == SummaryMode::kLength ? "length" : "coverage";
}

void Config::validate() const {
  if (target_length <= 0.0) throw input_error("target length must be positive");
  if (gamma < 0.0 || gamma > 1.0) throw input_error("gamma must lie in [0,1]");
  if (lambda < 0.0 || lambda > 1.0) throw input_error("lambda must lie in [0,1]");
  if (delta <= 0.0) throw input_error("delta must be positive");
  if (mu < 0.0) throw input_error("mu must be nonnegative");
  if (epsilon0 <= 0.0) throw input_error("epsilon0 must be positive");
  if (beta <= 0.0 || beta >= 1.0) throw input_error("beta must lie in (0,1)");
  if (min_terms < 1) throw input_error("min-terms must be >= 1");
  if (max_cluster_frac <= 0.0 || max_cluster_frac > 1.0)
    throw input_error("max-cluster-frac must lie in (0,1]");
}

nlohmann::json Config::to_json() const {
  return {{"mode", mode_name(mode)},
          {"target_length", target_length},
          {"gamma", gamma},
          {"lambda", lambda},
          {"delta", delta},
          {"mu", mu},
          {"epsilon0", epsilon0},
          {"beta", beta},
          {"min_terms", min_terms},
          {"max_cluster_frac", max_cluster_frac},
          {"stoplist", stoplist_path},
          {"seed", seed}};
}

std::vector<Document> load_corpus(const std::string& path) {
  fs::path p(path);
  if (!fs::exists(p)) throw input_error("corpus path does not exist: " + path);
  std::vector<Document> docs;
  if (fs::is_directory(p)) {
    for (const fs::path& file : sorted_entries(p, ".txt")) {
      if (file.filename() == "query.txt") continue;
      docs.push_back({file.stem().string(), read_file(file)});
    }
  } else if (p.extension() == ".json") {
    nlohmann::json manifest;
    try {
      manifest = nlohmann::json::parse(read_file(p));
    } catch (const nlohmann::json::exception& e) {
      throw input_error(std::string("corpus manifest parse failure: ") + e.what());
    }
    if (!manifest.is_array()) throw input_error("corpus manifest must be a JSON array");
    for (const auto& entry : manifest)
      docs.push_back({entry.at("doc_id").get<std::string>(), entry.at("text").get<std::string>()});
  } else {
    throw input_error("corpus path must be a directory or a .json manifest: " + path);
  }
  docs.erase(std::remove_if(docs.begin(), docs.end(),
                            [](const Document& d) {
                              return d.text.find_first_not_of(" \t\r\n") == std::string::npos;
                            }),
             docs.end());
  if (docs.empty()) throw input_error("empty corpus: " + path);
  std::vector<std::string> ids;
  for (const Document& d : docs) ids.push_back(d.doc_id);
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    throw input_error("duplicate doc_id in corpus: " + path);
  return docs;
}

std::optional<std::string> corpus_query_file(const std::string& corpus_path) {
  fs::path q = fs::path(corpus_path) / "query.txt";
  if (!fs::is_regular_file(q)) return std::nullopt;
  return read_file(q);
}

std::vector<Sentence> build_sentences(const std::vector<Document>& docs, const Stoplist& stoplist) {
  std::vector<Sentence> sentences;
  int sid = 0;
  for (const Document& doc : docs) {
    for (RawSentence& raw : split_sentences(doc)) {
      Sentence s;
      s.sent_id = ++sid;
      s.doc_id = doc.doc_id;
      s.position = raw.position;
      s.length_words = count_words(raw.text);
      s.tokens = preprocess(raw.text, stoplist);
      s.raw_text = std::move(raw.text);
      sentences.push_back(std::move(s));
    }
  }
  return sentences;
}

PipelineResult run_pipeline(const std::vector<Document>& docs, const std::string& query,
                            const Config& config) {
  config.validate();
  PipelineResult r;

  r.sentences = stage("preprocess", r.timings.preprocess_ms, [&] {
    Stoplist stoplist;
    if (config.stoplist_path.empty())
      r.warnings.push_back("no stoplist configured; keeping all words");
    else
      stoplist = load_stoplist(config.stoplist_path);
    return build_sentences(docs, stoplist);
  });

  r.vocab = stage("vocabulary", r.timings.vocabulary_ms,
                  [&] { return Vocabulary::build(r.sentences); });

  r.topics = stage("topics", r.timings.topics_ms, [&] {
    DissimilarityMatrix d = DissimilarityMatrix::build(r.vocab);
    SemcotParams params;
    params.epsilon0 = config.epsilon0;
    params.beta = config.beta;
    params.min_pts = config.min_terms;
    params.max_cluster_frac = config.max_cluster_frac;
    params.mu = config.mu;
    return semcot(d, r.vocab, params);
  });

  r.themes = stage("themes", r.timings.themes_ms, [&] {
    auto sigma = topic_score_matrix(r.sentences, r.vocab, r.topics);
    return tag_sentences(sigma, config.delta);
  });

  r.hypergraph = stage("hypergraph", r.timings.hypergraph_ms, [&] {
    Stoplist stoplist;
    if (!config.stoplist_path.empty()) stoplist = load_stoplist(config.stoplist_path);
    std::vector<std::string> query_tokens = preprocess(query, stoplist);
    if (query_tokens.empty() && config.lambda > 0.0)
      r.warnings.push_back(
          "empty query: theme weights fall back to corpus centrality only");
    return build_hypergraph(r.sentences, r.themes, r.vocab, query_tokens, config.lambda);
  });

  return r;
}

RunReport summarize(const std::vector<Document>& docs, const std::string& query,
                    const Config& config) {
  PipelineResult pipeline = run_pipeline(docs, query, config);

  double min_phi = pipeline.hypergraph.node_weights.empty()
                       ? 0.0
                       : *std::min_element(pipeline.hypergraph.node_weights.begin(),
                                           pipeline.hypergraph.node_weights.end());
  if (config.mode == SummaryMode::kLength && config.target_length < min_phi)
    pipeline.warnings.push_back("target length is below the shortest sentence; summary is empty");

  StageTimings timings = pipeline.timings;
  Summary selection = stage("selection", timings.selection_ms, [&] {
    return config.mode == SummaryMode::kLength
               ? tl_transum(pipeline.hypergraph, config.target_length)
               : tc_transum(pipeline.hypergraph, config.gamma);
  });

  // re-assert the solver postconditions at system level
  if (config.mode == SummaryMode::kLength && selection.total_length > config.target_length)
    throw internal_error("selection: summary exceeds the target length");
  if (config.mode == SummaryMode::kCoverage) {
    double target = config.gamma * pipeline.hypergraph.total_edge_weight();
    if (selection.covered_weight < target - kCoverageTol)
      throw internal_error("selection: summary misses the coverage target");
  }

  RunReport report;
  report.selection = std::move(selection);
  report.timings = timings;
  report.config = config;
  report.query = query;
  report.warnings = std::move(pipeline.warnings);
  report.topic_count = pipeline.topics.topic_count;

  std::string text;
  for (int sid : report.selection.sentence_ids) {
    const Sentence& s = pipeline.sentences[static_cast<size_t>(sid) - 1];
    report.selected_sentences.push_back(s);
    if (!text.empty()) text += ' ';
    text += s.raw_text;
  }
  report.summary_text = std::move(text);

  auto topic_terms = pipeline.topics.members();
  for (size_t e = 0; e < pipeline.hypergraph.edges.size(); ++e) {
    const Theme& theme = pipeline.hypergraph.edges[e];
    ThemeInfo info;
    info.topic_id = theme.topic_id;
    info.size = static_cast<int>(theme.members.size());
    info.weight = pipeline.hypergraph.edge_weights[e];
    for (int t : topic_terms[static_cast<size_t>(theme.topic_id) - 1])
      info.terms.push_back(pipeline.vocab.term(t));
    report.themes.push_back(std::move(info));
  }
  return report;
}

RunReport summarize_path(const std::string& corpus_path, const std::optional<std::string>& query,
                         const Config& config) {
  std::vector<Document> docs = load_corpus(corpus_path);
  std::string q = query ? *query : corpus_query_file(corpus_path).value_or("");
  return summarize(docs, q, config);
}

nlohmann::json RunReport::to_json() const {
  nlohmann::json j;
  j["summary"] = summary_text;
  j["selected"] = nlohmann::json::array();
  for (const Sentence& s : selected_sentences)
    j["selected"].push_back({{"sent_id", s.sent_id},
                             {"doc_id", s.doc_id},
                             {"position", s.position},
                             {"length_words", s.length_words},
                             {"text", s.raw_text}});
  j["total_length"] = selection.total_length;
  j["covered_weight"] = selection.covered_weight;
  j["coverage_fraction"] = selection.coverage_fraction;
  j["trace"] = nlohmann::json::array();
  for (const SelectionStep& step : selection.trace)
    j["trace"].push_back({{"sent_id", step.node_id}, {"ratio", step.ratio}, {"gain", step.gain}});
  j["themes"] = nlohmann::json::array();
  for (const ThemeInfo& t : themes)
    j["themes"].push_back(
        {{"topic_id", t.topic_id}, {"terms", t.terms}, {"size", t.size}, {"weight", t.weight}});
  j["topic_count"] = topic_count;
  j["config"] = config.to_json();
  j["query"] = query;
  j["warnings"] = warnings;
  j["timings_ms"] = {{"preprocess", timings.preprocess_ms},
                     {"vocabulary", timings.vocabulary_ms},
                     {"topics", timings.topics_ms},
                     {"themes", timings.themes_ms},
                     {"hypergraph", timings.hypergraph_ms},
                     {"selection", timings.selection_ms},
                     {"total", timings.total_ms()}};
  return j;
}

namespace {

struct CorpusScores {
  std::vector<std::string> ids;
  std::vector<double> rouge2;
  std::vector<double> su4;
};

std::vector<EvalText> load_references(const fs::path& dir) {
  std::vector<EvalText> refs;
  for (const fs::path& file : sorted_entries(dir, ".txt")) {
    EvalText t = make_eval_text(read_file(file));
    if (!t.tokens.empty()) refs.push_back(std::move(t));
  }
  return refs;
}

double mean(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

nlohmann::json scores_json(const CorpusScores& scores, const EvalOptions& options) {
  nlohmann::json j;
  j["corpora"] = nlohmann::json::object();
  for (size_t i = 0; i < scores.ids.size(); ++i)
    j["corpora"][scores.ids[i]] = {{"rouge2", scores.rouge2[i]}, {"rouge_su4", scores.su4[i]}};
  j["mean"] = {{"rouge2", mean(scores.rouge2)}, {"rouge_su4", mean(scores.su4)}};
  if (options.bootstrap && scores.ids.size() >= 2) {
    auto [r2lo, r2hi] = bootstrap_ci(scores.rouge2, options.iterations, options.seed);
    auto [sulo, suhi] = bootstrap_ci(scores.su4, options.iterations, options.seed);
    j["ci95"] = {{"rouge2", {r2lo, r2hi}}, {"rouge_su4", {sulo, suhi}}};
  }
  return j;
}

}  // namespace

nlohmann::json evaluate_dirs(const std::string& candidate_dir, const std::string& reference_dir,
                             const EvalOptions& options) {
  fs::path cdir(candidate_dir), rdir(reference_dir);
  if (!fs::is_directory(cdir)) throw input_error("candidate dir not found: " + candidate_dir);
  if (!fs::is_directory(rdir)) throw input_error("reference dir not found: " + reference_dir);

  std::vector<std::string> cand_ids, ref_ids;
  for (const fs::path& f : sorted_entries(cdir, ".txt")) cand_ids.push_back(f.stem().string());
  for (const auto& entry : fs::directory_iterator(rdir))
    if (entry.is_directory()) ref_ids.push_back(entry.path().filename().string());
  std::sort(ref_ids.begin(), ref_ids.end());

  std::vector<std::string> missing_refs, missing_cands;
  std::set_difference(cand_ids.begin(), cand_ids.end(), ref_ids.begin(), ref_ids.end(),
                      std::back_inserter(missing_refs));
  std::set_difference(ref_ids.begin(), ref_ids.end(), cand_ids.begin(), cand_ids.end(),
                      std::back_inserter(missing_cands));
  if (!missing_refs.empty() || !missing_cands.empty()) {
    std::string msg = "candidate/reference id mismatch;";
    if (!missing_refs.empty()) {
      msg += " no references for:";
      for (const auto& id : missing_refs) msg += " " + id;
      msg += ";";
    }
    if (!missing_cands.empty()) {
      msg += " no candidates for:";
      for (const auto& id : missing_cands) msg += " " + id;
    }
    throw input_error(msg);
  }

  CorpusScores scores;
  for (const std::string& id : cand_ids) {
    std::vector<EvalText> refs = load_references(rdir / id);
    if (refs.empty()) throw input_error("no usable references for corpus " + id);
    EvalText cand = make_eval_text(read_file(cdir / (id + ".txt")));
    bool jk = options.jackknife && refs.size() >= 2;
    scores.ids.push_back(id);
    scores.rouge2.push_back(rouge_score(cand, refs, RougeMetric::R2, jk));
    scores.su4.push_back(rouge_score(cand, refs, RougeMetric::SU4, jk));
  }
  return scores_json(scores, options);
}

std::vector<SweepRow> sweep(const std::string& corpus_set_dir, const std::string& reference_dir,
                            const std::string& parameter, const std::vector<double>& grid,
                            const Config& base, const EvalOptions& eval_options) {
  if (parameter != "delta" && parameter != "lambda" && parameter != "gamma")
    throw input_error("sweep parameter must be delta, lambda or gamma");
  if (grid.empty()) throw input_error("sweep grid is empty");

  fs::path set_dir(corpus_set_dir);
  if (!fs::is_directory(set_dir)) throw input_error("corpus set dir not found: " + corpus_set_dir);
  std::vector<fs::path> corpora;
  for (const auto& entry : fs::directory_iterator(set_dir))
    if (entry.is_directory()) corpora.push_back(entry.path());
  std::sort(corpora.begin(), corpora.end());
  if (corpora.empty()) throw input_error("corpus set has no corpora: " + corpus_set_dir);

  for (const fs::path& corpus : corpora) {
    fs::path refs = fs::path(reference_dir) / corpus.filename();
    if (!fs::is_directory(refs))
      throw input_error("missing references for corpus " + corpus.filename().string());
  }

  std::vector<SweepRow> rows;
  for (double value : grid) {
    Config config = base;
    if (parameter == "delta") config.delta = value;
    if (parameter == "lambda") config.lambda = value;
    if (parameter == "gamma") {
      config.gamma = value;
      config.mode = SummaryMode::kCoverage;
    }
    SweepRow row;
    row.value = value;
    std::vector<double> r2s, su4s, lengths;
    for (const fs::path& corpus : corpora) {
      RunReport report = summarize_path(corpus.string(), std::nullopt, config);
      std::vector<EvalText> refs = load_references(fs::path(reference_dir) / corpus.filename());
      if (refs.empty())
        throw input_error("no usable references for corpus " + corpus.filename().string());
      EvalText cand = make_eval_text(report.summary_text);
      bool jk = eval_options.jackknife && refs.size() >= 2;
      r2s.push_back(rouge_score(cand, refs, RougeMetric::R2, jk));
      su4s.push_back(rouge_score(cand, refs, RougeMetric::SU4, jk));
      lengths.push_back(report.selection.total_length);
    }
    row.rouge2 = mean(r2s);
    row.rouge_su4 = mean(su4s);
    row.mean_length = mean(lengths);
    rows.push_back(row);
  }
  return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "value,rouge2,rouge_su4,mean_length\n";
  os << std::setprecision(10);
  for (const SweepRow& r : rows)
    os << r.value << ',' << r.rouge2 << ',' << r.rouge_su4 << ',' << r.mean_length << '\n';
  return os.str();
}

}  // namespace transum
