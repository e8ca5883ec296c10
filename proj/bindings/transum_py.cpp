#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "transum/errors.hpp"
#include "transum/pipeline.hpp"

namespace py = pybind11;

namespace {

py::object json_to_py(const nlohmann::json& j) {
  switch (j.type()) {
    case nlohmann::json::value_t::null:
      return py::none();
    case nlohmann::json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case nlohmann::json::value_t::number_integer:
      return py::int_(j.get<long long>());
    case nlohmann::json::value_t::number_unsigned:
      return py::int_(j.get<unsigned long long>());
    case nlohmann::json::value_t::number_float:
      return py::float_(j.get<double>());
    case nlohmann::json::value_t::string:
      return py::str(j.get<std::string>());
    case nlohmann::json::value_t::array: {
      py::list out;
      for (const auto& item : j) out.append(json_to_py(item));
      return out;
    }
    case nlohmann::json::value_t::object: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it)
        out[py::str(it.key())] = json_to_py(it.value());
      return out;
    }
    default:
      return py::none();
  }
}

transum::Config make_config(const std::string& mode, double target_length, double gamma,
                            double lambda, double delta, double mu, double epsilon0, double beta,
                            int min_terms, double max_cluster_frac, const std::string& stoplist,
                            std::uint64_t seed) {
  transum::Config cfg;
  cfg.mode = transum::parse_mode(mode);
  cfg.target_length = target_length;
  cfg.gamma = gamma;
  cfg.lambda = lambda;
  cfg.delta = delta;
  cfg.mu = mu;
  cfg.epsilon0 = epsilon0;
  cfg.beta = beta;
  cfg.min_terms = min_terms;
  cfg.max_cluster_frac = max_cluster_frac;
  cfg.stoplist_path = stoplist;
  cfg.seed = seed;
  return cfg;
}

transum::RougeMetric parse_metric(const std::string& name) {
  if (name == "R2" || name == "rouge2") return transum::RougeMetric::R2;
  if (name == "SU4" || name == "rouge_su4") return transum::RougeMetric::SU4;
  throw transum::input_error("unknown metric '" + name + "' (expected R2 or SU4)");
}

}  // namespace

PYBIND11_MODULE(_transum, m) {
  m.doc() = "Query-oriented extractive summarization via weighted hypergraph transversals";

  py::register_exception<transum::input_error>(m, "InputError", PyExc_ValueError);
  py::register_exception<transum::internal_error>(m, "InternalError", PyExc_RuntimeError);

  m.def(
      "summarize",
      [](const std::string& corpus, const py::object& query, const std::string& mode,
         double target_length, double gamma, double lambda, double delta, double mu,
         double epsilon0, double beta, int min_terms, double max_cluster_frac,
         const std::string& stoplist, std::uint64_t seed) {
        transum::Config cfg = make_config(mode, target_length, gamma, lambda, delta, mu, epsilon0,
                                          beta, min_terms, max_cluster_frac, stoplist, seed);
        std::optional<std::string> q;
        if (!query.is_none()) q = query.cast<std::string>();
        return json_to_py(transum::summarize_path(corpus, q, cfg).to_json());
      },
      py::arg("corpus"), py::arg("query") = py::none(), py::arg("mode") = "length",
      py::arg("target_length") = 250.0, py::arg("gamma") = 0.7, py::arg("lambda_") = 0.4,
      py::arg("delta") = 0.85, py::arg("mu") = 1.98, py::arg("epsilon0") = 0.9,
      py::arg("beta") = 0.95, py::arg("min_terms") = 3, py::arg("max_cluster_frac") = 0.1,
      py::arg("stoplist") = "data/stopwords.txt", py::arg("seed") = 0,
      "Run the full pipeline on a corpus directory or JSON manifest and "
      "return the report as a dict.");

  m.def(
      "dump_hypergraph",
      [](const std::string& corpus, const py::object& query, double lambda, double delta,
         double mu, double epsilon0, double beta, int min_terms, double max_cluster_frac,
         const std::string& stoplist) {
        transum::Config cfg = make_config("length", 250.0, 0.7, lambda, delta, mu, epsilon0, beta,
                                          min_terms, max_cluster_frac, stoplist, 0);
        std::vector<transum::Document> docs = transum::load_corpus(corpus);
        std::string q = query.is_none()
                            ? transum::corpus_query_file(corpus).value_or("")
                            : query.cast<std::string>();
        return transum::run_pipeline(docs, q, cfg).hypergraph.to_json();
      },
      py::arg("corpus"), py::arg("query") = py::none(), py::arg("lambda_") = 0.4,
      py::arg("delta") = 0.85, py::arg("mu") = 1.98, py::arg("epsilon0") = 0.9,
      py::arg("beta") = 0.95, py::arg("min_terms") = 3, py::arg("max_cluster_frac") = 0.1,
      py::arg("stoplist") = "data/stopwords.txt",
      "Build the sentence hypergraph for a corpus and return it as a JSON string.");

  m.def(
      "solve",
      [](const std::string& hypergraph_json, const std::string& mode, double target_length,
         double gamma) {
        transum::SentenceHypergraph h = transum::SentenceHypergraph::from_json(hypergraph_json);
        transum::Summary s = transum::parse_mode(mode) == transum::SummaryMode::kLength
                                 ? transum::tl_transum(h, target_length)
                                 : transum::tc_transum(h, gamma);
        nlohmann::json j;
        j["sentence_ids"] = s.sentence_ids;
        j["total_length"] = s.total_length;
        j["covered_weight"] = s.covered_weight;
        j["coverage_fraction"] = s.coverage_fraction;
        return json_to_py(j);
      },
      py::arg("hypergraph_json"), py::arg("mode") = "length", py::arg("target_length") = 250.0,
      py::arg("gamma") = 0.7,
      "Run a transversal on a hypergraph JSON string (no text pipeline).");

  m.def(
      "rouge_score",
      [](const std::string& candidate, const std::vector<std::string>& references,
         const std::string& metric, bool jackknife) {
        transum::EvalText cand = transum::make_eval_text(candidate);
        std::vector<transum::EvalText> refs;
        for (const std::string& r : references) refs.push_back(transum::make_eval_text(r));
        return transum::rouge_score(cand, refs, parse_metric(metric), jackknife);
      },
      py::arg("candidate"), py::arg("references"), py::arg("metric") = "SU4",
      py::arg("jackknife") = false,
      "Recall-oriented ROUGE-2 or ROUGE-SU4 of a candidate against references.");

  m.def(
      "evaluate",
      [](const std::string& candidates, const std::string& references, bool jackknife,
         bool bootstrap, int iterations, std::uint64_t seed) {
        transum::EvalOptions opt{jackknife, bootstrap, iterations, seed};
        return json_to_py(transum::evaluate_dirs(candidates, references, opt));
      },
      py::arg("candidates"), py::arg("references"), py::arg("jackknife") = false,
      py::arg("bootstrap") = false, py::arg("iterations") = 1000, py::arg("seed") = 0,
      "Score a directory of candidate summaries against per-corpus reference folders.");

  m.def(
      "bootstrap_ci",
      [](const std::vector<double>& scores, int iterations, std::uint64_t seed) {
        return transum::bootstrap_ci(scores, iterations, seed);
      },
      py::arg("scores"), py::arg("iterations") = 1000, py::arg("seed") = 0,
      "Percentile bootstrap 95% interval of the mean.");

  m.attr("__version__") = "0.1.0";
}
