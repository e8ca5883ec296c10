#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "transum/errors.hpp"
#include "transum/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct Options {
  transum::Config config;
  std::string mode = "length";
  std::string corpus;
  std::string query;
  bool query_set = false;
  std::string output;
  std::string report;
  std::string candidates;
  std::string references;
  std::string parameter;
  std::vector<double> grid;
  std::string hypergraph;
  bool jackknife = false;
  bool bootstrap = false;
  int iterations = 1000;
};

void add_config_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--mode", opt.mode, "Selection mode: length or coverage")
      ->check(CLI::IsMember({"length", "coverage"}));
  cmd->add_option("--target-length", opt.config.target_length, "Summary word budget (length mode)");
  cmd->add_option("--gamma", opt.config.gamma, "Coverage target in [0,1] (coverage mode)");
  cmd->add_option("--lambda", opt.config.lambda, "Query weight in theme weights");
  cmd->add_option("--delta", opt.config.delta, "Topic tagging threshold");
  cmd->add_option("--mu", opt.config.mu, "isf threshold rescuing noisy terms");
  cmd->add_option("--epsilon0", opt.config.epsilon0, "Initial clustering radius");
  cmd->add_option("--beta", opt.config.beta, "Radius shrink factor in (0,1)");
  cmd->add_option("--min-terms", opt.config.min_terms, "Minimum DBSCAN neighborhood size");
  cmd->add_option("--max-cluster-frac", opt.config.max_cluster_frac,
                  "Topic size cap as a fraction of the vocabulary");
  cmd->add_option("--stoplist", opt.config.stoplist_path, "Stopword list file");
  cmd->add_option("--seed", opt.config.seed, "Seed for bootstrap resampling");
  cmd->set_config("--config", "", "Flat key=value configuration file; flags win");
}

void write_or_print(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content << std::endl;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw transum::input_error("cannot write file: " + path);
  out << content;
}

std::string read_stdin() {
  std::ostringstream os;
  os << std::cin.rdbuf();
  return os.str();
}

int run(int argc, char** argv) {
  CLI::App app{"Query-oriented extractive summarizer built on weighted hypergraph transversals"};
  app.require_subcommand(1);
  Options opt;

  auto* cmd_summarize = app.add_subcommand("summarize", "Summarize a corpus");
  cmd_summarize->add_option("corpus", opt.corpus, "Corpus directory or JSON manifest")->required();
  cmd_summarize->add_option("--query", opt.query, "Query text (default: corpus query.txt if any)");
  add_config_flags(cmd_summarize, opt);
  cmd_summarize->add_option("--output", opt.output, "Write the summary text here");
  cmd_summarize->add_option("--report", opt.report, "Write the full JSON report here");

  auto* cmd_dump = app.add_subcommand("dump-hypergraph", "Emit the sentence hypergraph as JSON");
  cmd_dump->add_option("corpus", opt.corpus, "Corpus directory or JSON manifest")->required();
  cmd_dump->add_option("--query", opt.query, "Query text");
  add_config_flags(cmd_dump, opt);
  cmd_dump->add_option("--output", opt.output, "Write the JSON here (default: stdout)");

  auto* cmd_solve = app.add_subcommand("solve", "Run a transversal on a hypergraph JSON file");
  cmd_solve->add_option("hypergraph", opt.hypergraph, "Hypergraph JSON file, or - for stdin")
      ->required();
  add_config_flags(cmd_solve, opt);
  cmd_solve->add_option("--output", opt.output, "Write the result JSON here (default: stdout)");

  auto* cmd_eval = app.add_subcommand("evaluate", "Score candidate summaries against references");
  cmd_eval->add_option("--candidates", opt.candidates, "Directory of <id>.txt candidates")
      ->required();
  cmd_eval->add_option("--references", opt.references, "Directory of <id>/ reference folders")
      ->required();
  cmd_eval->add_flag("--jackknife", opt.jackknife, "Leave-one-reference-out averaging");
  cmd_eval->add_flag("--bootstrap", opt.bootstrap, "95% bootstrap interval of the mean");
  cmd_eval->add_option("--iterations", opt.iterations, "Bootstrap iterations");
  cmd_eval->add_option("--seed", opt.config.seed, "Bootstrap seed");
  cmd_eval->add_option("--output", opt.output, "Write the scores JSON here (default: stdout)");

  auto* cmd_sweep = app.add_subcommand("sweep", "Evaluate a parameter grid and emit CSV");
  cmd_sweep->add_option("corpus-set", opt.corpus, "Directory with one corpus subdirectory each")
      ->required();
  cmd_sweep->add_option("--references", opt.references, "Directory of <id>/ reference folders")
      ->required();
  cmd_sweep->add_option("--parameter", opt.parameter, "Swept parameter")
      ->required()
      ->check(CLI::IsMember({"delta", "lambda", "gamma"}));
  cmd_sweep->add_option("--grid", opt.grid, "Grid values")->required()->delimiter(',');
  cmd_sweep->add_flag("--jackknife", opt.jackknife, "Leave-one-reference-out averaging");
  add_config_flags(cmd_sweep, opt);
  cmd_sweep->add_option("--output", opt.output, "Write the CSV here (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;  // help/version exit clean
  }
  // --query given-but-empty differs from not given (query.txt fallback)
  opt.query_set = cmd_summarize->count("--query") > 0;
  opt.config.mode = transum::parse_mode(opt.mode);

  if (cmd_summarize->parsed()) {
    std::optional<std::string> query;
    if (opt.query_set) query = opt.query;
    transum::RunReport report = transum::summarize_path(opt.corpus, query, opt.config);
    for (const std::string& w : report.warnings) std::cerr << "warning: " << w << "\n";
    if (!opt.report.empty()) write_or_print(opt.report, report.to_json().dump(2));
    write_or_print(opt.output, report.summary_text);
  } else if (cmd_dump->parsed()) {
    std::vector<transum::Document> docs = transum::load_corpus(opt.corpus);
    std::string query = opt.query.empty()
                            ? transum::corpus_query_file(opt.corpus).value_or("")
                            : opt.query;
    transum::PipelineResult pipeline = transum::run_pipeline(docs, query, opt.config);
    for (const std::string& w : pipeline.warnings) std::cerr << "warning: " << w << "\n";
    write_or_print(opt.output, pipeline.hypergraph.to_json());
  } else if (cmd_solve->parsed()) {
    std::string text;
    if (opt.hypergraph == "-") {
      text = read_stdin();
    } else {
      std::ifstream in(opt.hypergraph, std::ios::binary);
      if (!in) throw transum::input_error("cannot read hypergraph file: " + opt.hypergraph);
      std::ostringstream os;
      os << in.rdbuf();
      text = os.str();
    }
    transum::SentenceHypergraph h = transum::SentenceHypergraph::from_json(text);
    transum::Summary summary = opt.config.mode == transum::SummaryMode::kLength
                                   ? transum::tl_transum(h, opt.config.target_length)
                                   : transum::tc_transum(h, opt.config.gamma);
    nlohmann::json j;
    j["sentence_ids"] = summary.sentence_ids;
    j["total_length"] = summary.total_length;
    j["covered_weight"] = summary.covered_weight;
    j["coverage_fraction"] = summary.coverage_fraction;
    j["trace"] = nlohmann::json::array();
    for (const auto& step : summary.trace)
      j["trace"].push_back({{"sent_id", step.node_id}, {"ratio", step.ratio}, {"gain", step.gain}});
    write_or_print(opt.output, j.dump(2));
  } else if (cmd_eval->parsed()) {
    transum::EvalOptions eval{opt.jackknife, opt.bootstrap, opt.iterations, opt.config.seed};
    write_or_print(opt.output,
                   transum::evaluate_dirs(opt.candidates, opt.references, eval).dump(2));
  } else if (cmd_sweep->parsed()) {
    transum::EvalOptions eval{opt.jackknife, false, opt.iterations, opt.config.seed};
    auto rows = transum::sweep(opt.corpus, opt.references, opt.parameter, opt.grid, opt.config, eval);
    write_or_print(opt.output, transum::sweep_to_csv(rows));
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const transum::input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const transum::internal_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
