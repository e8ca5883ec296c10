#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "transum/textprep.hpp"
#include "transum/themegraph.hpp"

namespace transum::testing {

inline int rnd_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// weight in (0,1]; plain modulo keeps draws identical across platforms
inline double rnd_weight(std::mt19937_64& rng) {
  return static_cast<double>(rng() % 1000000 + 1) / 1e6;
}

/// Random weighted hypergraph. Node weights are small integers so budget
/// arithmetic stays exact; edge weights lie in (0,1].
inline SentenceHypergraph random_hypergraph(std::mt19937_64& rng, int max_nodes, int max_edges) {
  const int n = rnd_int(rng, 1, max_nodes);
  const int m = rnd_int(rng, 1, max_edges);
  SentenceHypergraph h;
  for (int i = 0; i < n; ++i) {
    h.node_ids.push_back(i + 1);
    h.node_weights.push_back(static_cast<double>(rnd_int(rng, 1, 10)));
  }
  for (int e = 0; e < m; ++e) {
    Theme theme;
    theme.topic_id = e + 1;
    for (int i = 0; i < n; ++i)
      if (rng() % 100 < 35) theme.members.push_back(i);
    if (theme.members.empty()) theme.members.push_back(rnd_int(rng, 0, n - 1));
    h.edges.push_back(std::move(theme));
    h.edge_weights.push_back(rnd_weight(rng));
  }
  h.rebuild_incidence();
  return h;
}

inline Sentence make_sentence(int sent_id, std::vector<std::string> tokens, int length_words = 0) {
  Sentence s;
  s.sent_id = sent_id;
  s.doc_id = "doc";
  s.position = sent_id;
  s.tokens = std::move(tokens);
  s.length_words = length_words > 0 ? length_words : std::max<int>(1, static_cast<int>(s.tokens.size()));
  return s;
}

/// Random token-list corpus with a Zipf-flavored term distribution; the
/// resulting vocabulary has at most `term_pool` terms.
inline std::vector<Sentence> random_token_corpus(std::mt19937_64& rng, int term_pool,
                                                 int sentence_count) {
  std::vector<Sentence> sentences;
  for (int i = 0; i < sentence_count; ++i) {
    int len = rnd_int(rng, 4, 12);
    std::vector<std::string> tokens;
    for (int k = 0; k < len; ++k) {
      // squared draw biases toward low term ids
      int a = rnd_int(rng, 0, term_pool - 1);
      int b = rnd_int(rng, 0, term_pool - 1);
      tokens.push_back("t" + std::to_string(std::min(a, b)));
    }
    sentences.push_back(make_sentence(i + 1, std::move(tokens)));
  }
  return sentences;
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("transum_test_" + tag + "_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path file(const std::string& rel, const std::string& content) const {
    std::filesystem::path p = path_ / rel;
    std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
  }

 private:
  std::filesystem::path path_;
};

}  // namespace transum::testing
