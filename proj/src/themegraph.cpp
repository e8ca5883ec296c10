#include "transum/themegraph.hpp"

#include <algorithm>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "transum/errors.hpp"

namespace transum {

double SentenceHypergraph::total_edge_weight() const {
  double w = 0.0;
  for (double we : edge_weights) w += we;
  return w;
}

void SentenceHypergraph::rebuild_incidence() {
  incidence.assign(node_ids.size(), {});
  for (size_t e = 0; e < edges.size(); ++e)
    for (int i : edges[e].members)
      incidence[static_cast<size_t>(i)].push_back(static_cast<int>(e));
}

std::string SentenceHypergraph::to_json() const {
  nlohmann::json j;
  j["nodes"] = nlohmann::json::array();
  for (size_t i = 0; i < node_ids.size(); ++i)
    j["nodes"].push_back({{"id", node_ids[i]}, {"phi", node_weights[i]}});
  j["edges"] = nlohmann::json::array();
  for (size_t e = 0; e < edges.size(); ++e) {
    nlohmann::json sentences = nlohmann::json::array();
    for (int i : edges[e].members) sentences.push_back(node_ids[static_cast<size_t>(i)]);
    j["edges"].push_back(
        {{"topic_id", edges[e].topic_id}, {"sentences", sentences}, {"w", edge_weights[e]}});
  }
  return j.dump(2);
}

SentenceHypergraph SentenceHypergraph::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("hypergraph JSON parse failure: ") + e.what());
  }
  if (!j.contains("nodes") || !j.contains("edges"))
    throw input_error("hypergraph JSON needs 'nodes' and 'edges' arrays");

  SentenceHypergraph h;
  std::vector<std::pair<int, double>> nodes;
  for (const auto& n : j["nodes"]) {
    int id = n.at("id").get<int>();
    double phi = n.at("phi").get<double>();
    if (phi <= 0.0) throw input_error("node weight must be positive (node " + std::to_string(id) + ")");
    nodes.emplace_back(id, phi);
  }
  std::sort(nodes.begin(), nodes.end());
  std::unordered_map<int, int> index_of_id;
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (!index_of_id.emplace(nodes[i].first, static_cast<int>(i)).second)
      throw input_error("duplicate node id " + std::to_string(nodes[i].first));
    h.node_ids.push_back(nodes[i].first);
    h.node_weights.push_back(nodes[i].second);
  }
  for (const auto& e : j["edges"]) {
    Theme theme;
    theme.topic_id = e.value("topic_id", static_cast<int>(h.edges.size()) + 1);
    for (const auto& sid : e.at("sentences")) {
      auto it = index_of_id.find(sid.get<int>());
      if (it == index_of_id.end())
        throw input_error("edge references unknown node id " + sid.dump());
      theme.members.push_back(it->second);
    }
    std::sort(theme.members.begin(), theme.members.end());
    theme.members.erase(std::unique(theme.members.begin(), theme.members.end()),
                        theme.members.end());
    if (theme.members.empty())
      throw input_error("hyperedges must contain at least one sentence");
    double w = e.at("w").get<double>();
    if (w < 0.0) throw input_error("edge weight must be nonnegative");
    h.edges.push_back(std::move(theme));
    h.edge_weights.push_back(w);
  }
  h.rebuild_incidence();
  return h;
}

double topic_score(const Sentence& sentence, int topic, const Vocabulary& vocab,
                   const TopicAssignment& assignment) {
  double score = 0.0;
  for (const std::string& tok : sentence.tokens) {
    int idx = vocab.index_of(tok);
    if (idx >= 0 && assignment.labels[static_cast<size_t>(idx)] == topic)
      score += vocab.isf(idx);  // one isf per occurrence accumulates tf*isf
  }
  return score;
}

std::vector<std::vector<double>> topic_score_matrix(const std::vector<Sentence>& sentences,
                                                    const Vocabulary& vocab,
                                                    const TopicAssignment& assignment) {
  std::vector<std::vector<double>> sigma(sentences.size(),
                                         std::vector<double>(static_cast<size_t>(assignment.topic_count), 0.0));
  for (size_t i = 0; i < sentences.size(); ++i) {
    for (const std::string& tok : sentences[i].tokens) {
      int idx = vocab.index_of(tok);
      if (idx < 0) continue;
      int label = assignment.labels[static_cast<size_t>(idx)];
      if (label != kNoise) sigma[i][static_cast<size_t>(label) - 1] += vocab.isf(idx);
    }
  }
  return sigma;
}

std::vector<Theme> tag_sentences(const std::vector<std::vector<double>>& sigma, double delta) {
  if (sigma.empty()) return {};
  const size_t topics = sigma.front().size();
  if (topics == 0) throw input_error("degenerate corpus: no topics to tag sentences with");

  std::vector<Theme> themes(topics);
  for (size_t l = 0; l < topics; ++l) themes[l].topic_id = static_cast<int>(l) + 1;

  for (size_t i = 0; i < sigma.size(); ++i) {
    bool tagged = false;
    for (size_t l = 0; l < topics; ++l) {
      if (sigma[i][l] >= delta) {
        themes[l].members.push_back(static_cast<int>(i));
        tagged = true;
      }
    }
    if (!tagged) {
      // argmax fallback keeps every sentence attached to one topic
      size_t best = 0;
      for (size_t l = 1; l < topics; ++l)
        if (sigma[i][l] > sigma[i][best]) best = l;
      themes[best].members.push_back(static_cast<int>(i));
    }
  }
  themes.erase(std::remove_if(themes.begin(), themes.end(),
                              [](const Theme& t) { return t.members.empty(); }),
               themes.end());
  return themes;
}

SentenceHypergraph build_hypergraph(const std::vector<Sentence>& sentences,
                                    const std::vector<Theme>& themes, const Vocabulary& vocab,
                                    const std::vector<std::string>& query_tokens, double lambda) {
  if (themes.empty()) throw input_error("cannot build a hypergraph without themes");
  if (lambda < 0.0 || lambda > 1.0) throw input_error("lambda must lie in [0,1]");

  SentenceHypergraph h;
  h.node_ids.reserve(sentences.size());
  h.node_weights.reserve(sentences.size());
  std::vector<std::string> corpus_tokens;
  for (const Sentence& s : sentences) {
    h.node_ids.push_back(s.sent_id);
    h.node_weights.push_back(static_cast<double>(s.length_words));
    corpus_tokens.insert(corpus_tokens.end(), s.tokens.begin(), s.tokens.end());
  }
  TfisfVector corpus_vec = TfisfVector::from_tokens(corpus_tokens, vocab);
  TfisfVector query_vec = TfisfVector::from_tokens(query_tokens, vocab);

  h.edges = themes;
  h.edge_weights.reserve(themes.size());
  for (const Theme& theme : themes) {
    std::vector<std::string> theme_tokens;  // token multisets add across sentences
    for (int i : theme.members) {
      const auto& toks = sentences[static_cast<size_t>(i)].tokens;
      theme_tokens.insert(theme_tokens.end(), toks.begin(), toks.end());
    }
    TfisfVector theme_vec = TfisfVector::from_tokens(theme_tokens, vocab);
    double w = (1.0 - lambda) * cosine_similarity(theme_vec, corpus_vec) +
               lambda * cosine_similarity(theme_vec, query_vec);
    h.edge_weights.push_back(w > 0.0 ? w : kEdgeWeightFloor);
  }
  h.rebuild_incidence();
  return h;
}

}  // namespace transum
