#pragma once

#include <string>
#include <vector>

#include "transum/textprep.hpp"
#include "transum/topics.hpp"

namespace transum {

/// A theme is the set of sentences tagged with one topic; retained themes
/// become hyperedges. `members` holds 0-based node indices.
struct Theme {
  int topic_id = 0;
  std::vector<int> members;
};

struct SentenceHypergraph {
  std::vector<int> node_ids;                // external ids, ascending
  std::vector<double> node_weights;         // phi, positive
  std::vector<Theme> edges;
  std::vector<double> edge_weights;         // w, positive
  std::vector<std::vector<int>> incidence;  // node index -> edge indices

  int node_count() const { return static_cast<int>(node_ids.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  double total_edge_weight() const;  // W

  void rebuild_incidence();

  std::string to_json() const;
  static SentenceHypergraph from_json(const std::string& text);
};

/// sigma_{il} = sum of tfisf(i,t) over terms t labeled with topic l.
double topic_score(const Sentence& sentence, int topic, const Vocabulary& vocab,
                   const TopicAssignment& assignment);

/// Full score matrix, sigma[i][l-1] for sentence i and topic l.
std::vector<std::vector<double>> topic_score_matrix(const std::vector<Sentence>& sentences,
                                                    const Vocabulary& vocab,
                                                    const TopicAssignment& assignment);

/// Themes by thresholding sigma at delta. A sentence left untagged falls
/// back to its argmax topic (lowest topic id on ties); empty themes are
/// dropped. Throws input_error when there are no topics at all.
std::vector<Theme> tag_sentences(const std::vector<std::vector<double>>& sigma, double delta);

/// Weight floor for themes whose blended similarity is exactly zero; keeps
/// every theme coverable without materially moving any score.
constexpr double kEdgeWeightFloor = 1e-9;

/// Node weights are sentence lengths; each theme's weight blends its
/// centrality in the corpus with its query relevance:
/// w = (1-lambda)*sim(theme, corpus) + lambda*sim(theme, query).
SentenceHypergraph build_hypergraph(const std::vector<Sentence>& sentences,
                                    const std::vector<Theme>& themes, const Vocabulary& vocab,
                                    const std::vector<std::string>& query_tokens, double lambda);

}  // namespace transum
