#pragma once

#include <optional>
#include <vector>

#include "transum/textprep.hpp"

namespace transum {

constexpr int kNoise = -1;

/// ln(N_s / N_s^{uv}); empty when the terms never co-occur.
std::optional<double> joint_isf(int u, int v, const Vocabulary& vocab);

/// Google-distance style dissimilarity, clamped to [0,1]; empty when the
/// terms never co-occur; 0 when both terms appear in every sentence.
std::optional<double> semantic_dissimilarity(int u, int v, const Vocabulary& vocab);

/// Symmetric term-by-term dissimilarities. Pairs that never co-occur are
/// stored as +infinity, which keeps them outside any DBSCAN radius.
class DissimilarityMatrix {
 public:
  explicit DissimilarityMatrix(int n);

  static DissimilarityMatrix build(const Vocabulary& vocab);

  int size() const { return n_; }
  double operator()(int u, int v) const { return d_[index(u, v)]; }
  bool comparable(int u, int v) const;
  void set(int u, int v, double value);

 private:
  size_t index(int u, int v) const {
    return static_cast<size_t>(u) * static_cast<size_t>(n_) + static_cast<size_t>(v);
  }
  int n_;
  std::vector<double> d_;
};

struct DbscanResult {
  std::vector<int> labels;  // kNoise or 1..cluster_count
  int cluster_count = 0;
};

/// Density clustering over the dissimilarity relation. A core point has at
/// least min_pts neighbors within epsilon, itself included. Points are
/// scanned in ascending index order; border points keep the first cluster
/// that reaches them.
DbscanResult dbscan(const DissimilarityMatrix& d, double epsilon, int min_pts);

struct SemcotParams {
  double epsilon0 = 0.9;
  double beta = 0.95;
  int min_pts = 3;               // m
  double max_cluster_frac = 0.1; // M = ceil(frac * N_t), never below min_pts
  int max_cluster_size = 0;      // absolute override for M when > 0
  double mu = 1.98;              // isf threshold for rescuing noisy terms
  int max_iterations = 200;

  int resolve_max_cluster_size(int term_count) const;
};

struct TopicAssignment {
  int topic_count = 0;         // K, including rescued singletons
  int clustered_count = 0;     // topics produced by the final DBSCAN pass
  std::vector<int> labels;     // per term: kNoise or 1..topic_count

  std::vector<std::vector<int>> members() const;  // topic id-1 -> term indices
};

/// Repeats DBSCAN with epsilon shrinking by beta until the largest cluster
/// is smaller than M, then promotes noisy terms with isf >= mu to singleton
/// topics. Throws internal_error when max_iterations passes do not settle.
TopicAssignment semcot(const DissimilarityMatrix& d, const Vocabulary& vocab,
                       const SemcotParams& params);

/// Debug dump: {"1": ["term", ...], ...}
std::string topics_to_json(const TopicAssignment& assignment, const Vocabulary& vocab);

}  // namespace transum
