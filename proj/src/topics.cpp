#include "transum/topics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

#include "transum/errors.hpp"

namespace transum {

namespace {
constexpr double kIncomparable = std::numeric_limits<double>::infinity();
}

std::optional<double> joint_isf(int u, int v, const Vocabulary& vocab) {
  if (u < 0 || v < 0 || u >= vocab.size() || v >= vocab.size())
    throw input_error("joint_isf: term index out of range");
  int nuv = vocab.ns_pair(u, v);
  if (nuv == 0) return std::nullopt;
  return std::log(static_cast<double>(vocab.sentence_count()) / static_cast<double>(nuv));
}

std::optional<double> semantic_dissimilarity(int u, int v, const Vocabulary& vocab) {
  auto iuv = joint_isf(u, v, vocab);
  if (!iuv) return std::nullopt;
  double iu = vocab.isf(u);
  double iv = vocab.isf(v);
  double hi = std::max(iu, iv);
  if (hi <= 0.0) return 0.0;  // both terms in every sentence: always co-occur
  double d = (*iuv - std::min(iu, iv)) / hi;
  return std::clamp(d, 0.0, 1.0);
}

DissimilarityMatrix::DissimilarityMatrix(int n) : n_(n), d_(static_cast<size_t>(n) * n, kIncomparable) {
  for (int i = 0; i < n; ++i) d_[index(i, i)] = 0.0;
}

bool DissimilarityMatrix::comparable(int u, int v) const {
  return d_[index(u, v)] != kIncomparable;
}

void DissimilarityMatrix::set(int u, int v, double value) {
  d_[index(u, v)] = value;
  d_[index(v, u)] = value;
}

DissimilarityMatrix DissimilarityMatrix::build(const Vocabulary& vocab) {
  DissimilarityMatrix m(vocab.size());
  vocab.for_each_pair([&](int u, int v, int /*count*/) {
    m.set(u, v, *semantic_dissimilarity(u, v, vocab));
  });
  return m;
}

DbscanResult dbscan(const DissimilarityMatrix& d, double epsilon, int min_pts) {
  const int n = d.size();
  DbscanResult res;
  res.labels.assign(static_cast<size_t>(n), kNoise);

  auto neighborhood = [&](int p) {
    std::vector<int> nb;
    for (int q = 0; q < n; ++q)
      if (d(p, q) <= epsilon) nb.push_back(q);  // includes p itself (d=0)
    return nb;
  };

  std::vector<bool> visited(static_cast<size_t>(n), false);
  for (int p = 0; p < n; ++p) {
    if (visited[static_cast<size_t>(p)]) continue;
    visited[static_cast<size_t>(p)] = true;
    std::vector<int> seeds = neighborhood(p);
    if (static_cast<int>(seeds.size()) < min_pts) continue;  // stays noise unless reached later
    int cluster = ++res.cluster_count;
    res.labels[static_cast<size_t>(p)] = cluster;
    std::deque<int> queue(seeds.begin(), seeds.end());
    while (!queue.empty()) {
      int q = queue.front();
      queue.pop_front();
      if (res.labels[static_cast<size_t>(q)] == kNoise)
        res.labels[static_cast<size_t>(q)] = cluster;  // border point
      if (visited[static_cast<size_t>(q)]) continue;
      visited[static_cast<size_t>(q)] = true;
      res.labels[static_cast<size_t>(q)] = cluster;
      std::vector<int> qn = neighborhood(q);
      if (static_cast<int>(qn.size()) >= min_pts)
        queue.insert(queue.end(), qn.begin(), qn.end());
    }
  }
  return res;
}

int SemcotParams::resolve_max_cluster_size(int term_count) const {
  if (max_cluster_size > 0) return max_cluster_size;
  int m = static_cast<int>(std::ceil(max_cluster_frac * term_count));
  return std::max(m, min_pts);
}

std::vector<std::vector<int>> TopicAssignment::members() const {
  std::vector<std::vector<int>> out(static_cast<size_t>(topic_count));
  for (size_t t = 0; t < labels.size(); ++t)
    if (labels[t] != kNoise) out[static_cast<size_t>(labels[t]) - 1].push_back(static_cast<int>(t));
  return out;
}

TopicAssignment semcot(const DissimilarityMatrix& d, const Vocabulary& vocab,
                       const SemcotParams& params) {
  if (params.beta <= 0.0 || params.beta >= 1.0)
    throw input_error("semcot: beta must lie in (0,1)");
  if (params.epsilon0 <= 0.0) throw input_error("semcot: epsilon0 must be positive");
  if (params.min_pts < 1) throw input_error("semcot: min_pts must be >= 1");

  const int max_size = params.resolve_max_cluster_size(d.size());
  double epsilon = params.epsilon0;
  DbscanResult clusters;
  int iterations = 0;
  while (true) {
    if (++iterations > params.max_iterations)
      throw internal_error("semcot did not settle within " +
                           std::to_string(params.max_iterations) + " DBSCAN passes");
    clusters = dbscan(d, epsilon, params.min_pts);
    std::vector<int> sizes(static_cast<size_t>(clusters.cluster_count), 0);
    for (int label : clusters.labels)
      if (label != kNoise) ++sizes[static_cast<size_t>(label) - 1];
    int largest = sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
    if (largest < max_size) break;
    epsilon *= params.beta;
  }

  TopicAssignment out;
  out.labels = clusters.labels;
  out.clustered_count = clusters.cluster_count;
  out.topic_count = clusters.cluster_count;
  for (size_t t = 0; t < out.labels.size(); ++t) {
    if (out.labels[t] == kNoise && vocab.isf(static_cast<int>(t)) >= params.mu)
      out.labels[t] = ++out.topic_count;  // rescued singleton topic
  }
  return out;
}

std::string topics_to_json(const TopicAssignment& assignment, const Vocabulary& vocab) {
  std::ostringstream os;
  os << "{";
  auto groups = assignment.members();
  for (size_t k = 0; k < groups.size(); ++k) {
    if (k > 0) os << ",";
    os << "\"" << (k + 1) << "\":[";
    for (size_t i = 0; i < groups[k].size(); ++i) {
      if (i > 0) os << ",";
      os << "\"" << vocab.term(groups[k][i]) << "\"";
    }
    os << "]";
  }
  os << "}";
  return os.str();
}

}  // namespace transum
