#pragma once

#include <span>
#include <vector>

#include "transum/themegraph.hpp"

namespace transum {

/// Absolute tolerance for coverage comparisons.
constexpr double kCoverageTol = 1e-9;

struct SelectionStep {
  int node_id = 0;     // external id
  double ratio = 0.0;  // marginal gain / phi at selection time
  double gain = 0.0;   // marginal covered weight
};

struct Summary {
  std::vector<int> sentence_ids;  // external ids in corpus order
  double total_length = 0.0;
  double covered_weight = 0.0;
  double coverage_fraction = 0.0;  // covered_weight / W (1 when there are no edges)
  std::vector<SelectionStep> trace;
};

/// Total weight of hyperedges incident to the given node indices, each
/// counted once.
double coverage(std::span<const int> node_indices, const SentenceHypergraph& h);

/// Budgeted greedy: repeatedly pops the node with the best marginal
/// weight-to-length ratio, keeping it only if it fits the budget, then
/// returns the better of the greedy set and the best feasible singleton.
Summary tl_transum(const SentenceHypergraph& h, double target_length);

/// Coverage-target greedy: grows the set by best marginal ratio until the
/// covered weight reaches gamma * W.
Summary tc_transum(const SentenceHypergraph& h, double gamma);

struct BruteForceResult {
  double value = 0.0;             // optimal coverage (budgeted) or cost (soft)
  std::vector<int> sentence_ids;  // one optimal set, external ids
};

/// Exact optimum of the budgeted problem by subset enumeration; guards at
/// 20 nodes.
BruteForceResult brute_force_budgeted(const SentenceHypergraph& h, double target_length);

/// Exact optimum of the soft-transversal problem by subset enumeration;
/// guards at 20 nodes.
BruteForceResult brute_force_soft(const SentenceHypergraph& h, double gamma);

}  // namespace transum
