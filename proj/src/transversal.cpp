#include "transum/transversal.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>

#include "transum/errors.hpp"

namespace transum {
namespace {

double covered_sum(const SentenceHypergraph& h, const std::vector<char>& covered) {
  double w = 0.0;
  for (size_t e = 0; e < covered.size(); ++e)
    if (covered[e]) w += h.edge_weights[e];
  return w;
}

double marginal_gain(const SentenceHypergraph& h, const std::vector<char>& covered, int node) {
  double g = 0.0;
  for (int e : h.incidence[static_cast<size_t>(node)])
    if (!covered[static_cast<size_t>(e)]) g += h.edge_weights[static_cast<size_t>(e)];
  return g;
}

void mark_covered(const SentenceHypergraph& h, std::vector<char>& covered, int node) {
  for (int e : h.incidence[static_cast<size_t>(node)]) covered[static_cast<size_t>(e)] = 1;
}

Summary finalize(const SentenceHypergraph& h, std::vector<int> selected,
                 std::vector<SelectionStep> trace) {
  std::sort(selected.begin(), selected.end());  // node index order == corpus order
  Summary s;
  std::vector<char> covered(h.edges.size(), 0);
  for (int i : selected) {
    s.sentence_ids.push_back(h.node_ids[static_cast<size_t>(i)]);
    s.total_length += h.node_weights[static_cast<size_t>(i)];
    mark_covered(h, covered, i);
  }
  s.covered_weight = covered_sum(h, covered);
  double total = h.total_edge_weight();
  s.coverage_fraction = total > 0.0 ? s.covered_weight / total : 1.0;
  s.trace = std::move(trace);
  return s;
}

}  // namespace

double coverage(std::span<const int> node_indices, const SentenceHypergraph& h) {
  std::vector<char> covered(h.edges.size(), 0);
  for (int i : node_indices) {
    if (i < 0 || i >= h.node_count()) throw input_error("coverage: node index out of range");
    mark_covered(h, covered, i);
  }
  return covered_sum(h, covered);
}

Summary tl_transum(const SentenceHypergraph& h, double target_length) {
  const int n = h.node_count();
  std::vector<char> covered(h.edges.size(), 0);
  std::vector<char> in_queue(static_cast<size_t>(n), 1);
  std::vector<int> greedy;
  std::vector<SelectionStep> trace;
  double used = 0.0;
  int remaining = n;

  while (remaining > 0) {
    int best = -1;
    double best_ratio = -1.0;
    double best_gain = 0.0;
    for (int i = 0; i < n; ++i) {
      if (!in_queue[static_cast<size_t>(i)]) continue;
      double gain = marginal_gain(h, covered, i);
      double ratio = gain / h.node_weights[static_cast<size_t>(i)];
      if (ratio > best_ratio) {  // strict: ties keep the lowest id
        best = i;
        best_ratio = ratio;
        best_gain = gain;
      }
    }
    in_queue[static_cast<size_t>(best)] = 0;
    --remaining;
    if (used + h.node_weights[static_cast<size_t>(best)] <= target_length) {
      greedy.push_back(best);
      used += h.node_weights[static_cast<size_t>(best)];
      trace.push_back({h.node_ids[static_cast<size_t>(best)], best_ratio, best_gain});
      mark_covered(h, covered, best);
    }
  }

  // The approximation guarantee needs the greedy set compared against the
  // best single sentence that fits the budget on its own.
  double greedy_cov = covered_sum(h, covered);
  int best_single = -1;
  double best_single_cov = -1.0;
  for (int i = 0; i < n; ++i) {
    if (h.node_weights[static_cast<size_t>(i)] > target_length) continue;
    std::vector<char> one(h.edges.size(), 0);
    mark_covered(h, one, i);
    double cov = covered_sum(h, one);
    if (cov > best_single_cov) {
      best_single = i;
      best_single_cov = cov;
    }
  }
  if (best_single >= 0 && best_single_cov > greedy_cov) {
    double phi = h.node_weights[static_cast<size_t>(best_single)];
    return finalize(h, {best_single},
                    {{h.node_ids[static_cast<size_t>(best_single)], best_single_cov / phi,
                      best_single_cov}});
  }
  return finalize(h, std::move(greedy), std::move(trace));
}

Summary tc_transum(const SentenceHypergraph& h, double gamma) {
  if (gamma < 0.0 || gamma > 1.0) throw input_error("gamma must lie in [0,1]");
  const int n = h.node_count();
  const double target = gamma * h.total_edge_weight();
  std::vector<char> covered(h.edges.size(), 0);
  std::vector<char> in_queue(static_cast<size_t>(n), 1);
  std::vector<int> selected;
  std::vector<SelectionStep> trace;
  double reached = 0.0;
  int remaining = n;

  while (remaining > 0 && reached < target) {
    int best = -1;
    double best_ratio = -1.0;
    double best_gain = 0.0;
    for (int i = 0; i < n; ++i) {
      if (!in_queue[static_cast<size_t>(i)]) continue;
      double gain = marginal_gain(h, covered, i);
      double ratio = gain / h.node_weights[static_cast<size_t>(i)];
      if (ratio > best_ratio) {
        best = i;
        best_ratio = ratio;
        best_gain = gain;
      }
    }
    if (best_gain <= 0.0) break;  // target unreachable via positive gains
    in_queue[static_cast<size_t>(best)] = 0;
    --remaining;
    selected.push_back(best);
    trace.push_back({h.node_ids[static_cast<size_t>(best)], best_ratio, best_gain});
    mark_covered(h, covered, best);
    reached = covered_sum(h, covered);
  }
  return finalize(h, std::move(selected), std::move(trace));
}

namespace {

constexpr int kBruteForceNodeLimit = 20;

// Per-node incidence as fixed-width bitset blocks so subset enumeration
// only ORs words.
struct EdgeMasks {
  int blocks = 0;
  std::vector<std::uint64_t> per_node;  // node * blocks .. +blocks

  explicit EdgeMasks(const SentenceHypergraph& h) {
    blocks = static_cast<int>((h.edges.size() + 63) / 64);
    per_node.assign(static_cast<size_t>(h.node_count()) * blocks, 0);
    for (int i = 0; i < h.node_count(); ++i)
      for (int e : h.incidence[static_cast<size_t>(i)])
        per_node[static_cast<size_t>(i) * blocks + e / 64] |= (1ULL << (e % 64));
  }
};

}  // namespace

BruteForceResult brute_force_budgeted(const SentenceHypergraph& h, double target_length) {
  const int n = h.node_count();
  if (n > kBruteForceNodeLimit)
    throw input_error("brute_force_budgeted: instance exceeds the 20-node guard");
  EdgeMasks masks(h);
  std::vector<std::uint64_t> acc(static_cast<size_t>(std::max(masks.blocks, 1)), 0);

  double best_cov = 0.0;
  std::uint32_t best_mask = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double cost = 0.0;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) cost += h.node_weights[static_cast<size_t>(i)];
    if (cost > target_length) continue;
    std::fill(acc.begin(), acc.end(), 0);
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i))
        for (int b = 0; b < masks.blocks; ++b)
          acc[static_cast<size_t>(b)] |= masks.per_node[static_cast<size_t>(i) * masks.blocks + b];
    double cov = 0.0;
    for (size_t e = 0; e < h.edges.size(); ++e)
      if (acc[e / 64] & (1ULL << (e % 64))) cov += h.edge_weights[e];
    if (cov > best_cov + 1e-12) {
      best_cov = cov;
      best_mask = mask;
    }
  }
  BruteForceResult res;
  res.value = best_cov;
  for (int i = 0; i < n; ++i)
    if (best_mask & (1u << i)) res.sentence_ids.push_back(h.node_ids[static_cast<size_t>(i)]);
  return res;
}

BruteForceResult brute_force_soft(const SentenceHypergraph& h, double gamma) {
  if (gamma < 0.0 || gamma > 1.0) throw input_error("gamma must lie in [0,1]");
  const int n = h.node_count();
  if (n > kBruteForceNodeLimit)
    throw input_error("brute_force_soft: instance exceeds the 20-node guard");
  const double target = gamma * h.total_edge_weight();
  EdgeMasks masks(h);
  std::vector<std::uint64_t> acc(static_cast<size_t>(std::max(masks.blocks, 1)), 0);

  double best_cost = std::numeric_limits<double>::infinity();
  std::uint32_t best_mask = 0;
  bool found = false;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::fill(acc.begin(), acc.end(), 0);
    double cost = 0.0;
    for (int i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      cost += h.node_weights[static_cast<size_t>(i)];
      for (int b = 0; b < masks.blocks; ++b)
        acc[static_cast<size_t>(b)] |= masks.per_node[static_cast<size_t>(i) * masks.blocks + b];
    }
    double cov = 0.0;
    for (size_t e = 0; e < h.edges.size(); ++e)
      if (acc[e / 64] & (1ULL << (e % 64))) cov += h.edge_weights[e];
    if (cov >= target - kCoverageTol && (!found || cost < best_cost - 1e-12)) {
      best_cost = cost;
      best_mask = mask;
      found = true;
    }
  }
  if (!found)
    throw internal_error("brute_force_soft: no feasible subset (unreachable coverage target)");
  BruteForceResult res;
  res.value = best_cost;
  for (int i = 0; i < n; ++i)
    if (best_mask & (1u << i)) res.sentence_ids.push_back(h.node_ids[static_cast<size_t>(i)]);
  return res;
}

}  // namespace transum
