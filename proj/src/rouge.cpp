#include "transum/rouge.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>

#include "transum/errors.hpp"
#include "transum/porter.hpp"

namespace transum {
namespace {

constexpr char kSep = '\x1f';

struct Counts {
  std::unordered_map<std::string, int> items;
  long long total = 0;
};

Counts metric_counts(const EvalText& text, RougeMetric metric) {
  Counts c;
  if (metric == RougeMetric::R2) {
    c.items = ngram_counts(text, 2);
  } else {
    // SU4 pools unigrams with 4-skip-bigrams into one multiset
    c.items = ngram_counts(text, 1);
    for (const auto& [gram, count] : skip_bigram_counts(text, 4)) c.items[gram] += count;
  }
  for (const auto& [gram, count] : c.items) c.total += count;
  return c;
}

double multi_reference_score(const Counts& cand, const std::vector<Counts>& refs) {
  long long ref_total = 0;
  long long clipped = 0;
  for (const Counts& ref : refs) {
    ref_total += ref.total;
    for (const auto& [gram, count] : ref.items) {
      auto it = cand.items.find(gram);
      if (it != cand.items.end()) clipped += std::min(count, it->second);
    }
  }
  if (ref_total == 0) {
    // degenerate references (too short for the metric); identity still
    // counts as a perfect match
    return cand.total == 0 ? 1.0 : 0.0;
  }
  return static_cast<double>(clipped) / static_cast<double>(ref_total);
}

}  // namespace

EvalText make_eval_text(const std::string& raw) {
  EvalText t;
  std::string cur;
  auto flush = [&]() {
    if (!cur.empty()) {
      t.tokens.push_back(porter_stem(cur));
      cur.clear();
    }
  };
  for (char c : raw) {
    if (std::isalnum(static_cast<unsigned char>(c)))
      cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    else
      flush();
  }
  flush();
  return t;
}

std::unordered_map<std::string, int> ngram_counts(const EvalText& text, int n) {
  if (n < 1) throw input_error("ngram_counts: n must be >= 1");
  std::unordered_map<std::string, int> counts;
  if (static_cast<int>(text.tokens.size()) < n) return counts;
  for (size_t i = 0; i + n <= text.tokens.size(); ++i) {
    std::string key = text.tokens[i];
    for (size_t k = 1; k < static_cast<size_t>(n); ++k) {
      key.push_back(kSep);
      key += text.tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

std::unordered_map<std::string, int> skip_bigram_counts(const EvalText& text, int max_gap) {
  if (max_gap < 0) throw input_error("skip_bigram_counts: max_gap must be >= 0");
  std::unordered_map<std::string, int> counts;
  const size_t n = text.tokens.size();
  for (size_t i = 0; i + 1 < n; ++i) {
    size_t jmax = std::min(n - 1, i + 1 + static_cast<size_t>(max_gap));
    for (size_t j = i + 1; j <= jmax; ++j)
      ++counts[text.tokens[i] + kSep + text.tokens[j]];
  }
  return counts;
}

double rouge_score(const EvalText& candidate, const std::vector<EvalText>& references,
                   RougeMetric metric, bool jackknife) {
  if (references.empty()) throw input_error("rouge_score: at least one reference is required");
  if (candidate.tokens.empty()) return 0.0;

  Counts cand = metric_counts(candidate, metric);
  std::vector<Counts> refs;
  refs.reserve(references.size());
  for (const EvalText& r : references) {
    if (r.tokens.empty()) throw input_error("rouge_score: empty reference summary");
    refs.push_back(metric_counts(r, metric));
  }

  if (!jackknife) return multi_reference_score(cand, refs);

  if (refs.size() < 2) throw input_error("rouge_score: jackknife needs >= 2 references");
  double sum = 0.0;
  for (size_t leave = 0; leave < refs.size(); ++leave) {
    std::vector<Counts> subset;
    subset.reserve(refs.size() - 1);
    for (size_t k = 0; k < refs.size(); ++k)
      if (k != leave) subset.push_back(refs[k]);
    sum += multi_reference_score(cand, subset);
  }
  return sum / static_cast<double>(refs.size());
}

std::pair<double, double> bootstrap_ci(const std::vector<double>& scores, int iterations,
                                       std::uint64_t seed) {
  if (scores.size() < 2) throw input_error("bootstrap_ci: need at least 2 scores");
  if (iterations < 1) throw input_error("bootstrap_ci: iterations must be >= 1");
  std::mt19937_64 rng(seed);
  const size_t n = scores.size();
  std::vector<double> means;
  means.reserve(static_cast<size_t>(iterations));
  for (int it = 0; it < iterations; ++it) {
    double sum = 0.0;
    // index via modulo keeps resampling identical across standard libraries
    for (size_t k = 0; k < n; ++k) sum += scores[rng() % n];
    means.push_back(sum / static_cast<double>(n));
  }
  std::sort(means.begin(), means.end());
  auto percentile = [&](double q) {
    double pos = q * static_cast<double>(means.size() - 1);
    size_t lo = static_cast<size_t>(pos);
    size_t hi = std::min(lo + 1, means.size() - 1);
    double frac = pos - static_cast<double>(lo);
    return means[lo] + frac * (means[hi] - means[lo]);
  };
  return {percentile(0.025), percentile(0.975)};
}

}  // namespace transum
