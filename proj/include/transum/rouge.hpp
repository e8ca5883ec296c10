#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace transum {

/// Stemmed, lowercased token stream for evaluation. Stopwords are kept;
/// this mirrors the usual DUC scoring setup rather than the summarizer's
/// own preprocessing.
struct EvalText {
  std::vector<std::string> tokens;
};

EvalText make_eval_text(const std::string& raw);

enum class RougeMetric { R2, SU4 };

/// Contiguous n-grams with multiplicity, keyed by '\x1f'-joined tokens.
std::unordered_map<std::string, int> ngram_counts(const EvalText& text, int n);

/// Ordered pairs (t_i, t_j), i < j, separated by at most max_gap words,
/// with multiplicity.
std::unordered_map<std::string, int> skip_bigram_counts(const EvalText& text, int max_gap = 4);

/// Recall-oriented multi-reference score: clipped overlap summed over
/// references divided by the summed reference counts. SU4 pools unigrams
/// with 4-skip-bigrams. With jackknife on (needs >= 2 references) the
/// score is the mean over leave-one-reference-out subsets.
double rouge_score(const EvalText& candidate, const std::vector<EvalText>& references,
                   RougeMetric metric, bool jackknife = false);

struct RougeResult {
  double rouge2 = 0.0;
  double rouge_su4 = 0.0;
  std::optional<std::pair<double, double>> ci95_rouge2;
  std::optional<std::pair<double, double>> ci95_su4;
};

/// Percentile bootstrap (2.5%, 97.5%) of the mean of per-corpus scores.
/// Deterministic for a fixed seed.
std::pair<double, double> bootstrap_ci(const std::vector<double>& scores, int iterations,
                                       std::uint64_t seed);

}  // namespace transum
