#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace transum {

struct Document {
  std::string doc_id;
  std::string text;
};

struct Sentence {
  int sent_id = 0;       // 1..N_s, dense across the whole corpus
  std::string doc_id;
  int position = 0;      // 1-based ordinal within the document
  std::string raw_text;
  std::vector<std::string> tokens;  // stemmed, stopword-filtered
  int length_words = 0;  // whitespace words in raw_text, >= 1
};

struct RawSentence {
  std::string text;
  int position = 0;
};

/// Splits at . ! ? runs that are followed by whitespace and an
/// uppercase/digit start. `abbreviations` holds lowercase chunks such as
/// "dr." that suppress a split. Throws input_error if nothing remains.
std::vector<RawSentence> split_sentences(const Document& doc);
std::vector<RawSentence> split_sentences(const Document& doc,
                                         const std::unordered_set<std::string>& abbreviations);

const std::unordered_set<std::string>& default_abbreviations();

using Stoplist = std::unordered_set<std::string>;

/// One word per line, '#' starts a comment. Throws input_error if unreadable.
Stoplist load_stoplist(const std::string& path);

/// Lowercase, split on non-alphanumeric runs, drop pure numbers and tokens
/// shorter than 2 chars, drop stoplist members, then Porter-stem.
std::vector<std::string> preprocess(const std::string& raw, const Stoplist& stoplist);

int count_words(const std::string& raw);

class Vocabulary {
 public:
  /// Collects every token of `sentences` into the term index and computes
  /// per-term and per-pair sentence frequencies plus isf (natural log).
  /// Throws input_error when no sentence carries a token.
  static Vocabulary build(const std::vector<Sentence>& sentences);

  int size() const { return static_cast<int>(terms_.size()); }  // N_t
  int sentence_count() const { return sentence_count_; }        // N_s

  /// -1 when the term is unknown.
  int index_of(const std::string& term) const;
  const std::string& term(int index) const { return terms_[static_cast<size_t>(index)]; }

  int ns(int term_index) const { return sentence_counts_[static_cast<size_t>(term_index)]; }
  int ns_pair(int u, int v) const;
  double isf(int term_index) const { return isf_[static_cast<size_t>(term_index)]; }

  template <typename Fn>  // Fn(int u, int v, int count) over stored pairs, u < v
  void for_each_pair(Fn&& fn) const {
    for (const auto& [key, count] : pair_counts_)
      fn(static_cast<int>(key >> 32), static_cast<int>(key & 0xffffffffULL), count);
  }

 private:
  static std::uint64_t pair_key(int u, int v);

  std::vector<std::string> terms_;
  std::unordered_map<std::string, int> index_;
  std::vector<int> sentence_counts_;
  std::unordered_map<std::uint64_t, int> pair_counts_;
  std::vector<double> isf_;
  int sentence_count_ = 0;
};

/// Sparse tfisf representation of a text fragment; entries are strictly
/// positive and sorted by term index.
class TfisfVector {
 public:
  TfisfVector() = default;

  static TfisfVector from_tokens(const std::vector<std::string>& tokens, const Vocabulary& vocab);
  static TfisfVector from_term_counts(const std::unordered_map<int, int>& counts,
                                      const Vocabulary& vocab);

  const std::vector<std::pair<int, double>>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  double norm() const;

 private:
  std::vector<std::pair<int, double>> entries_;
};

/// Cosine of the tfisf vectors; 0 when either side is empty.
double cosine_similarity(const TfisfVector& a, const TfisfVector& b);

}  // namespace transum
