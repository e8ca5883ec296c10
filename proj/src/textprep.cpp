#include "transum/textprep.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>

#include "transum/errors.hpp"
#include "transum/porter.hpp"

namespace transum {
namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
char to_lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

// Whitespace-delimited chunk ending at byte `end` (inclusive), lowercased
// and stripped of leading quotes/brackets; used for the abbreviation guard.
std::string chunk_ending_at(const std::string& text, size_t end) {
  size_t b = end;
  while (b > 0 && !is_space(text[b - 1])) --b;
  while (b <= end && (text[b] == '(' || text[b] == '"' || text[b] == '\'' || text[b] == '[')) ++b;
  std::string out;
  for (size_t i = b; i <= end; ++i) out.push_back(to_lower(text[i]));
  return out;
}

}  // namespace

const std::unordered_set<std::string>& default_abbreviations() {
  static const std::unordered_set<std::string> kAbbrev = {
      "dr.",   "mr.",  "mrs.",  "ms.",   "prof.", "st.",   "jr.",    "sr.",
      "vs.",   "etc.", "e.g.",  "i.e.",  "cf.",   "fig.",  "figs.",  "no.",
      "nos.",  "vol.", "sec.",  "dept.", "univ.", "inc.",  "ltd.",   "co.",
      "corp.", "gen.", "col.",  "gov.",  "sen.",  "rep.",  "jan.",   "feb.",
      "mar.",  "apr.", "jun.",  "jul.",  "aug.",  "sep.",  "sept.",  "oct.",
      "nov.",  "dec.", "approx.",
  };
  return kAbbrev;
}

std::vector<RawSentence> split_sentences(const Document& doc) {
  return split_sentences(doc, default_abbreviations());
}

std::vector<RawSentence> split_sentences(const Document& doc,
                                         const std::unordered_set<std::string>& abbreviations) {
  const std::string& text = doc.text;
  std::vector<RawSentence> out;
  size_t start = 0;
  size_t i = 0;
  auto flush = [&](size_t end_exclusive) {
    std::string sent = trim(text.substr(start, end_exclusive - start));
    if (!sent.empty()) out.push_back({std::move(sent), static_cast<int>(out.size()) + 1});
    start = end_exclusive;
  };
  while (i < text.size()) {
    if (!is_terminator(text[i])) {
      ++i;
      continue;
    }
    size_t run_end = i;  // last char of the punctuation run (with closers)
    while (run_end + 1 < text.size() &&
           (is_terminator(text[run_end + 1]) || text[run_end + 1] == '"' ||
            text[run_end + 1] == '\'' || text[run_end + 1] == ')'))
      ++run_end;
    size_t next = run_end + 1;
    bool boundary = false;
    if (next >= text.size()) {
      boundary = false;  // end of text; the final flush handles it
    } else if (is_space(text[next])) {
      size_t w = next;
      while (w < text.size() && is_space(text[w])) ++w;
      if (w < text.size() && (is_upper(text[w]) || is_digit(text[w]))) boundary = true;
    }
    if (boundary && text[i] == '.' && abbreviations.count(chunk_ending_at(text, i)) > 0)
      boundary = false;
    if (boundary) flush(run_end + 1);
    i = run_end + 1;
  }
  flush(text.size());
  if (out.empty()) throw input_error("document '" + doc.doc_id + "' contains no sentences");
  return out;
}

Stoplist load_stoplist(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot read stoplist file: " + path);
  Stoplist words;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string w = trim(line);
    std::transform(w.begin(), w.end(), w.begin(), to_lower);
    if (!w.empty()) words.insert(std::move(w));
  }
  return words;
}

std::vector<std::string> preprocess(const std::string& raw, const Stoplist& stoplist) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&]() {
    if (cur.empty()) return;
    std::string word;
    word.swap(cur);
    if (word.size() < 2) return;
    if (std::all_of(word.begin(), word.end(), is_digit)) return;
    if (stoplist.count(word) > 0) return;  // stoplist applies before stemming
    tokens.push_back(porter_stem(word));
  };
  for (char c : raw) {
    if (is_alnum(c))
      cur.push_back(to_lower(c));
    else
      flush();
  }
  flush();
  return tokens;
}

int count_words(const std::string& raw) {
  int n = 0;
  bool in_word = false;
  for (char c : raw) {
    if (is_space(c)) {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      ++n;
    }
  }
  return n;
}

std::uint64_t Vocabulary::pair_key(int u, int v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
         static_cast<std::uint32_t>(v);
}

Vocabulary Vocabulary::build(const std::vector<Sentence>& sentences) {
  Vocabulary vocab;
  vocab.sentence_count_ = static_cast<int>(sentences.size());
  for (const Sentence& s : sentences) {
    // sentence membership, not token multiplicity
    std::vector<int> distinct;
    for (const std::string& tok : s.tokens) {
      auto [it, inserted] = vocab.index_.try_emplace(tok, vocab.size());
      if (inserted) {
        vocab.terms_.push_back(tok);
        vocab.sentence_counts_.push_back(0);
      }
      int idx = it->second;
      if (std::find(distinct.begin(), distinct.end(), idx) == distinct.end())
        distinct.push_back(idx);
    }
    for (int idx : distinct) ++vocab.sentence_counts_[static_cast<size_t>(idx)];
    for (size_t a = 0; a < distinct.size(); ++a)
      for (size_t b = a + 1; b < distinct.size(); ++b)
        ++vocab.pair_counts_[pair_key(distinct[a], distinct[b])];
  }
  if (vocab.terms_.empty())
    throw input_error("empty vocabulary: no tokens survived preprocessing");
  vocab.isf_.resize(vocab.terms_.size());
  for (size_t t = 0; t < vocab.terms_.size(); ++t)
    vocab.isf_[t] = std::log(static_cast<double>(vocab.sentence_count_) /
                             static_cast<double>(vocab.sentence_counts_[t]));
  return vocab;
}

int Vocabulary::index_of(const std::string& term) const {
  auto it = index_.find(term);
  return it == index_.end() ? -1 : it->second;
}

int Vocabulary::ns_pair(int u, int v) const {
  if (u == v) return ns(u);
  auto it = pair_counts_.find(pair_key(u, v));
  return it == pair_counts_.end() ? 0 : it->second;
}

TfisfVector TfisfVector::from_tokens(const std::vector<std::string>& tokens,
                                     const Vocabulary& vocab) {
  std::unordered_map<int, int> counts;
  for (const std::string& tok : tokens) {
    int idx = vocab.index_of(tok);
    if (idx >= 0) ++counts[idx];  // out-of-vocabulary tokens ignored
  }
  return from_term_counts(counts, vocab);
}

TfisfVector TfisfVector::from_term_counts(const std::unordered_map<int, int>& counts,
                                          const Vocabulary& vocab) {
  TfisfVector v;
  v.entries_.reserve(counts.size());
  for (const auto& [idx, tf] : counts) {
    double w = tf * vocab.isf(idx);
    if (w > 0.0) v.entries_.emplace_back(idx, w);
  }
  std::sort(v.entries_.begin(), v.entries_.end());
  return v;
}

double TfisfVector::norm() const {
  double sq = 0.0;
  for (const auto& [idx, w] : entries_) sq += w * w;
  return std::sqrt(sq);
}

double cosine_similarity(const TfisfVector& a, const TfisfVector& b) {
  if (a.empty() || b.empty()) return 0.0;
  double dot = 0.0;
  auto ia = a.entries().begin();
  auto ib = b.entries().begin();
  while (ia != a.entries().end() && ib != b.entries().end()) {
    if (ia->first == ib->first) {
      dot += ia->second * ib->second;
      ++ia;
      ++ib;
    } else if (ia->first < ib->first) {
      ++ia;
    } else {
      ++ib;
    }
  }
  if (dot == 0.0) return 0.0;
  return dot / (a.norm() * b.norm());
}

}  // namespace transum
