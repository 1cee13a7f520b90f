#include "s3vmr/text.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

namespace s3vmr {

namespace {

// Fixed English stop-word list embedded with the artifact. Apostrophes are
// stripped by the tokenizer, so contraction fragments (d, ll, ve, ...) are
// listed as bare tokens.
constexpr std::array<std::string_view, 155> kStopwords = {
    "a",       "about",   "above",   "after",   "again",    "against", "ain",
    "all",     "am",      "an",      "and",     "any",      "are",     "aren",
    "as",      "at",      "be",      "because", "been",     "before",  "being",
    "below",   "between", "both",    "but",     "by",       "can",     "couldn",
    "d",       "did",     "didn",    "do",      "does",     "doesn",   "doing",
    "don",     "down",    "during",  "each",    "few",      "for",     "from",
    "further", "had",     "hadn",    "has",     "hasn",     "have",    "haven",
    "having",  "he",      "her",     "here",    "hers",     "herself", "him",
    "himself", "his",     "how",     "i",       "if",       "in",      "into",
    "is",      "isn",     "it",      "its",     "itself",   "just",    "ll",
    "m",       "ma",      "me",      "mightn",  "mine",     "more",    "most",
    "mustn",   "my",      "myself",  "needn",   "no",       "nor",     "not",
    "now",     "o",       "of",      "off",     "on",       "once",    "only",
    "or",      "other",   "our",     "ours",    "ourselves", "out",    "over",
    "own",     "re",      "s",       "same",    "shan",     "she",     "should",
    "shouldn", "so",      "some",    "such",    "t",        "than",    "that",
    "the",     "their",   "theirs",  "them",    "themselves", "then",  "there",
    "these",   "they",    "this",    "those",   "through",  "to",      "too",
    "under",   "until",   "up",      "us",      "ve",       "very",    "was",
    "wasn",    "we",      "were",    "weren",   "what",     "when",    "where",
    "which",   "while",   "who",     "whom",    "why",      "will",    "with",
    "won",     "wouldn",  "y",       "you",     "your",     "yours",
    "yourself", "yourselves"};

}  // namespace

bool is_stopword(std::string_view token) {
  return std::binary_search(kStopwords.begin(), kStopwords.end(), token);
}

const std::vector<std::string>& stopword_list() {
  static const std::vector<std::string> list(kStopwords.begin(), kStopwords.end());
  return list;
}

TokenStream tokenize(std::string_view text, bool remove_stopwords) {
  TokenStream out;
  out.stopword_filtered = remove_stopwords;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      if (!remove_stopwords || !is_stopword(cur)) out.tokens.push_back(cur);
      cur.clear();
    }
  };
  for (unsigned char c : text) {
    if (c >= 'A' && c <= 'Z') {
      cur.push_back(static_cast<char>(c - 'A' + 'a'));
    } else if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
      cur.push_back(static_cast<char>(c));
    } else {
      flush();  // non-ASCII bytes also act as separators
    }
  }
  flush();
  return out;
}

double entropy_bits(const TokenStream& stream) {
  if (stream.tokens.size() < 2) return 0.0;
  std::map<std::string_view, std::size_t> counts;
  for (const auto& t : stream.tokens) ++counts[t];
  if (counts.size() < 2) return 0.0;
  const double n = static_cast<double>(stream.tokens.size());
  double h = 0.0;
  for (const auto& [tok, c] : counts) {
    const double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  return h;
}

}  // namespace s3vmr
