#include "s3vmr/features.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <unordered_set>

#include "s3vmr/error.hpp"
#include "s3vmr/text.hpp"

namespace s3vmr {

namespace {

const std::unordered_set<std::string_view> kThirdPerson = {"she", "her", "hers",
                                                           "he",  "him", "his"};
const std::unordered_set<std::string_view> kFirstPerson = {"i", "me", "my", "mine"};
const std::unordered_set<std::string_view> kFirstPlural = {"we", "our", "ours", "us"};
const std::unordered_set<std::string_view> kWordsOfInterest = {"sweet", "candy", "fresh"};
const std::vector<std::vector<std::string_view>> kPhrasesOfInterest = {
    {"new", "in", "town"}, {"new", "to", "the", "game"}};
const std::unordered_set<std::string_view> kCountries = {
    "china", "chinese", "vietnam", "vietnamese", "korea",
    "korean", "thailand", "thai", "asia", "asian"};
const std::unordered_set<std::string_view> kPluralVictimNouns = {
    "girls", "ladies", "women", "twins", "sisters"};
const std::unordered_set<std::string_view> kVictimNouns = {
    "girl", "girls", "lady", "ladies", "woman", "women",
    "twin", "twins", "sister", "sisters"};
const std::unordered_set<std::string_view> kSpa = {"spa", "massage"};
const std::unordered_set<std::string_view> kTlds = {
    "com", "net", "org", "info", "biz", "edu", "gov", "us",
    "uk",  "ca",  "io",  "co",   "me",  "tv",  "cc", "xxx"};

constexpr double kEntropyThresholdBits = 4.0;
constexpr double kLowWeightLbs = 115.0;
constexpr double kLbsPerKg = 2.20462;

bool spelled_or_numeric_count_ge2(std::string_view tok) {
  static const std::unordered_set<std::string_view> spelled = {
      "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten"};
  if (spelled.count(tok)) return true;
  if (tok.empty() || tok.size() > 4) return false;
  for (char c : tok)
    if (c < '0' || c > '9') return false;
  int v = 0;
  for (char c : tok) v = v * 10 + (c - '0');
  return v >= 2;
}

bool has_phrase(const std::vector<std::string>& tokens,
                const std::vector<std::string_view>& phrase) {
  if (tokens.size() < phrase.size()) return false;
  for (std::size_t i = 0; i + phrase.size() <= tokens.size(); ++i) {
    bool all = true;
    for (std::size_t k = 0; k < phrase.size(); ++k)
      if (tokens[i + k] != phrase[k]) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

// URL-shaped whitespace token: scheme prefix, "www.", or a bare domain
// ending in a known TLD. Checked on the raw text because the tokenizer
// dissolves dots.
bool looks_like_url(std::string_view raw) {
  std::string t = lowercase(raw);
  const char* trim = ".,;:!?)('\"";
  while (!t.empty() && std::strchr(trim, t.back())) t.pop_back();
  while (!t.empty() && std::strchr(trim, t.front())) t.erase(t.begin());
  if (t.size() < 5) return false;
  if (t.rfind("http://", 0) == 0 || t.rfind("https://", 0) == 0) return true;
  if (t.rfind("www.", 0) == 0) return true;
  const auto dot = t.rfind('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 >= t.size()) return false;
  std::string_view tld = std::string_view(t).substr(dot + 1);
  if (!kTlds.count(tld)) return false;
  for (char c : t.substr(0, dot))
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '.' || c == '-'))
      return false;
  return true;
}

bool has_website_ref(const std::string& text) {
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i && looks_like_url(std::string_view(text).substr(i, j - i))) return true;
    i = j;
  }
  return false;
}

std::vector<std::string> doc_4grams(const std::vector<std::string>& tokens) {
  std::vector<std::string> grams;
  if (tokens.size() < 4) return grams;
  grams.reserve(tokens.size() - 3);
  for (std::size_t i = 0; i + 4 <= tokens.size(); ++i)
    grams.push_back(tokens[i] + " " + tokens[i + 1] + " " + tokens[i + 2] + " " +
                    tokens[i + 3]);
  return grams;
}

}  // namespace

const std::array<std::string, kNumF1Features>& f1_feature_names() {
  static const std::array<std::string, kNumF1Features> names = {
      "third_person",      "first_person_plural",  "high_entropy",
      "ngram_1",           "ngram_2",              "ngram_3",
      "words_of_interest", "countries_of_interest", "multiple_victims",
      "low_weight",        "website_ref",          "spa_ref"};
  return names;
}

std::optional<double> parse_weight_lbs(const std::string& text) {
  static const std::regex re(
      R"((\d+(?:\.\d+)?)\s*(pounds|pound|lbs|lb|kgs|kg)\b)",
      std::regex::ECMAScript);
  std::string lower = lowercase(text);
  std::smatch m;
  if (!std::regex_search(lower, m, re)) return std::nullopt;
  double value = 0.0;
  try {
    value = std::stod(m[1].str());
  } catch (...) {
    return std::nullopt;
  }
  if (m[2].str()[0] == 'k') value *= kLbsPerKg;
  return value;
}

FeatureVectorF1 extract_f1(const AdRecord& ad, const NgramModel& ngrams) {
  FeatureVectorF1 v;
  const std::string text = ad_text(ad);
  const TokenStream stream = tokenize(text, /*remove_stopwords=*/false);
  const auto& toks = stream.tokens;

  std::size_t third = 0, first = 0;
  for (const auto& t : toks) {
    if (kThirdPerson.count(t)) ++third;
    if (kFirstPerson.count(t)) ++first;
    if (kFirstPlural.count(t)) v[F1::first_person_plural] = 1;
    if (kWordsOfInterest.count(t)) v[F1::words_of_interest] = 1;
    if (kCountries.count(t)) v[F1::countries_of_interest] = 1;
    if (kPluralVictimNouns.count(t)) v[F1::multiple_victims] = 1;
    if (kSpa.count(t)) v[F1::spa_ref] = 1;
  }
  if (third >= 1 && third > first) v[F1::third_person] = 1;

  if (!v[F1::words_of_interest])
    for (const auto& phrase : kPhrasesOfInterest)
      if (has_phrase(toks, phrase)) {
        v[F1::words_of_interest] = 1;
        break;
      }

  // Count adjacent to a victim noun, covering singular forms ("2 girl").
  if (!v[F1::multiple_victims])
    for (std::size_t i = 0; i < toks.size(); ++i)
      if (spelled_or_numeric_count_ge2(toks[i]) &&
          ((i + 1 < toks.size() && kVictimNouns.count(toks[i + 1])) ||
           (i > 0 && kVictimNouns.count(toks[i - 1])))) {
        v[F1::multiple_victims] = 1;
        break;
      }

  if (entropy_bits(tokenize(text, /*remove_stopwords=*/true)) > kEntropyThresholdBits)
    v[F1::high_entropy] = 1;

  if (auto w = parse_weight_lbs(text); w && *w < kLowWeightLbs) v[F1::low_weight] = 1;

  if (has_website_ref(text)) v[F1::website_ref] = 1;

  if (!ngrams.top3_columns.empty()) {
    std::set<std::string> grams;
    for (auto& g : doc_4grams(toks)) grams.insert(std::move(g));
    const std::array<F1, 3> slots = {F1::ngram_1, F1::ngram_2, F1::ngram_3};
    for (std::size_t k = 0; k < ngrams.top3_columns.size() && k < 3; ++k) {
      const auto col = static_cast<std::size_t>(ngrams.top3_columns[k]);
      if (col < ngrams.columns.size() && grams.count(ngrams.columns[col]))
        v[slots[k]] = 1;
    }
  }
  return v;
}

NgramModel NgramModel::fit(const std::vector<AdRecord>& corpus) {
  if (corpus.empty()) throw Error("fit_ngram_model: empty corpus");
  std::vector<std::vector<std::string>> per_doc;
  per_doc.reserve(corpus.size());
  std::set<std::string> vocab_set;
  for (const auto& ad : corpus) {
    auto grams = doc_4grams(tokenize(ad_text(ad), false).tokens);
    for (const auto& g : grams) vocab_set.insert(g);
    per_doc.push_back(std::move(grams));
  }
  if (vocab_set.empty()) throw Error("no 4-grams available");

  NgramModel model;
  model.columns.assign(vocab_set.begin(), vocab_set.end());
  for (std::size_t c = 0; c < model.columns.size(); ++c)
    model.vocabulary[model.columns[c]] = static_cast<int>(c);

  const std::size_t n_docs = corpus.size();
  const std::size_t n_cols = model.columns.size();
  std::vector<std::size_t> df(n_cols, 0);
  std::vector<std::map<int, double>> tf(n_docs);
  for (std::size_t d = 0; d < n_docs; ++d) {
    for (const auto& g : per_doc[d]) tf[d][model.vocabulary[g]] += 1.0;
    for (const auto& [col, cnt] : tf[d]) ++df[static_cast<std::size_t>(col)];
  }
  model.idf.resize(n_cols);
  for (std::size_t c = 0; c < n_cols; ++c)
    model.idf[c] = std::log((1.0 + static_cast<double>(n_docs)) /
                            (1.0 + static_cast<double>(df[c]))) +
                   1.0;

  // Global ranking of all matrix cells: value desc, then column, then row.
  struct Cell {
    double v;
    std::size_t row, col;
  };
  std::vector<Cell> cells;
  for (std::size_t d = 0; d < n_docs; ++d) {
    double norm2 = 0.0;
    for (const auto& [col, cnt] : tf[d]) {
      const double w = cnt * model.idf[static_cast<std::size_t>(col)];
      norm2 += w * w;
    }
    if (norm2 <= 0.0) continue;
    const double inv = 1.0 / std::sqrt(norm2);
    for (const auto& [col, cnt] : tf[d])
      cells.push_back({cnt * model.idf[static_cast<std::size_t>(col)] * inv, d,
                       static_cast<std::size_t>(col)});
  }
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    if (a.v != b.v) return a.v > b.v;
    if (a.col != b.col) return a.col < b.col;
    return a.row < b.row;
  });
  std::set<std::size_t> chosen;
  for (const auto& c : cells) {
    if (chosen.count(c.col)) continue;
    chosen.insert(c.col);
    model.top3_columns.push_back(static_cast<int>(c.col));
    if (model.top3_columns.size() == 3) break;
  }
  return model;
}

std::pair<std::vector<AdRecord>, std::vector<AdRecord>> filter_corpus(
    const std::vector<AdRecord>& corpus, const NgramModel& ngrams) {
  std::vector<AdRecord> kept, dropped;
  for (const auto& ad : corpus) {
    if (extract_f1(ad, ngrams).any())
      kept.push_back(ad);
    else
      dropped.push_back(ad);
  }
  return {std::move(kept), std::move(dropped)};
}

void NgramModel::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write ngram model: " + path.string());
  out << "s3vmr-ngrams/1\n";
  out << "columns " << columns.size() << "\n";
  char buf[64];
  for (std::size_t c = 0; c < columns.size(); ++c) {
    std::snprintf(buf, sizeof buf, "%.17g", idf[c]);
    out << c << " " << buf << " " << columns[c] << "\n";
  }
  out << "top3";
  for (int c : top3_columns) out << " " << c;
  out << "\n";
  if (!out) throw Error("write failed: " + path.string());
}

NgramModel NgramModel::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open ngram model: " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "s3vmr-ngrams/1")
    throw Error("unsupported ngram model version in " + path.string());
  NgramModel m;
  std::size_t n_cols = 0;
  if (!(in >> line >> n_cols) || line != "columns")
    throw Error("bad ngram model header in " + path.string());
  std::getline(in, line);
  m.columns.resize(n_cols);
  m.idf.resize(n_cols);
  for (std::size_t i = 0; i < n_cols; ++i) {
    std::getline(in, line);
    std::istringstream ls(line);
    std::size_t c;
    double idf;
    if (!(ls >> c >> idf) || c != i) throw Error("bad ngram model row in " + path.string());
    std::string gram;
    std::getline(ls, gram);
    if (!gram.empty() && gram.front() == ' ') gram.erase(gram.begin());
    m.columns[i] = gram;
    m.idf[i] = idf;
    m.vocabulary[gram] = static_cast<int>(i);
  }
  if (std::getline(in, line) && line.rfind("top3", 0) == 0) {
    std::istringstream ls(line.substr(4));
    int c;
    while (ls >> c) m.top3_columns.push_back(c);
  }
  return m;
}

}  // namespace s3vmr
