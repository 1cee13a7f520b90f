#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "s3vmr/corpus.hpp"

namespace s3vmr {

inline constexpr std::size_t kNumF1Features = 12;

// Column order is fixed; it is the header order of the feature CSV.
enum class F1 : std::size_t {
  third_person = 0,
  first_person_plural,
  high_entropy,
  ngram_1,
  ngram_2,
  ngram_3,
  words_of_interest,
  countries_of_interest,
  multiple_victims,
  low_weight,
  website_ref,
  spa_ref,
};

const std::array<std::string, kNumF1Features>& f1_feature_names();

struct FeatureVectorF1 {
  std::array<std::uint8_t, kNumF1Features> flags{};

  std::uint8_t& operator[](F1 f) { return flags[static_cast<std::size_t>(f)]; }
  std::uint8_t operator[](F1 f) const { return flags[static_cast<std::size_t>(f)]; }
  bool any() const {
    for (auto v : flags)
      if (v) return true;
    return false;
  }
  std::uint16_t bitmask() const {
    std::uint16_t m = 0;
    for (std::size_t i = 0; i < kNumF1Features; ++i)
      if (flags[i]) m |= static_cast<std::uint16_t>(1u << i);
    return m;
  }
  std::vector<double> as_doubles() const {
    return std::vector<double>(flags.begin(), flags.end());
  }
};

// Word-level 4-gram TF-IDF vocabulary with the three globally top-ranked
// columns. Grams are stored as their four tokens joined by single spaces.
struct NgramModel {
  std::vector<std::string> columns;       // sorted gram strings; index = column
  std::map<std::string, int> vocabulary;  // gram -> column
  std::vector<double> idf;                // per column
  std::vector<int> top3_columns;          // up to 3 distinct columns, rank order

  static NgramModel fit(const std::vector<AdRecord>& corpus);

  void save(const std::filesystem::path& path) const;
  static NgramModel load(const std::filesystem::path& path);
};

FeatureVectorF1 extract_f1(const AdRecord& ad, const NgramModel& ngrams);

// Splits the corpus into ads with at least one active flag (kept) and
// all-zero ads (dropped). Order is preserved in both halves.
std::pair<std::vector<AdRecord>, std::vector<AdRecord>> filter_corpus(
    const std::vector<AdRecord>& corpus, const NgramModel& ngrams);

// Weight mention in pounds, if any. First "number unit" match wins;
// kilograms are converted at 2.20462 lbs/kg.
std::optional<double> parse_weight_lbs(const std::string& text);

}  // namespace s3vmr
