#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace s3vmr {

struct TokenStream {
  std::vector<std::string> tokens;
  bool stopword_filtered = false;

  bool empty() const { return tokens.empty(); }
  std::size_t size() const { return tokens.size(); }
};

// Lowercases, strips everything outside [a-z0-9], splits on the gaps.
// Empty text yields an empty stream.
TokenStream tokenize(std::string_view text, bool remove_stopwords);

bool is_stopword(std::string_view token);

const std::vector<std::string>& stopword_list();

// Shannon entropy in bits over the empirical token distribution.
// Zero for empty or single-distinct-token streams.
double entropy_bits(const TokenStream& stream);

}  // namespace s3vmr
