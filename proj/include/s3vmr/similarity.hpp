#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "s3vmr/corpus.hpp"
#include "s3vmr/matrix.hpp"

namespace s3vmr {

// Symmetric TF-IDF cosine similarities over a corpus. Diagonal is 1 for any
// document with at least one non-stop-word token, 0 otherwise; such
// degenerate documents get an all-zero row and column.
struct SimilarityMatrix {
  std::vector<std::string> ids;
  Matrix values;  // n x n, entries in [0, 1]

  std::size_t size() const { return ids.size(); }
  std::vector<double> row_vector(std::size_t i) const {
    return std::vector<double>(values.row(i), values.row(i) + values.cols());
  }
};

SimilarityMatrix build_similarity_matrix(const std::vector<AdRecord>& corpus);

// Stop-word-filtered unigram TF-IDF row vectors (dense), L2-normalized.
// Shared by the similarity matrix and its serial reference.
Matrix tfidf_unigram_rows(const std::vector<AdRecord>& corpus);

// CSV with ids as the first row and first column, 9 significant digits.
void write_similarity_csv(const std::filesystem::path& path, const SimilarityMatrix& sim);

}  // namespace s3vmr
