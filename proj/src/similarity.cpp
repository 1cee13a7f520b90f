#include "s3vmr/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>

#include "s3vmr/error.hpp"
#include "s3vmr/text.hpp"

namespace s3vmr {

namespace {

struct SparseDoc {
  std::vector<std::pair<int, double>> entries;  // (column, weight), column-sorted
};

// Stop-word-filtered unigram counts -> smooth-idf TF-IDF, L2-normalized.
std::vector<SparseDoc> tfidf_sparse(const std::vector<AdRecord>& corpus,
                                    std::size_t* vocab_size_out) {
  const std::size_t n = corpus.size();
  std::vector<std::map<std::string, double>> counts(n);
  std::map<std::string, int> vocab;
  for (std::size_t d = 0; d < n; ++d) {
    for (const auto& t : tokenize(ad_text(corpus[d]), /*remove_stopwords=*/true).tokens)
      counts[d][t] += 1.0;
    for (const auto& [tok, c] : counts[d]) vocab.emplace(tok, 0);
  }
  int next = 0;
  for (auto& [tok, col] : vocab) col = next++;  // columns in sorted token order
  std::vector<std::size_t> df(vocab.size(), 0);
  for (std::size_t d = 0; d < n; ++d)
    for (const auto& [tok, c] : counts[d]) ++df[static_cast<std::size_t>(vocab[tok])];

  std::vector<SparseDoc> docs(n);
  for (std::size_t d = 0; d < n; ++d) {
    double norm2 = 0.0;
    for (const auto& [tok, c] : counts[d]) {
      const int col = vocab[tok];
      const double idf =
          std::log((1.0 + static_cast<double>(n)) /
                   (1.0 + static_cast<double>(df[static_cast<std::size_t>(col)]))) +
          1.0;
      const double w = c * idf;
      docs[d].entries.emplace_back(col, w);
      norm2 += w * w;
    }
    if (norm2 > 0.0) {
      const double inv = 1.0 / std::sqrt(norm2);
      for (auto& [col, w] : docs[d].entries) w *= inv;
    }
  }
  if (vocab_size_out) *vocab_size_out = vocab.size();
  return docs;
}

double sparse_dot(const SparseDoc& a, const SparseDoc& b) {
  double s = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.entries.size() && j < b.entries.size()) {
    if (a.entries[i].first < b.entries[j].first)
      ++i;
    else if (a.entries[i].first > b.entries[j].first)
      ++j;
    else {
      s += a.entries[i].second * b.entries[j].second;
      ++i;
      ++j;
    }
  }
  return s;
}

}  // namespace

Matrix tfidf_unigram_rows(const std::vector<AdRecord>& corpus) {
  std::size_t vocab_size = 0;
  const auto docs = tfidf_sparse(corpus, &vocab_size);
  Matrix rows(corpus.size(), vocab_size);
  for (std::size_t d = 0; d < docs.size(); ++d)
    for (const auto& [col, w] : docs[d].entries)
      rows(d, static_cast<std::size_t>(col)) = w;
  return rows;
}

SimilarityMatrix build_similarity_matrix(const std::vector<AdRecord>& corpus) {
  if (corpus.empty()) throw Error("build_similarity_matrix: empty corpus");
  SimilarityMatrix sim;
  sim.ids.reserve(corpus.size());
  for (const auto& ad : corpus) sim.ids.push_back(ad.id);

  const auto docs = tfidf_sparse(corpus, nullptr);
  const std::size_t n = corpus.size();
  sim.values = Matrix(n, n);
  Matrix& s = sim.values;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t ii = 0; ii < static_cast<std::int64_t>(n); ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    s(i, i) = docs[i].entries.empty() ? 0.0 : 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = std::clamp(sparse_dot(docs[i], docs[j]), 0.0, 1.0);
      s(i, j) = v;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s(j, i) = s(i, j);
  return sim;
}

void write_similarity_csv(const std::filesystem::path& path, const SimilarityMatrix& sim) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write similarity CSV: " + path.string());
  out << "id";
  for (const auto& id : sim.ids) out << "," << id;
  out << "\n";
  char buf[32];
  for (std::size_t i = 0; i < sim.size(); ++i) {
    out << sim.ids[i];
    for (std::size_t j = 0; j < sim.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.9g", sim.values(i, j));
      out << "," << buf;
    }
    out << "\n";
  }
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace s3vmr
