#include "s3vmr/reference.hpp"

#include <cmath>

#include "s3vmr/error.hpp"

namespace s3vmr::reference {

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error("reference::matmul: dimension mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

Matrix gram(const std::vector<std::vector<double>>& samples, const KernelSpec& spec) {
  const std::size_t n = samples.size();
  Matrix k(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      k(i, j) = kernel_eval(spec, samples[i], samples[j]);
      k(j, i) = k(i, j);
    }
  return k;
}

Matrix heat_adjacency(const std::vector<std::vector<double>>& vectors,
                      const GraphConfig& cfg) {
  if (cfg.heat_t <= 0.0) throw Error("reference::heat_adjacency: heat_t must be > 0");
  const std::size_t n = vectors.size();
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      double d2 = 0.0;
      for (std::size_t k = 0; k < vectors[i].size(); ++k) {
        const double d = vectors[i][k] - vectors[j][k];
        d2 += d * d;
      }
      const double w = std::exp(-d2 / (4.0 * cfg.heat_t));
      a(i, j) = w > cfg.edge_threshold ? w : 0.0;
    }
  return a;
}

Matrix agreement_matrix(const std::vector<FeatureVectorF1>& f1_vectors) {
  const std::size_t n = f1_vectors.size();
  Matrix f(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t b = 0; b < kNumF1Features; ++b)
        dot += static_cast<double>(f1_vectors[i].flags[b]) *
               static_cast<double>(f1_vectors[j].flags[b]);
      f(i, j) = dot / static_cast<double>(kNumF1Features);
    }
  return f;
}

Matrix cosine_similarity(const Matrix& rows) {
  const std::size_t n = rows.rows();
  std::vector<double> norm(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < rows.cols(); ++k) s += rows(i, k) * rows(i, k);
    norm[i] = std::sqrt(s);
  }
  Matrix c(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (norm[i] == 0.0 || norm[j] == 0.0) {
        c(i, j) = 0.0;
        continue;
      }
      double dot = 0.0;
      for (std::size_t k = 0; k < rows.cols(); ++k) dot += rows(i, k) * rows(j, k);
      c(i, j) = dot / (norm[i] * norm[j]);
    }
  return c;
}

}  // namespace s3vmr::reference
