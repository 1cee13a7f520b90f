#include "s3vmr/graph.hpp"

#include <bit>
#include <cmath>
#include <cstdint>

#include "s3vmr/error.hpp"

namespace s3vmr {

Matrix agreement_matrix(const std::vector<FeatureVectorF1>& f1_vectors) {
  if (f1_vectors.empty()) throw Error("agreement_matrix: empty input");
  const std::size_t n = f1_vectors.size();
  std::vector<std::uint16_t> masks(n);
  for (std::size_t i = 0; i < n; ++i) masks[i] = f1_vectors[i].bitmask();
  Matrix f(n, n);
  const double inv_nf = 1.0 / static_cast<double>(kNumF1Features);
#pragma omp parallel for schedule(static)
  for (std::int64_t ii = 0; ii < static_cast<std::int64_t>(n); ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    for (std::size_t j = i; j < n; ++j)
      f(i, j) = static_cast<double>(std::popcount(
                    static_cast<unsigned>(masks[i] & masks[j]))) *
                inv_nf;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) f(j, i) = f(i, j);
  return f;
}

Matrix heat_adjacency(const std::vector<std::vector<double>>& vectors,
                      const GraphConfig& cfg) {
  if (cfg.heat_t <= 0.0) throw Error("heat_adjacency: heat_t must be > 0");
  const std::size_t n = vectors.size();
  for (const auto& v : vectors)
    if (v.size() != vectors.front().size())
      throw Error("heat_adjacency: dimension mismatch");
  Matrix a(n, n);
  const double inv4t = 1.0 / (4.0 * cfg.heat_t);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t ii = 0; ii < static_cast<std::int64_t>(n); ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    for (std::size_t j = i + 1; j < n; ++j) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < vectors[i].size(); ++k) {
        const double d = vectors[i][k] - vectors[j][k];
        d2 += d * d;
      }
      const double w = std::exp(-d2 * inv4t);
      a(i, j) = w > cfg.edge_threshold ? w : 0.0;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a(j, i) = a(i, j);
  return a;
}

Matrix laplacian(const Matrix& weights) {
  if (weights.rows() != weights.cols()) throw Error("laplacian: input not square");
  if (!is_symmetric(weights, 1e-12)) throw Error("laplacian: input not symmetric");
  const std::size_t n = weights.rows();
  Matrix l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    double degree = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      degree += weights(i, j);
      l(i, j) = -weights(i, j);
    }
    l(i, i) += degree;
  }
  return l;
}

}  // namespace s3vmr
