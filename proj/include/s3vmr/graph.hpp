#pragma once

#include <vector>

#include "s3vmr/features.hpp"
#include "s3vmr/matrix.hpp"

namespace s3vmr {

struct GraphConfig {
  double heat_t = 1.0;         // heat kernel bandwidth, > 0
  double edge_threshold = 0.1; // an edge exists iff its weight exceeds this
};

// Pairwise agreement F[i][j] = (v_i . v_j) / 12 over the binary feature
// vectors, diagonal included (active_i / 12).
Matrix agreement_matrix(const std::vector<FeatureVectorF1>& f1_vectors);

// Heat-kernel adjacency: A[i][j] = exp(-|x_i - x_j|^2 / 4t) when that value
// exceeds the threshold and i != j, else 0. Diagonal is 0.
Matrix heat_adjacency(const std::vector<std::vector<double>>& vectors,
                      const GraphConfig& cfg);

// L = D - W with D the diagonal of row sums. Input must be symmetric.
Matrix laplacian(const Matrix& weights);

}  // namespace s3vmr
