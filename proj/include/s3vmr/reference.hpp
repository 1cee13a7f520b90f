#pragma once

#include <vector>

#include "s3vmr/features.hpp"
#include "s3vmr/graph.hpp"
#include "s3vmr/kernels.hpp"
#include "s3vmr/matrix.hpp"

namespace s3vmr::reference {

// Straight serial implementations of the parallel kernels. They are the
// ground truth the OpenMP paths are tested against and the baseline the
// benchmark compares with; keep them simple and obviously correct.

Matrix matmul(const Matrix& a, const Matrix& b);

Matrix gram(const std::vector<std::vector<double>>& samples, const KernelSpec& spec);

Matrix heat_adjacency(const std::vector<std::vector<double>>& vectors,
                      const GraphConfig& cfg);

Matrix agreement_matrix(const std::vector<FeatureVectorF1>& f1_vectors);

// Pairwise cosine over explicit (already weighted) row vectors.
Matrix cosine_similarity(const Matrix& rows);

}  // namespace s3vmr::reference
