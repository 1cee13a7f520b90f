#pragma once

#include <span>
#include <vector>

#include "s3vmr/matrix.hpp"

namespace s3vmr {

struct KernelSpec {
  enum class Kind { linear, rbf };
  Kind kind = Kind::linear;
  double rbf_gamma = 1.0;  // used iff kind == rbf; must be > 0
};

double kernel_eval(const KernelSpec& spec, std::span<const double> x,
                   std::span<const double> y);

// Gram matrix K[i][j] = k(x_i, x_j) over all samples. Row-parallel.
Matrix gram(const std::vector<std::vector<double>>& samples, const KernelSpec& spec);

// k(x, t) for every training point t, in training order.
std::vector<double> kernel_row(std::span<const double> x,
                               const std::vector<std::vector<double>>& training,
                               const KernelSpec& spec);

}  // namespace s3vmr
