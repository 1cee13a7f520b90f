#pragma once

#include <vector>

#include "s3vmr/error.hpp"
#include "s3vmr/matrix.hpp"

namespace s3vmr {

struct DualSolution {
  std::vector<double> beta;
  double objective = 0.0;      // -1/2 b'Qb + sum(b), the maximized value
  double kkt_violation = 0.0;  // max coordinate projected-gradient residual
  std::vector<double> trace;   // objective after each pair update
};

struct QpNonConvergence : Error {
  QpNonConvergence(const std::string& what, DualSolution best_iterate)
      : Error(what), best(std::move(best_iterate)) {}
  DualSolution best;
};

// Maximizes -1/2 b'Qb + sum(b) subject to sum(b_i y_i) = 0 and
// 0 <= b_i <= c_l, by exact two-coordinate ascent on the maximal violating
// pair. Q must be symmetric PSD (up to jitter); labels are +/-1.
DualSolution solve_dual(const Matrix& q, const std::vector<int>& labels, double c_l,
                        double tol = 1e-6, std::size_t max_iter = 200000);

}  // namespace s3vmr
