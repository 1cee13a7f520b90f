#include "s3vmr/qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace s3vmr {

namespace {

constexpr double kDegenerateCurvature = 1e-12;

double clip(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

// Working state for the box/equality KKT conditions of
//   min 1/2 b'Qb - sum(b)  s.t.  y'b = 0, 0 <= b <= C.
struct KktState {
  double m = -std::numeric_limits<double>::infinity();  // max_{I_up} -y g
  double big_m = std::numeric_limits<double>::infinity();  // min_{I_low} -y g
  std::size_t arg_up = 0, arg_low = 0;
  bool has_up = false, has_low = false;
};

KktState scan(const std::vector<double>& beta, const std::vector<double>& grad,
              const std::vector<int>& y, double c) {
  KktState s;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    const double v = -static_cast<double>(y[i]) * grad[i];
    const bool up = (y[i] > 0 && beta[i] < c) || (y[i] < 0 && beta[i] > 0.0);
    const bool low = (y[i] > 0 && beta[i] > 0.0) || (y[i] < 0 && beta[i] < c);
    if (up && (!s.has_up || v > s.m)) {
      s.m = v;
      s.arg_up = i;
      s.has_up = true;
    }
    if (low && (!s.has_low || v < s.big_m)) {
      s.big_m = v;
      s.arg_low = i;
      s.has_low = true;
    }
  }
  return s;
}

// Max coordinatewise projected-gradient residual after picking the best
// scalar multiplier for the equality constraint.
double kkt_violation(const std::vector<double>& beta, const std::vector<double>& grad,
                     const std::vector<int>& y, double c, const KktState& s) {
  double lambda = 0.0;
  if (s.has_up && s.has_low)
    lambda = 0.5 * (s.m + s.big_m);
  else if (s.has_up)
    lambda = s.m;
  else if (s.has_low)
    lambda = s.big_m;
  double worst = 0.0;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    const double d = grad[i] + lambda * static_cast<double>(y[i]);
    const double r = beta[i] - clip(beta[i] - d, 0.0, c);
    worst = std::max(worst, std::fabs(r));
  }
  return worst;
}

double dual_objective(const Matrix& q, const std::vector<double>& beta) {
  double quad = 0.0, lin = 0.0;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    if (beta[i] == 0.0) {
      continue;
    }
    double qi = 0.0;
    for (std::size_t j = 0; j < beta.size(); ++j) qi += q(i, j) * beta[j];
    quad += beta[i] * qi;
    lin += beta[i];
  }
  return -0.5 * quad + lin;
}

}  // namespace

DualSolution solve_dual(const Matrix& q, const std::vector<int>& labels, double c_l,
                        double tol, std::size_t max_iter) {
  const std::size_t l = labels.size();
  if (q.rows() != l || q.cols() != l) throw Error("solve_dual: Q/label size mismatch");
  if (c_l <= 0.0) throw Error("solve_dual: C_l must be positive");
  if (tol <= 0.0) throw Error("solve_dual: tol must be positive");
  for (int y : labels)
    if (y != 1 && y != -1) throw Error("solve_dual: labels must be +1 or -1");

  DualSolution sol;
  sol.beta.assign(l, 0.0);
  std::vector<double> grad(l, -1.0);  // Qb - 1 at b = 0

  for (std::size_t iter = 0; iter <= max_iter; ++iter) {
    const KktState s = scan(sol.beta, grad, labels, c_l);
    sol.kkt_violation = kkt_violation(sol.beta, grad, labels, c_l, s);
    if (sol.kkt_violation <= tol) break;
    if (!s.has_up || !s.has_low || s.m - s.big_m <= 0.0) break;  // feasible optimum
    if (iter == max_iter) {
      sol.objective = dual_objective(q, sol.beta);
      throw QpNonConvergence(
          "solve_dual: no convergence after " + std::to_string(max_iter) +
              " iterations, kkt residual " + std::to_string(sol.kkt_violation),
          sol);
    }

    const std::size_t i = s.arg_up, j = s.arg_low;
    const double yi = labels[i], yj = labels[j];
    // Step along (y_i e_i - y_j e_j) keeps the equality constraint exact.
    double eta = q(i, i) + q(j, j) - 2.0 * yi * yj * q(i, j);
    if (eta < kDegenerateCurvature) eta = kDegenerateCurvature;
    double step = -(yi * grad[i] - yj * grad[j]) / eta;
    const double room_i = yi > 0 ? c_l - sol.beta[i] : sol.beta[i];
    const double room_j = yj > 0 ? sol.beta[j] : c_l - sol.beta[j];
    step = std::min(step, std::min(room_i, room_j));
    if (step <= 0.0) break;  // numerically pinned

    sol.beta[i] += yi * step;
    sol.beta[j] -= yj * step;
    sol.beta[i] = clip(sol.beta[i], 0.0, c_l);
    sol.beta[j] = clip(sol.beta[j], 0.0, c_l);
    for (std::size_t t = 0; t < l; ++t)
      grad[t] += step * (yi * q(t, i) - yj * q(t, j));
    sol.trace.push_back(dual_objective(q, sol.beta));
  }

  // Final cleanup: snap near-bound coordinates and re-center the equality
  // constraint on a free coordinate so both constraints hold exactly.
  for (auto& b : sol.beta) {
    if (std::fabs(b) < 1e-14) b = 0.0;
    if (std::fabs(b - c_l) < 1e-14) b = c_l;
  }
  double drift = 0.0;
  for (std::size_t i = 0; i < l; ++i) drift += sol.beta[i] * labels[i];
  if (drift != 0.0) {
    for (std::size_t i = 0; i < l; ++i) {
      const double adjusted = sol.beta[i] - drift * labels[i];
      if (adjusted >= 0.0 && adjusted <= c_l) {
        sol.beta[i] = adjusted;
        break;
      }
    }
  }
  sol.objective = dual_objective(q, sol.beta);
  return sol;
}

}  // namespace s3vmr
