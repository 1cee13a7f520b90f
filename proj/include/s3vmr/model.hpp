#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "s3vmr/features.hpp"
#include "s3vmr/graph.hpp"
#include "s3vmr/kernels.hpp"
#include "s3vmr/matrix.hpp"
#include "s3vmr/qp.hpp"

namespace s3vmr {

struct Hyperparameters {
  double c_l = 0.6;  // labeled hinge-loss weight, > 0
  double c_r = 0.2;  // feature-agreement regularizer weight, >= 0
  double c_s = 0.2;  // intrinsic smoothness weight (realized coefficient), >= 0
  KernelSpec kernel;
  GraphConfig graph;

  void validate() const;

  // Convenience: C_s expressed as gamma_I with its natural 1/(l+u)^2 scale.
  static double realized_c_s(double gamma_i, std::size_t n_total);
};

// Everything needed to go from the dual solution back to the expansion
// coefficients: Q itself plus the regularized system M = I + (C_r L + C_s L')K.
struct QContext {
  Matrix q;            // l x l, symmetric
  Matrix m;            // (l+u) x (l+u); empty when identity_m
  LuFactor m_lu;       // factorization of m; unused when identity_m
  bool identity_m = false;
  std::size_t n_labeled = 0;
  std::size_t n_total = 0;
  std::vector<int> labels;
};

// Q = Y J K M^{-1} J' Y via linear solves. Labeled samples occupy indices
// 0..l-1. Adds 1e-8 diagonal jitter to M once if the factorization reports
// near-singularity; fails if that does not help.
QContext build_q(const Matrix& k, const Matrix& l_agree, const Matrix& l_graph,
                 const Hyperparameters& hyper, const std::vector<int>& labels);

// Solves M a = J' Y b. Residual is checked against
// 1e-8 * max(1, |J'Yb|_inf) with one pass of iterative refinement.
std::vector<double> recover_alpha(const QContext& ctx, const DualSolution& dual,
                                  double* residual_out = nullptr);

// Margin-SV average of y_i - (K a)_i; when no margin SV exists, centers the
// boundary midway between the classes' raw scores.
double compute_bias(const Matrix& k, const std::vector<double>& alpha,
                    const DualSolution& dual, const std::vector<int>& labels,
                    double c_l);

struct TrainedModel {
  std::vector<double> alpha;  // length l + u
  double bias = 0.0;
  std::vector<std::vector<double>> training_inputs;
  Hyperparameters hyper;
  std::vector<int> labels;  // labels of indices 0..l-1
  std::string space = "custom";

  // Diagnostics from training; not serialized.
  double alpha_residual = 0.0;
  double dual_objective = 0.0;
  double kkt_violation = 0.0;

  std::size_t n_labeled() const { return labels.size(); }
  std::size_t n_total() const { return alpha.size(); }
};

// Coefficients-only fit on prebuilt operators; used by train() and by the
// cross-validation loop (which permutes precomputed matrices per fold).
struct FitResult {
  std::vector<double> alpha;
  double bias = 0.0;
  DualSolution dual;
  double alpha_residual = 0.0;
};
FitResult fit_coefficients(const Matrix& k, const Matrix& l_agree,
                           const Matrix& l_graph, const std::vector<int>& labels,
                           const Hyperparameters& hyper, double tol = 1e-8);

// Full pipeline: agreement and heat-kernel Laplacians, Gram matrix, dual
// solve, alpha recovery, bias. f1_vectors/f2_vectors may be empty when the
// corresponding weight is zero.
TrainedModel train(const std::vector<std::vector<double>>& samples,
                   const std::vector<int>& labels, const Hyperparameters& hyper,
                   const std::vector<FeatureVectorF1>& f1_vectors,
                   const std::vector<std::vector<double>>& f2_vectors);

double decision(const TrainedModel& model, std::span<const double> x);
int predict(const TrainedModel& model, std::span<const double> x);  // ties to -1

// Text format "s3vmr-model/1", 17 significant digits.
void save_model(const std::filesystem::path& path, const TrainedModel& model);
TrainedModel load_model(const std::filesystem::path& path);

}  // namespace s3vmr
