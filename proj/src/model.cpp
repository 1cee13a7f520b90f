#include "s3vmr/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace s3vmr {

namespace {

constexpr double kJitter = 1e-8;
constexpr double kResidualTol = 1e-8;
constexpr double kMarginSvTol = 1e-6;

void check_labels(const std::vector<int>& labels, std::size_t n_total) {
  if (labels.empty() || labels.size() > n_total)
    throw Error("labels must cover indices 0..l-1 with l <= l+u");
  for (int y : labels)
    if (y != 1 && y != -1) throw Error("labels must be +1 or -1");
}

std::vector<double> jt_y_beta(const std::vector<int>& labels,
                              const std::vector<double>& beta, std::size_t n_total) {
  std::vector<double> rhs(n_total, 0.0);
  for (std::size_t i = 0; i < labels.size(); ++i)
    rhs[i] = static_cast<double>(labels[i]) * beta[i];
  return rhs;
}

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

}  // namespace

void Hyperparameters::validate() const {
  if (c_l <= 0.0) throw Error("C_l must be positive");
  if (c_r < 0.0) throw Error("C_r must be nonnegative");
  if (c_s < 0.0) throw Error("C_s must be nonnegative");
  if (kernel.kind == KernelSpec::Kind::rbf && kernel.rbf_gamma <= 0.0)
    throw Error("rbf_gamma must be positive");
  if (graph.heat_t <= 0.0) throw Error("heat_t must be positive");
}

double Hyperparameters::realized_c_s(double gamma_i, std::size_t n_total) {
  if (n_total == 0) throw Error("realized_c_s: empty sample set");
  const double n = static_cast<double>(n_total);
  return gamma_i / (n * n);
}

QContext build_q(const Matrix& k, const Matrix& l_agree, const Matrix& l_graph,
                 const Hyperparameters& hyper, const std::vector<int>& labels) {
  hyper.validate();
  const std::size_t n = k.rows();
  if (k.cols() != n) throw Error("build_q: Gram matrix not square");
  check_labels(labels, n);
  const std::size_t l = labels.size();
  if (hyper.c_r > 0.0 && (l_agree.rows() != n || l_agree.cols() != n))
    throw Error("build_q: agreement Laplacian size mismatch");
  if (hyper.c_s > 0.0 && (l_graph.rows() != n || l_graph.cols() != n))
    throw Error("build_q: graph Laplacian size mismatch");

  QContext ctx;
  ctx.n_labeled = l;
  ctx.n_total = n;
  ctx.labels = labels;

  if (hyper.c_r == 0.0 && hyper.c_s == 0.0) {
    // M = I: Q reduces to the sign-conjugated labeled block of K.
    ctx.identity_m = true;
    ctx.q = Matrix(l, l);
    for (std::size_t a = 0; a < l; ++a)
      for (std::size_t b = 0; b < l; ++b)
        ctx.q(a, b) = labels[a] * labels[b] * k(a, b);
    symmetrize(ctx.q);
    return ctx;
  }

  // M = I + (C_r L + C_s L') K
  Matrix reg(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double v = 0.0;
      if (hyper.c_r > 0.0) v += hyper.c_r * l_agree(i, j);
      if (hyper.c_s > 0.0) v += hyper.c_s * l_graph(i, j);
      reg(i, j) = v;
    }
  Matrix m = matmul(reg, k);
  for (std::size_t i = 0; i < n; ++i) m(i, i) += 1.0;

  LuFactor lu = lu_factor(m);
  if (lu.singular) {
    for (std::size_t i = 0; i < n; ++i) m(i, i) += kJitter;
    lu = lu_factor(m);
    if (lu.singular) throw Error("ill-conditioned regularized system");
  }

  // X = M^{-1} J' Y, column b = y_b * (M^{-1} e_b)
  Matrix rhs(n, l);
  for (std::size_t b = 0; b < l; ++b) rhs(b, b) = static_cast<double>(labels[b]);
  Matrix x = lu.solve(rhs);

  ctx.q = Matrix(l, l);
  for (std::size_t a = 0; a < l; ++a)
    for (std::size_t b = 0; b < l; ++b) {
      double s = 0.0;
      for (std::size_t t = 0; t < n; ++t) s += k(a, t) * x(t, b);
      ctx.q(a, b) = static_cast<double>(labels[a]) * s;
    }
  symmetrize(ctx.q);
  ctx.m = std::move(m);
  ctx.m_lu = std::move(lu);
  return ctx;
}

std::vector<double> recover_alpha(const QContext& ctx, const DualSolution& dual,
                                  double* residual_out) {
  if (dual.beta.size() != ctx.n_labeled)
    throw Error("recover_alpha: beta size mismatch");
  std::vector<double> rhs = jt_y_beta(ctx.labels, dual.beta, ctx.n_total);
  if (ctx.identity_m) {
    if (residual_out) *residual_out = 0.0;
    return rhs;
  }
  std::vector<double> alpha = ctx.m_lu.solve(rhs);
  const double target = kResidualTol * std::max(1.0, inf_norm(rhs));
  double residual = 0.0;
  for (int pass = 0; pass < 3; ++pass) {
    std::vector<double> r = matvec(ctx.m, alpha);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = rhs[i] - r[i];
    residual = inf_norm(r);
    if (residual <= target) break;
    std::vector<double> dx = ctx.m_lu.solve(r);  // iterative refinement
    for (std::size_t i = 0; i < alpha.size(); ++i) alpha[i] += dx[i];
  }
  if (residual > target) throw Error("recover_alpha: residual above tolerance");
  if (residual_out) *residual_out = residual;
  return alpha;
}

double compute_bias(const Matrix& k, const std::vector<double>& alpha,
                    const DualSolution& dual, const std::vector<int>& labels,
                    double c_l) {
  const std::size_t l = labels.size();
  std::vector<double> raw(l, 0.0);  // (K alpha) on the labeled block
  for (std::size_t i = 0; i < l; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < alpha.size(); ++j) s += k(i, j) * alpha[j];
    raw[i] = s;
  }
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < l; ++i)
    if (dual.beta[i] > kMarginSvTol && dual.beta[i] < c_l - kMarginSvTol) {
      sum += static_cast<double>(labels[i]) - raw[i];
      ++count;
    }
  if (count > 0) return sum / static_cast<double>(count);

  // No margin SV: center the boundary between the classes' raw scores.
  double max_neg = -std::numeric_limits<double>::infinity();
  double min_pos = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < l; ++i) {
    if (labels[i] > 0)
      min_pos = std::min(min_pos, raw[i]);
    else
      max_neg = std::max(max_neg, raw[i]);
  }
  if (!std::isfinite(min_pos) || !std::isfinite(max_neg)) return 0.0;
  return -0.5 * (max_neg + min_pos);
}

FitResult fit_coefficients(const Matrix& k, const Matrix& l_agree,
                           const Matrix& l_graph, const std::vector<int>& labels,
                           const Hyperparameters& hyper, double tol) {
  QContext ctx = build_q(k, l_agree, l_graph, hyper, labels);
  FitResult fit;
  fit.dual = solve_dual(ctx.q, labels, hyper.c_l, tol);
  fit.alpha = recover_alpha(ctx, fit.dual, &fit.alpha_residual);
  fit.bias = compute_bias(k, fit.alpha, fit.dual, labels, hyper.c_l);
  return fit;
}

TrainedModel train(const std::vector<std::vector<double>>& samples,
                   const std::vector<int>& labels, const Hyperparameters& hyper,
                   const std::vector<FeatureVectorF1>& f1_vectors,
                   const std::vector<std::vector<double>>& f2_vectors) {
  hyper.validate();
  const std::size_t n = samples.size();
  if (labels.size() < 2 || labels.size() > n)
    throw Error("degenerate labeled set: need l >= 2 labeled samples");
  bool pos = false, neg = false;
  for (int y : labels) (y > 0 ? pos : neg) = true;
  if (!pos || !neg) throw Error("degenerate labeled set: both classes required");

  Matrix l_agree, l_graph;
  if (hyper.c_r > 0.0) {
    if (f1_vectors.size() != n) throw Error("train: f1 vector count mismatch");
    l_agree = laplacian(agreement_matrix(f1_vectors));
  }
  if (hyper.c_s > 0.0) {
    if (f2_vectors.size() != n) throw Error("train: f2 vector count mismatch");
    l_graph = laplacian(heat_adjacency(f2_vectors, hyper.graph));
  }
  const Matrix k = gram(samples, hyper.kernel);
  FitResult fit = fit_coefficients(k, l_agree, l_graph, labels, hyper);

  TrainedModel model;
  model.alpha = std::move(fit.alpha);
  model.bias = fit.bias;
  model.training_inputs = samples;
  model.hyper = hyper;
  model.labels = labels;
  model.alpha_residual = fit.alpha_residual;
  model.dual_objective = fit.dual.objective;
  model.kkt_violation = fit.dual.kkt_violation;
  return model;
}

double decision(const TrainedModel& model, std::span<const double> x) {
  const std::vector<double> row = kernel_row(x, model.training_inputs, model.hyper.kernel);
  double s = model.bias;
  for (std::size_t i = 0; i < row.size(); ++i) s += model.alpha[i] * row[i];
  return s;
}

int predict(const TrainedModel& model, std::span<const double> x) {
  return decision(model, x) > 0.0 ? 1 : -1;
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void save_model(const std::filesystem::path& path, const TrainedModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write model file: " + path.string());
  const std::size_t n = model.n_total();
  const std::size_t l = model.n_labeled();
  const std::size_t dim = model.training_inputs.empty() ? 0 : model.training_inputs[0].size();
  out << "s3vmr-model/1\n";
  out << "space " << model.space << "\n";
  if (model.hyper.kernel.kind == KernelSpec::Kind::linear)
    out << "kernel linear\n";
  else
    out << "kernel rbf " << fmt17(model.hyper.kernel.rbf_gamma) << "\n";
  out << "cl " << fmt17(model.hyper.c_l) << "\n";
  out << "cr " << fmt17(model.hyper.c_r) << "\n";
  out << "cs " << fmt17(model.hyper.c_s) << "\n";
  out << "heat_t " << fmt17(model.hyper.graph.heat_t) << "\n";
  out << "edge_threshold " << fmt17(model.hyper.graph.edge_threshold) << "\n";
  out << "l " << l << "\n";
  out << "u " << (n - l) << "\n";
  out << "dim " << dim << "\n";
  out << "labels";
  for (std::size_t i = 0; i < l; ++i) out << " " << i << ":" << model.labels[i];
  out << "\n";
  out << "bias " << fmt17(model.bias) << "\n";
  out << "alpha";
  for (double a : model.alpha) out << " " << fmt17(a);
  out << "\n";
  out << "inputs\n";
  for (const auto& x : model.training_inputs) {
    for (std::size_t j = 0; j < x.size(); ++j) out << (j ? " " : "") << fmt17(x[j]);
    out << "\n";
  }
  if (!out) throw Error("write failed: " + path.string());
}

TrainedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model file: " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "s3vmr-model/1")
    throw Error("unsupported model file version in " + path.string());
  TrainedModel model;
  std::size_t l = 0, u = 0, dim = 0;
  auto fail = [&](const std::string& what) -> Error {
    return Error("bad model file (" + what + "): " + path.string());
  };
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "space") {
      ls >> model.space;
    } else if (key == "kernel") {
      std::string kind;
      ls >> kind;
      if (kind == "linear") {
        model.hyper.kernel.kind = KernelSpec::Kind::linear;
      } else if (kind == "rbf") {
        model.hyper.kernel.kind = KernelSpec::Kind::rbf;
        if (!(ls >> model.hyper.kernel.rbf_gamma)) throw fail("rbf gamma");
      } else {
        throw fail("kernel kind");
      }
    } else if (key == "cl") {
      ls >> model.hyper.c_l;
    } else if (key == "cr") {
      ls >> model.hyper.c_r;
    } else if (key == "cs") {
      ls >> model.hyper.c_s;
    } else if (key == "heat_t") {
      ls >> model.hyper.graph.heat_t;
    } else if (key == "edge_threshold") {
      ls >> model.hyper.graph.edge_threshold;
    } else if (key == "l") {
      ls >> l;
    } else if (key == "u") {
      ls >> u;
    } else if (key == "dim") {
      ls >> dim;
    } else if (key == "labels") {
      std::string pair;
      while (ls >> pair) {
        const auto colon = pair.find(':');
        if (colon == std::string::npos) throw fail("label entry");
        model.labels.push_back(std::stoi(pair.substr(colon + 1)));
      }
    } else if (key == "bias") {
      ls >> model.bias;
    } else if (key == "alpha") {
      double a;
      while (ls >> a) model.alpha.push_back(a);
    } else if (key == "inputs") {
      for (std::size_t i = 0; i < l + u; ++i) {
        if (!std::getline(in, line)) throw fail("missing input row");
        std::istringstream rs(line);
        std::vector<double> x(dim);
        for (std::size_t j = 0; j < dim; ++j)
          if (!(rs >> x[j])) throw fail("short input row");
        model.training_inputs.push_back(std::move(x));
      }
    } else if (!key.empty()) {
      throw fail("unknown key " + key);
    }
  }
  if (model.labels.size() != l) throw fail("label count");
  if (model.alpha.size() != l + u) throw fail("alpha count");
  if (model.training_inputs.size() != l + u) throw fail("input count");
  return model;
}

}  // namespace s3vmr
