#include "s3vmr/kernels.hpp"

#include <cmath>
#include <cstdint>

#include "s3vmr/error.hpp"

namespace s3vmr {

double kernel_eval(const KernelSpec& spec, std::span<const double> x,
                   std::span<const double> y) {
  if (x.size() != y.size()) throw Error("kernel_eval: dimension mismatch");
  if (spec.kind == KernelSpec::Kind::linear) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
  }
  if (spec.rbf_gamma <= 0.0) throw Error("kernel_eval: rbf_gamma must be > 0");
  double d2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    d2 += d * d;
  }
  return std::exp(-spec.rbf_gamma * d2);
}

Matrix gram(const std::vector<std::vector<double>>& samples, const KernelSpec& spec) {
  const std::size_t n = samples.size();
  for (const auto& s : samples)
    if (s.size() != samples.front().size()) throw Error("gram: dimension mismatch");
  Matrix k(n, n);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t ii = 0; ii < static_cast<std::int64_t>(n); ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    for (std::size_t j = i; j < n; ++j) k(i, j) = kernel_eval(spec, samples[i], samples[j]);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) k(j, i) = k(i, j);
  return k;
}

std::vector<double> kernel_row(std::span<const double> x,
                               const std::vector<std::vector<double>>& training,
                               const KernelSpec& spec) {
  std::vector<double> row(training.size());
  for (std::size_t i = 0; i < training.size(); ++i)
    row[i] = kernel_eval(spec, x, training[i]);
  return row;
}

}  // namespace s3vmr
