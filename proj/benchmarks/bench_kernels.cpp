// Compares the OpenMP kernels against their serial reference on matched
// inputs: wall time, speedup and max absolute deviation.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#else
#include <chrono>
#endif

#include "s3vmr/features.hpp"
#include "s3vmr/graph.hpp"
#include "s3vmr/kernels.hpp"
#include "s3vmr/matrix.hpp"
#include "s3vmr/reference.hpp"
#include "s3vmr/rng.hpp"

using namespace s3vmr;

namespace {

double now() {
#ifdef _OPENMP
  return omp_get_wtime();
#else
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
#endif
}

double diff(const Matrix& a, const Matrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double d = std::fabs(a(i, j) - b(i, j));
      if (d > m) m = d;
    }
  return m;
}

template <typename SerialFn, typename ParallelFn>
void report(const char* name, int reps, SerialFn serial, ParallelFn parallel) {
  Matrix s, p;
  double t0 = now();
  for (int r = 0; r < reps; ++r) s = serial();
  const double ts = (now() - t0) / reps;
  t0 = now();
  for (int r = 0; r < reps; ++r) p = parallel();
  const double tp = (now() - t0) / reps;
  std::printf("%-18s serial %8.4fs  parallel %8.4fs  speedup %5.2fx  max|d| %.3g\n",
              name, ts, tp, tp > 0 ? ts / tp : 0.0, diff(s, p));
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t n = 600;
  std::size_t dim = 64;
  int reps = 3;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--n") n = std::strtoul(argv[i + 1], nullptr, 10);
    if (flag == "--dim") dim = std::strtoul(argv[i + 1], nullptr, 10);
    if (flag == "--reps") reps = std::atoi(argv[i + 1]);
  }
#ifdef _OPENMP
  std::printf("n=%zu dim=%zu reps=%d threads=%d\n", n, dim, reps, omp_get_max_threads());
#else
  std::printf("n=%zu dim=%zu reps=%d (OpenMP disabled)\n", n, dim, reps);
#endif

  Rng rng(42);
  std::vector<std::vector<double>> samples(n, std::vector<double>(dim));
  for (auto& x : samples)
    for (auto& v : x) v = rng.unit();
  std::vector<FeatureVectorF1> f1(n);
  for (auto& v : f1)
    for (auto& b : v.flags) b = rng.chance(0.3) ? 1 : 0;
  Matrix a(n, n), b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = rng.unit();
      b(i, j) = rng.unit();
    }
  KernelSpec linear;
  GraphConfig cfg{1.0, 1e-6};

  report("matmul", reps, [&] { return reference::matmul(a, b); },
         [&] { return matmul(a, b); });
  report("gram/linear", reps, [&] { return reference::gram(samples, linear); },
         [&] { return gram(samples, linear); });
  report("heat_adjacency", reps, [&] { return reference::heat_adjacency(samples, cfg); },
         [&] { return heat_adjacency(samples, cfg); });
  report("agreement", reps, [&] { return reference::agreement_matrix(f1); },
         [&] { return agreement_matrix(f1); });
  return 0;
}
