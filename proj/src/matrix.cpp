#include "s3vmr/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "s3vmr/error.hpp"

namespace s3vmr {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error("matmul: dimension mismatch");
  Matrix c(a.rows(), b.cols());
  const std::int64_t n = static_cast<std::int64_t>(a.rows());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    double* ci = c.row(static_cast<std::size_t>(i));
    const double* ai = a.row(static_cast<std::size_t>(i));
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = ai[k];
      const double* bk = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

std::vector<double> matvec(const Matrix& a, const std::vector<double>& x) {
  if (a.cols() != x.size()) throw Error("matvec: dimension mismatch");
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* ai = a.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += ai[j] * x[j];
    y[i] = s;
  }
  return y;
}

bool is_symmetric(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (std::fabs(a(i, j) - a(j, i)) > tol) return false;
  return true;
}

void symmetrize(Matrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) {
      const double v = 0.5 * (a(i, j) + a(j, i));
      a(i, j) = v;
      a(j, i) = v;
    }
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  const double* p = a.data();
  const std::size_t n = a.rows() * a.cols();
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(p[i]));
  return m;
}

Matrix permute_symmetric(const Matrix& a, const std::vector<std::size_t>& perm) {
  if (a.rows() != a.cols() || perm.size() != a.rows())
    throw Error("permute_symmetric: dimension mismatch");
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* src = a.row(perm[i]);
    double* dst = out.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) dst[j] = src[perm[j]];
  }
  return out;
}

LuFactor lu_factor(Matrix a) {
  if (a.rows() != a.cols()) throw Error("lu_factor: matrix not square");
  const std::size_t n = a.rows();
  LuFactor f;
  f.piv.resize(n);
  const double scale = std::max(1.0, max_abs(a));
  const double tiny = 1e-13 * scale;
  f.min_pivot = std::numeric_limits<double>::infinity();

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::fabs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::fabs(a(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    f.piv[k] = p;
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
    f.min_pivot = std::min(f.min_pivot, best);
    if (best < tiny) {
      f.singular = true;
      continue;  // leave the rest of the column; solves will be rejected
    }
    const double inv = 1.0 / a(k, k);
    const std::int64_t lo = static_cast<std::int64_t>(k + 1);
    const std::int64_t hi = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
    for (std::int64_t ii = lo; ii < hi; ++ii) {
      const std::size_t i = static_cast<std::size_t>(ii);
      const double lik = a(i, k) * inv;
      a(i, k) = lik;
      const double* ak = a.row(k);
      double* airow = a.row(i);
      for (std::size_t j = k + 1; j < n; ++j) airow[j] -= lik * ak[j];
    }
  }
  f.lu = std::move(a);
  return f;
}

std::vector<double> LuFactor::solve(const std::vector<double>& rhs) const {
  const std::size_t n = lu.rows();
  if (rhs.size() != n) throw Error("LuFactor::solve: dimension mismatch");
  if (singular) throw Error("LuFactor::solve: singular factorization");
  std::vector<double> x = rhs;
  for (std::size_t k = 0; k < n; ++k) {
    if (piv[k] != k) std::swap(x[k], x[piv[k]]);
    for (std::size_t i = k + 1; i < n; ++i) x[i] -= lu(i, k) * x[k];
  }
  for (std::size_t k = n; k-- > 0;) {
    for (std::size_t j = k + 1; j < n; ++j) x[k] -= lu(k, j) * x[j];
    x[k] /= lu(k, k);
  }
  return x;
}

Matrix LuFactor::solve(const Matrix& rhs) const {
  const std::size_t n = lu.rows();
  if (rhs.rows() != n) throw Error("LuFactor::solve: dimension mismatch");
  Matrix x(n, rhs.cols());
  std::vector<double> col(n);
  for (std::size_t c = 0; c < rhs.cols(); ++c) {
    for (std::size_t i = 0; i < n; ++i) col[i] = rhs(i, c);
    std::vector<double> sol = solve(col);
    for (std::size_t i = 0; i < n; ++i) x(i, c) = sol[i];
  }
  return x;
}

}  // namespace s3vmr
