// Apache License, Version 2.0, refer to LICENSE.txt
#include "bninfo/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bninfo/error.hpp"
#include "bninfo/parallel.hpp"

namespace bninfo {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw error("matmul: shape mismatch");
  Matrix out(a.rows(), b.cols());
  parallel::for_range(a.rows(), [&](std::size_t i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  });
  return out;
}

Matrix mat_aat(const Matrix& a) {
  Matrix out(a.rows(), a.rows());
  parallel::for_range(a.rows(), [&](std::size_t i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * a(j, k);
      out(i, j) = s;
      out(j, i) = s;
    }
  });
  return out;
}

double frobenius_sq(const Matrix& a) {
  double s = 0.0;
  for (double v : a.data()) s += v * v;
  return s;
}

Matrix invert_lower_triangular(const Matrix& lower) {
  const std::size_t n = lower.rows();
  if (n != lower.cols()) throw error("invert_lower_triangular: not square");
  for (std::size_t i = 0; i < n; ++i)
    if (lower(i, i) == 0.0) throw error("invert_lower_triangular: zero diagonal entry");

  // Per-row nonzero columns, so forward substitution skips structural zeros.
  std::vector<std::vector<std::size_t>> nz(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < i; ++k)
      if (lower(i, k) != 0.0) nz[i].push_back(k);

  Matrix inv(n, n);
  parallel::for_range(n, [&](std::size_t j) {
    inv(j, j) = 1.0 / lower(j, j);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = 0.0;
      for (std::size_t k : nz[i])
        if (k >= j) s += lower(i, k) * inv(k, j);
      if (s != 0.0) inv(i, j) = -s / lower(i, i);
    }
  });
  return inv;
}

std::vector<double> lower_tri_solve(const Matrix& lower, std::span<const double> rhs) {
  const std::size_t n = lower.rows();
  if (rhs.size() != n) throw error("lower_tri_solve: size mismatch");
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (lower(i, i) == 0.0) throw error("lower_tri_solve: zero diagonal entry");
    double s = rhs[i];
    for (std::size_t k = 0; k < i; ++k) {
      const double lik = lower(i, k);
      if (lik != 0.0) s -= lik * x[k];
    }
    x[i] = s / lower(i, i);
  }
  return x;
}

Matrix cholesky_lower(const Matrix& spd) {
  const std::size_t n = spd.rows();
  if (n != spd.cols()) throw error("cholesky: not square");
  Matrix l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = spd(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      if (i == j) {
        if (s <= 0.0) throw error("cholesky: matrix is not positive definite");
        l(i, i) = std::sqrt(s);
      } else {
        l(i, j) = s / l(j, j);
      }
    }
  }
  return l;
}

double log_det_spd(const Matrix& spd) {
  Matrix l = cholesky_lower(spd);
  double s = 0.0;
  for (std::size_t i = 0; i < l.rows(); ++i) s += std::log(l(i, i));
  return 2.0 * s;
}

Matrix spd_inverse(const Matrix& spd) {
  Matrix linv = invert_lower_triangular(cholesky_lower(spd));
  // Sigma^-1 = L^-T L^-1
  const std::size_t n = spd.rows();
  Matrix out(n, n);
  parallel::for_range(n, [&](std::size_t i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = 0.0;
      for (std::size_t k = std::max(i, j); k < n; ++k) s += linv(k, i) * linv(k, j);
      out(i, j) = s;
      out(j, i) = s;
    }
  });
  return out;
}

SymEigen sym_eigen(const Matrix& sym) {
  const std::size_t n = sym.rows();
  if (n != sym.cols()) throw error("sym_eigen: not square");
  Matrix a = sym;
  Matrix v = Matrix::identity(n);

  // Cyclic Jacobi; converges quadratically for symmetric input.
  const double scale = std::max(1.0, frobenius_sq(sym));
  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off < 1e-28 * scale) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

  SymEigen out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = a(idx[j], idx[j]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, idx[j]);
  }
  return out;
}

Matrix permute_sym(const Matrix& a, const std::vector<int>& perm) {
  const std::size_t n = a.rows();
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out(i, j) = a(static_cast<std::size_t>(perm[i]), static_cast<std::size_t>(perm[j]));
  return out;
}

namespace serial {

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw error("matmul: shape mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      out(i, j) = s;
    }
  return out;
}

Matrix mat_aat(const Matrix& a) {
  Matrix out(a.rows(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.rows(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * a(j, k);
      out(i, j) = s;
    }
  return out;
}

double frobenius_sq(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * a(i, j);
  return s;
}

Matrix invert_lower_triangular(const Matrix& lower) {
  const std::size_t n = lower.rows();
  for (std::size_t i = 0; i < n; ++i)
    if (lower(i, i) == 0.0) throw error("invert_lower_triangular: zero diagonal entry");
  Matrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    inv(j, j) = 1.0 / lower(j, j);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = 0.0;
      for (std::size_t k = j; k < i; ++k) s += lower(i, k) * inv(k, j);
      inv(i, j) = -s / lower(i, i);
    }
  }
  return inv;
}

}  // namespace serial

}  // namespace bninfo
