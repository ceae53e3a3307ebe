// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bninfo {

/// Dense row-major matrix of doubles. Sized for desk-scale networks; no
/// sparse storage (structural zeros are skipped where it matters).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::span<double> row(std::size_t i) { return {a_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {a_.data() + i * cols_, cols_}; }
  const std::vector<double>& data() const { return a_; }

  Matrix transposed() const;
  bool same_shape(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

// Primary kernels. Row-parallel under OpenMP; every row is accumulated in a
// fixed order, so results are identical with and without threads.
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix mat_aat(const Matrix& a);  // a * a^T, symmetric output
double frobenius_sq(const Matrix& a);

/// Inverse of a lower-triangular matrix by forward substitution, one column
/// at a time, skipping structural zeros. Throws on a zero diagonal entry.
Matrix invert_lower_triangular(const Matrix& lower);

/// Solve L x = rhs for lower-triangular L.
std::vector<double> lower_tri_solve(const Matrix& lower, std::span<const double> rhs);

/// Cholesky factor L (lower) with A = L L^T. Throws on non-positive-definite input.
Matrix cholesky_lower(const Matrix& spd);

/// log det of an SPD matrix via its Cholesky factor.
double log_det_spd(const Matrix& spd);

/// SPD inverse via Cholesky (L -> L^-1 -> L^-T L^-1).
Matrix spd_inverse(const Matrix& spd);

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
/// values are descending; vectors has eigenvectors in matching columns.
struct SymEigen {
  std::vector<double> values;
  Matrix vectors;
};
SymEigen sym_eigen(const Matrix& sym);

/// P A P^T for a symmetric A: out[i][j] = A[perm[i]][perm[j]].
Matrix permute_sym(const Matrix& a, const std::vector<int>& perm);

namespace serial {
// Reference kernels: plain loops, no threading. Kept as oracles for the
// parallel kernels and timed against them by the kernel benchmark.
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix mat_aat(const Matrix& a);
double frobenius_sq(const Matrix& a);
Matrix invert_lower_triangular(const Matrix& lower);
}  // namespace serial

}  // namespace bninfo
