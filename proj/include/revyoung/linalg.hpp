#pragma once

// Dense real matrices, a cyclic Jacobi symmetric eigensolver and spectral
// calculus (powers, logs, Loewner comparisons) built on it.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "revyoung/tolerance.hpp"

namespace revyoung {

inline constexpr std::size_t kMaxDim = 64;

/// General dense row-major matrix.  Used for eigenvector factors and for the
/// intermediate products of congruences.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

  static Matrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  [[nodiscard]] std::span<const double> data() const { return data_; }
  [[nodiscard]] std::vector<double> column(std::size_t j) const;
  [[nodiscard]] Matrix transpose() const;
  [[nodiscard]] double max_abs() const;

  friend Matrix operator*(const Matrix& x, const Matrix& y);
  friend Matrix operator-(const Matrix& x, const Matrix& y);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Dense real symmetric matrix.  Storage is full, and every mutation writes both
/// (i, j) and (j, i), so the matrix is exactly symmetric at all times.
class SymMatrix {
 public:
  SymMatrix() = default;
  /// Zero matrix of order n, 1 <= n <= kMaxDim.
  explicit SymMatrix(std::size_t n);

  static SymMatrix identity(std::size_t n);
  static SymMatrix scalar(std::size_t n, double c);
  static SymMatrix diagonal(std::span<const double> d);
  /// Builds from row data.  Rejects ragged or non-square input, non-finite
  /// entries, and asymmetry above symmetry_tol * max(1, max|a_ij|); the accepted
  /// matrix is the average of the input and its transpose.
  static SymMatrix from_rows(const std::vector<std::vector<double>>& rows,
                             double symmetry_tol = 1e-12);
  /// (m + m^T) / 2 for a square m.
  static SymMatrix symmetrize(const Matrix& m);

  [[nodiscard]] std::size_t n() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double value);

  [[nodiscard]] double max_abs() const;
  [[nodiscard]] double frobenius() const;
  [[nodiscard]] std::vector<double> diagonal_entries() const;
  [[nodiscard]] std::vector<std::vector<double>> to_rows() const;
  [[nodiscard]] Matrix to_matrix() const;

  friend SymMatrix operator+(const SymMatrix& x, const SymMatrix& y);
  friend SymMatrix operator-(const SymMatrix& x, const SymMatrix& y);
  friend SymMatrix operator*(double c, const SymMatrix& x);
  friend bool operator==(const SymMatrix& x, const SymMatrix& y) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// A = q diag(eigenvalues) q^T with eigenvalues ascending.
struct EigenDecomp {
  Matrix q;
  std::vector<double> eigenvalues;
  int sweeps = 0;
};

inline constexpr int kJacobiSweepCap = 30;
inline constexpr double kJacobiRelativeOffNorm = 1e-14;

/// Cyclic Jacobi eigendecomposition.  Sweeps visit (p, q) in row-major order and
/// stop once the off-diagonal Frobenius mass drops below 1e-14 * ||A||_F.
/// Throws NumericalError when kJacobiSweepCap sweeps are not enough.
[[nodiscard]] EigenDecomp sym_eigen(const SymMatrix& a);

/// q diag(values) q^T, assembled symmetrically.
[[nodiscard]] SymMatrix reassemble(const Matrix& q, std::span<const double> values);

enum class SpectralDomain { any, nonnegative, positive, nonzero };

/// f(A) = q diag(f(lambda_i)) q^T.  When domain_check is set every eigenvalue
/// must lie in `domain`, otherwise DomainError names the offending eigenvalue.
[[nodiscard]] SymMatrix matrix_function(const SymMatrix& a, const std::function<double(double)>& f,
                                        SpectralDomain domain = SpectralDomain::any,
                                        bool domain_check = true);
[[nodiscard]] SymMatrix matrix_function(const EigenDecomp& eig, const std::function<double(double)>& f,
                                        SpectralDomain domain = SpectralDomain::any,
                                        bool domain_check = true);

[[nodiscard]] SymMatrix matrix_power(const SymMatrix& a, double exponent);
[[nodiscard]] SymMatrix matrix_sqrt(const SymMatrix& a);
[[nodiscard]] SymMatrix matrix_log(const SymMatrix& a);
[[nodiscard]] SymMatrix matrix_inverse(const SymMatrix& a);

/// X S X^T, symmetrized.
[[nodiscard]] SymMatrix congruence(const Matrix& x, const SymMatrix& s);
/// X S X for symmetric X, symmetrized.
[[nodiscard]] SymMatrix congruence(const SymMatrix& x, const SymMatrix& s);

struct SpectralBounds {
  double lower;  // smallest eigenvalue, m
  double upper;  // largest eigenvalue, M
};

[[nodiscard]] SpectralBounds spectral_bounds(const SymMatrix& a);

struct LoewnerResult {
  bool holds = false;
  double min_eigenvalue = 0.0;
  double tolerance = 0.0;       // absolute threshold that was applied
  std::vector<double> witness;  // unit eigenvector of min_eigenvalue, set when !holds
};

/// X >= Y in the Loewner order: min eig(X - Y) >= -tol * max(1, ||X||_max, ||Y||_max).
[[nodiscard]] LoewnerResult loewner_geq(const SymMatrix& x, const SymMatrix& y,
                                        const Tolerance& tol = {});

[[nodiscard]] bool is_positive_definite(const SymMatrix& a);

}  // namespace revyoung
