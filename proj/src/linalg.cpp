#include "revyoung/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "revyoung/errors.hpp"

namespace revyoung {
namespace {

void require_square(std::size_t n) {
  if (n == 0 || n > kMaxDim) {
    throw PreconditionError("matrix order must be in [1, " + std::to_string(kMaxDim) + "], got " +
                            std::to_string(n));
  }
}

void require_same_order(std::size_t n1, std::size_t n2) {
  if (n1 != n2) {
    throw PreconditionError("dimension mismatch: " + std::to_string(n1) + " vs " +
                            std::to_string(n2));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> Matrix::column(std::size_t j) const {
  std::vector<double> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

Matrix operator*(const Matrix& x, const Matrix& y) {
  if (x.cols_ != y.rows_) {
    throw PreconditionError("matrix product shape mismatch: " + std::to_string(x.cols_) + " vs " +
                            std::to_string(y.rows_));
  }
  Matrix r(x.rows_, y.cols_);
  for (std::size_t i = 0; i < x.rows_; ++i) {
    for (std::size_t k = 0; k < x.cols_; ++k) {
      const double xik = x(i, k);
      if (xik == 0.0) continue;
      for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) += xik * y(k, j);
    }
  }
  return r;
}

Matrix operator-(const Matrix& x, const Matrix& y) {
  if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw PreconditionError("matrix difference shape mismatch");
  Matrix r = x;
  for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= y.data_[i];
  return r;
}

// ---------------------------------------------------------------------------
// SymMatrix

SymMatrix::SymMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) { require_square(n); }

SymMatrix SymMatrix::identity(std::size_t n) { return scalar(n, 1.0); }

SymMatrix SymMatrix::scalar(std::size_t n, double c) {
  SymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, c);
  return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> d) {
  SymMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, d[i]);
  return m;
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<double>>& rows, double symmetry_tol) {
  const std::size_t n = rows.size();
  require_square(n);
  double scale = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw PreconditionError("row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                              " entries, expected " + std::to_string(n));
    }
    for (double v : rows[i]) {
      if (!std::isfinite(v)) throw DomainError("matrix entries must be finite");
      scale = std::max(scale, std::abs(v));
    }
  }
  SymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double asym = std::abs(rows[i][j] - rows[j][i]);
      if (asym > symmetry_tol * scale) {
        std::ostringstream msg;
        msg << "matrix is not symmetric: |a(" << i << "," << j << ") - a(" << j << "," << i
            << ")| = " << asym;
        throw DomainError(msg.str());
      }
      m.set(i, j, 0.5 * (rows[i][j] + rows[j][i]));
    }
  }
  return m;
}

SymMatrix SymMatrix::symmetrize(const Matrix& x) {
  if (x.rows() != x.cols()) throw PreconditionError("symmetrize needs a square matrix");
  SymMatrix m(x.rows());
  for (std::size_t i = 0; i < m.n_; ++i)
    for (std::size_t j = i; j < m.n_; ++j) m.set(i, j, 0.5 * (x(i, j) + x(j, i)));
  return m;
}

void SymMatrix::set(std::size_t i, std::size_t j, double value) {
  if (!std::isfinite(value)) throw DomainError("matrix entries must be finite");
  data_[i * n_ + j] = value;
  data_[j * n_ + i] = value;
}

double SymMatrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double SymMatrix::frobenius() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

std::vector<double> SymMatrix::diagonal_entries() const {
  std::vector<double> d(n_);
  for (std::size_t i = 0; i < n_; ++i) d[i] = (*this)(i, i);
  return d;
}

std::vector<std::vector<double>> SymMatrix::to_rows() const {
  std::vector<std::vector<double>> rows(n_, std::vector<double>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) rows[i][j] = (*this)(i, j);
  return rows;
}

Matrix SymMatrix::to_matrix() const {
  Matrix m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
  return m;
}

SymMatrix operator+(const SymMatrix& x, const SymMatrix& y) {
  require_same_order(x.n_, y.n_);
  SymMatrix r = x;
  for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += y.data_[i];
  return r;
}

SymMatrix operator-(const SymMatrix& x, const SymMatrix& y) {
  require_same_order(x.n_, y.n_);
  SymMatrix r = x;
  for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= y.data_[i];
  return r;
}

SymMatrix operator*(double c, const SymMatrix& x) {
  SymMatrix r = x;
  for (double& v : r.data_) v *= c;
  return r;
}

// ---------------------------------------------------------------------------
// Eigensolver

EigenDecomp sym_eigen(const SymMatrix& a) {
  const std::size_t n = a.n();
  Matrix w = a.to_matrix();
  Matrix v = Matrix::identity(n);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += w(i, j) * w(i, j);
    return std::sqrt(s);
  };

  const double threshold = kJacobiRelativeOffNorm * a.frobenius();
  int sweep = 0;
  double off = off_norm();
  while (off > threshold) {
    if (sweep == kJacobiSweepCap) {
      std::ostringstream msg;
      msg << "Jacobi eigensolver did not converge in " << kJacobiSweepCap
          << " sweeps (n = " << n << ", off-diagonal mass " << off << ", threshold " << threshold
          << ")";
      throw NumericalError(msg.str());
    }
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = w(p, q);
        if (apq == 0.0) continue;
        const double app = w(p, p);
        const double aqq = w(q, q);
        // Negligible against both diagonal entries after the first few sweeps.
        const double g = 100.0 * std::abs(apq);
        if (sweep > 4 && std::abs(app) + g == std::abs(app) && std::abs(aqq) + g == std::abs(aqq)) {
          w(p, q) = 0.0;
          w(q, p) = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const double wkp = w(k, p);
          const double wkq = w(k, q);
          w(k, p) = c * wkp - s * wkq;
          w(k, q) = s * wkp + c * wkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double wpk = w(p, k);
          const double wqk = w(q, k);
          w(p, k) = c * wpk - s * wqk;
          w(q, k) = s * wpk + c * wqk;
        }
        w(p, q) = 0.0;
        w(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    off = off_norm();
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return w(i, i) < w(j, j); });

  EigenDecomp out;
  out.q = Matrix(n, n);
  out.eigenvalues.resize(n);
  out.sweeps = sweep;
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = w(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.q(i, k) = v(i, order[k]);
  }
  return out;
}

SymMatrix reassemble(const Matrix& q, std::span<const double> values) {
  const std::size_t n = q.rows();
  SymMatrix r(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < values.size(); ++k) s += q(i, k) * values[k] * q(j, k);
      r.set(i, j, s);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Spectral calculus

namespace {

bool in_domain(double x, SpectralDomain d) {
  switch (d) {
    case SpectralDomain::any: return true;
    case SpectralDomain::nonnegative: return x >= 0.0;
    case SpectralDomain::positive: return x > 0.0;
    case SpectralDomain::nonzero: return x != 0.0;
  }
  return false;
}

const char* domain_name(SpectralDomain d) {
  switch (d) {
    case SpectralDomain::any: return "any";
    case SpectralDomain::nonnegative: return "nonnegative";
    case SpectralDomain::positive: return "positive";
    case SpectralDomain::nonzero: return "nonzero";
  }
  return "?";
}

}  // namespace

SymMatrix matrix_function(const EigenDecomp& eig, const std::function<double(double)>& f,
                          SpectralDomain domain, bool domain_check) {
  std::vector<double> values(eig.eigenvalues.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double lam = eig.eigenvalues[k];
    if (domain_check && !in_domain(lam, domain)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "eigenvalue " << lam << " (index " << k << ") is outside the " << domain_name(domain)
          << " domain of the matrix function";
      throw DomainError(msg.str());
    }
    values[k] = f(lam);
  }
  return reassemble(eig.q, values);
}

SymMatrix matrix_function(const SymMatrix& a, const std::function<double(double)>& f,
                          SpectralDomain domain, bool domain_check) {
  return matrix_function(sym_eigen(a), f, domain, domain_check);
}

SymMatrix matrix_power(const SymMatrix& a, double exponent) {
  const bool natural = exponent >= 0.0 && exponent == std::floor(exponent);
  return matrix_function(
      a, [exponent](double x) { return std::pow(x, exponent); },
      natural ? SpectralDomain::any : SpectralDomain::positive);
}

SymMatrix matrix_sqrt(const SymMatrix& a) {
  return matrix_function(a, [](double x) { return std::sqrt(x); }, SpectralDomain::nonnegative);
}

SymMatrix matrix_log(const SymMatrix& a) {
  return matrix_function(a, [](double x) { return std::log(x); }, SpectralDomain::positive);
}

SymMatrix matrix_inverse(const SymMatrix& a) {
  return matrix_function(a, [](double x) { return 1.0 / x; }, SpectralDomain::nonzero);
}

SymMatrix congruence(const Matrix& x, const SymMatrix& s) {
  return SymMatrix::symmetrize(x * s.to_matrix() * x.transpose());
}

SymMatrix congruence(const SymMatrix& x, const SymMatrix& s) {
  require_same_order(x.n(), s.n());
  const Matrix xm = x.to_matrix();
  return SymMatrix::symmetrize(xm * s.to_matrix() * xm);
}

SpectralBounds spectral_bounds(const SymMatrix& a) {
  const EigenDecomp e = sym_eigen(a);
  return {e.eigenvalues.front(), e.eigenvalues.back()};
}

LoewnerResult loewner_geq(const SymMatrix& x, const SymMatrix& y, const Tolerance& tol) {
  require_same_order(x.n(), y.n());
  const EigenDecomp e = sym_eigen(x - y);
  LoewnerResult r;
  r.min_eigenvalue = e.eigenvalues.front();
  r.tolerance = tol.absolute({x.max_abs(), y.max_abs()});
  r.holds = r.min_eigenvalue >= -r.tolerance;
  if (!r.holds) r.witness = e.q.column(0);
  return r;
}

bool is_positive_definite(const SymMatrix& a) { return sym_eigen(a).eigenvalues.front() > 0.0; }

}  // namespace revyoung
