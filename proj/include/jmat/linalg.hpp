#pragma once

#include "jmat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace jmat::num {

using cplx = std::complex<double>;

/// Square dense matrix, row-major.
template <class T> class DenseMatrix {
public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, T{}) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t size() const noexcept { return n_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  std::span<const T> data() const noexcept { return data_; }

  /// max |A_ij|
  double max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  bool is_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& v) {
      if constexpr (std::is_same_v<T, cplx>)
        return std::isfinite(v.real()) && std::isfinite(v.imag());
      else
        return std::isfinite(v);
    });
  }

  /// |A_ij - A_ji| < rel_tol * max|A|
  bool is_symmetric(double rel_tol = 1e-12) const {
    double const scale = std::max(max_abs(), 1e-300);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if (std::abs((*this)(i, j) - (*this)(j, i)) >= rel_tol * scale) return false;
    return true;
  }

  std::vector<T> multiply(std::span<const T> x) const {
    if (x.size() != n_) throw std::invalid_argument("DenseMatrix::multiply: dimension mismatch");
    std::vector<T> y(n_, T{});
    for (std::size_t i = 0; i < n_; ++i) {
      T acc{};
      for (std::size_t j = 0; j < n_; ++j) acc += (*this)(i, j) * x[j];
      y[i] = acc;
    }
    return y;
  }

  DenseMatrix& operator+=(const DenseMatrix& other) {
    if (other.n_ != n_) throw std::invalid_argument("DenseMatrix: dimension mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
  }

private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

using RealMatrix = DenseMatrix<double>;
using ComplexMatrix = DenseMatrix<cplx>;

namespace detail {
inline double conj_if(double v) { return v; }
inline cplx conj_if(cplx v) { return std::conj(v); }
inline double unit_direction(double v) { return v >= 0.0 ? 1.0 : -1.0; }
inline cplx unit_direction(cplx v) {
  double const a = std::abs(v);
  return a == 0.0 ? cplx{1.0} : v / a;
}
} // namespace detail

/// LU factorization with partial (row) pivoting, P A = L U.
template <class T> class LuFactorization {
public:
  explicit LuFactorization(DenseMatrix<T> a) : lu_(std::move(a)), perm_(lu_.size()) {
    std::size_t const n = lu_.size();
    if (n == 0) throw std::invalid_argument("LuFactorization: empty matrix");
    if (!lu_.is_finite()) throw NumericalError("LuFactorization: non-finite entries");

    for (std::size_t j = 0; j < n; ++j) {
      double colsum = 0.0;
      for (std::size_t i = 0; i < n; ++i) colsum += std::abs(lu_(i, j));
      norm1_ = std::max(norm1_, colsum);
    }
    for (std::size_t i = 0; i < n; ++i) perm_[i] = i;

    for (std::size_t k = 0; k < n; ++k) {
      std::size_t piv = k;
      double best = std::abs(lu_(k, k));
      for (std::size_t i = k + 1; i < n; ++i) {
        if (double const v = std::abs(lu_(i, k)); v > best) {
          best = v;
          piv = i;
        }
      }
      if (best == 0.0) {
        singular_ = true;
        continue;
      }
      if (piv != k) {
        for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
        std::swap(perm_[k], perm_[piv]);
        sign_flips_ ^= 1;
      }
      T const inv = T{1} / lu_(k, k);
      for (std::size_t i = k + 1; i < n; ++i) {
        T const f = lu_(i, k) * inv;
        lu_(i, k) = f;
        if (f == T{}) continue;
        for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
      }
    }
  }

  std::size_t size() const noexcept { return lu_.size(); }
  bool exactly_singular() const noexcept { return singular_; }

  /// Solve A x = b.
  std::vector<T> solve(std::span<const T> b) const {
    std::size_t const n = size();
    if (b.size() != n) throw std::invalid_argument("LuFactorization::solve: dimension mismatch");
    if (singular_) throw SingularSystemError("LuFactorization::solve: exactly singular matrix", INFINITY);
    std::vector<T> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
    for (std::size_t ii = n; ii-- > 0;) {
      for (std::size_t j = ii + 1; j < n; ++j) x[ii] -= lu_(ii, j) * x[j];
      x[ii] /= lu_(ii, ii);
    }
    return x;
  }

  /// Solve A^H x = b.
  std::vector<T> solve_adjoint(std::span<const T> b) const {
    std::size_t const n = size();
    if (singular_) throw SingularSystemError("LuFactorization::solve_adjoint: exactly singular matrix", INFINITY);
    // A^H = U^H L^H P
    std::vector<T> y(b.begin(), b.end());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) y[i] -= detail::conj_if(lu_(j, i)) * y[j];
      y[i] /= detail::conj_if(lu_(i, i));
    }
    for (std::size_t ii = n; ii-- > 0;)
      for (std::size_t j = ii + 1; j < n; ++j) y[ii] -= detail::conj_if(lu_(j, ii)) * y[j];
    std::vector<T> x(n);
    for (std::size_t i = 0; i < n; ++i) x[perm_[i]] = y[i];
    return x;
  }

  /// ||A||_1 * est(||A^{-1}||_1), Hager's estimator with Higham's extra probe.
  double condition_estimate() const {
    if (singular_) return INFINITY;
    std::size_t const n = size();
    std::vector<T> x(n, T{1.0 / static_cast<double>(n)});
    double est = 0.0;
    std::size_t last_j = n;
    for (int iter = 0; iter < 5; ++iter) {
      auto const y = solve(x);
      double ynorm = 0.0;
      for (const auto& v : y) ynorm += std::abs(v);
      if (iter > 0 && ynorm <= est) break;
      est = ynorm;
      std::vector<T> xi(n);
      for (std::size_t i = 0; i < n; ++i) xi[i] = detail::unit_direction(y[i]);
      auto const z = solve_adjoint(xi);
      std::size_t j = 0;
      double zmax = 0.0;
      T ztx{};
      for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(z[i]) > zmax) {
          zmax = std::abs(z[i]);
          j = i;
        }
        ztx += detail::conj_if(z[i]) * x[i];
      }
      if (zmax <= std::real(ztx) || j == last_j) break;
      std::fill(x.begin(), x.end(), T{});
      x[j] = T{1};
      last_j = j;
    }
    std::vector<T> alt(n);
    for (std::size_t i = 0; i < n; ++i) {
      double const s = (i % 2 == 0 ? 1.0 : -1.0) * (1.0 + (n > 1 ? double(i) / double(n - 1) : 0.0));
      alt[i] = T{s};
    }
    auto const w = solve(alt);
    double wnorm = 0.0;
    for (const auto& v : w) wnorm += std::abs(v);
    est = std::max(est, 2.0 * wnorm / (3.0 * double(n)));
    return norm1_ * est;
  }

  /// log|det A| and the unit-modulus phase of det A.
  std::pair<double, T> log_abs_determinant() const {
    if (singular_) return {-INFINITY, T{}};
    double logabs = 0.0;
    T phase{sign_flips_ ? -1.0 : 1.0};
    for (std::size_t i = 0; i < size(); ++i) {
      logabs += std::log(std::abs(lu_(i, i)));
      phase *= detail::unit_direction(lu_(i, i));
    }
    return {logabs, phase};
  }

private:
  DenseMatrix<T> lu_;
  std::vector<std::size_t> perm_;
  double norm1_ = 0.0;
  bool singular_ = false;
  bool sign_flips_ = false;
};

inline constexpr double default_condition_limit = 1e14;

/// Solve A x = b by partial-pivot LU. Throws SingularSystemError when A is
/// exactly singular or its condition estimate exceeds `condition_limit`.
template <class T>
std::vector<T> solve_linear(const DenseMatrix<T>& a, std::span<const T> b,
                            double condition_limit = default_condition_limit) {
  if (a.size() != b.size()) throw std::invalid_argument("solve_linear: dimension mismatch");
  LuFactorization<T> lu(a);
  double const cond = lu.condition_estimate();
  if (!(cond <= condition_limit))
    throw SingularSystemError("solve_linear: matrix is numerically singular (condition estimate " +
                                  std::to_string(cond) + ")",
                              cond);
  return lu.solve(b);
}

} // namespace jmat::num
