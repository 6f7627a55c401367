#pragma once

// Laguerre J-matrix basis
//
//   phi_n(r)    = a_n (lambda r)^{l+1} e^{-lambda r / 2} L_n^{2l+1}(lambda r)
//   phibar_n(r) = phi_n(r) / (lambda r)
//   a_n         = sqrt(lambda n! / Gamma(n + 2l + 2))
//
// With this normalization <phibar_n | phi_m> = delta_nm, the overlap and the
// free Hamiltonian are tridiagonal, and the Coulomb term is diagonal.

#include "jmat/linalg.hpp"

#include <optional>
#include <vector>

namespace jmat {

struct ChannelSpec {
  double lambda = 5.0; ///< basis scale, inverse bohr
  int l = 0;           ///< orbital angular momentum
  double Z = 0.0;      ///< Coulomb charge

  /// Throws std::invalid_argument unless lambda > 0 and l >= 0.
  void validate() const;
};

/// V(r) = v0 r^p e^{-a r}
struct PotentialSpec {
  double v0 = 0.0;
  int p = 0;
  double a = 1.0;

  void validate() const;
  double operator()(double r) const;
};

/// Symmetric tridiagonal matrix stored as diagonal and first off-diagonal.
class TridiagonalMatrix {
public:
  TridiagonalMatrix() = default;
  TridiagonalMatrix(std::vector<double> diag, std::vector<double> off);

  int size() const noexcept { return static_cast<int>(diag_.size()); }
  double diag(int n) const { return diag_.at(n); }
  /// Element (n, n+1) == (n+1, n).
  double off(int n) const { return off_.at(n); }
  /// Full element lookup, zero outside the band.
  double operator()(int n, int m) const;

  const std::vector<double>& diagonal() const noexcept { return diag_; }
  const std::vector<double>& off_diagonal() const noexcept { return off_; }

  num::RealMatrix to_dense() const;

private:
  std::vector<double> diag_;
  std::vector<double> off_;
};

/// <phi_n | phi_m>
TridiagonalMatrix overlap_matrix(int N, const ChannelSpec& channel);

/// <phi_n | H0 | phi_m> with H0 = -1/2 d^2/dr^2 + l(l+1)/(2r^2) + Z/r.
TridiagonalMatrix h0_matrix(int N, const ChannelSpec& channel);

/// J(E) = H0 - E * overlap. Rejects E <= 0.
TridiagonalMatrix j_matrix(int N, const ChannelSpec& channel, double E);

/// (k^2 + lambda^2/4)/2 * [-2(n+l+1) cos(theta), sqrt((n+1)(n+2l+2))] for Z = 0;
/// an independent evaluation of j_matrix used to cross-check it.
TridiagonalMatrix j_matrix_factored(int N, const ChannelSpec& channel, double E);

/// Normalization a_n via log-gamma.
double basis_norm(int n, const ChannelSpec& channel);

/// phi_0(r) .. phi_nmax(r). Stable for large lambda*r (the decay is folded
/// into the normalized recurrence).
std::vector<double> basis_values(int nmax, const ChannelSpec& channel, double r);

/// Dense N x N potential matrix, Gauss-Laguerre in x = (lambda + a) r.
num::RealMatrix potential_matrix(int N, const PotentialSpec& potential, const ChannelSpec& channel);

enum class ElementKind { overlap, kinetic, coulomb, potential };

struct OracleOptions {
  /// Quadrature order; 0 picks n + m + 2l + p + 8.
  int order = 0;
  /// Maximum relative change between order and 2*order.
  double tolerance = 1e-11;
};

/// Quadrature oracle for <phi_n | O | phi_m>, evaluated pointwise from
/// laguerre_eval (independent of the closed forms and of basis_values).
/// kinetic is the full -1/2 d^2 + l(l+1)/(2r^2) part, coulomb is <1/r>.
/// Throws jmat::NumericalError when doubling the order moves the value by more
/// than the tolerance.
double oracle_element(ElementKind kind, int n, int m, const ChannelSpec& channel,
                      const std::optional<PotentialSpec>& potential = std::nullopt,
                      const OracleOptions& options = {});

/// Quadrature value of <phibar_n | sqrt(2/(pi k)) sin(k r)>, the sine-like
/// continuum overlap. Orders are doubled until two successive estimates agree
/// to `tolerance`.
double continuum_sine_overlap(int n, const ChannelSpec& channel, double k, double tolerance = 1e-11);

} // namespace jmat
