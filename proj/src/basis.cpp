#include "jmat/basis.hpp"

#include "jmat/errors.hpp"
#include "jmat/numerics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace jmat {

void ChannelSpec::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("channel.lambda must be positive, got " + std::to_string(lambda));
  if (l < 0) throw std::invalid_argument("channel.l must be nonnegative, got " + std::to_string(l));
  if (!std::isfinite(Z)) throw std::invalid_argument("channel.Z must be finite");
}

void PotentialSpec::validate() const {
  if (!std::isfinite(v0)) throw std::invalid_argument("potential.v0 must be finite");
  if (p < 0) throw std::invalid_argument("potential.p must be nonnegative, got " + std::to_string(p));
  if (!(a > 0.0) || !std::isfinite(a))
    throw std::invalid_argument("potential.a must be positive, got " + std::to_string(a));
}

double PotentialSpec::operator()(double r) const { return v0 * std::pow(r, p) * std::exp(-a * r); }

TridiagonalMatrix::TridiagonalMatrix(std::vector<double> diag, std::vector<double> off)
    : diag_(std::move(diag)), off_(std::move(off)) {
  if (diag_.empty() || off_.size() + 1 != diag_.size())
    throw std::invalid_argument("TridiagonalMatrix: need N diagonal and N-1 off-diagonal entries");
}

double TridiagonalMatrix::operator()(int n, int m) const {
  if (n < 0 || m < 0 || n >= size() || m >= size()) throw std::out_of_range("TridiagonalMatrix index");
  if (n == m) return diag_[n];
  if (m == n + 1) return off_[n];
  if (n == m + 1) return off_[m];
  return 0.0;
}

num::RealMatrix TridiagonalMatrix::to_dense() const {
  num::RealMatrix d(diag_.size());
  for (int n = 0; n < size(); ++n) {
    d(n, n) = diag_[n];
    if (n + 1 < size()) d(n, n + 1) = d(n + 1, n) = off_[n];
  }
  return d;
}

namespace {

void require_size(int N) {
  if (N < 1) throw std::invalid_argument("matrix size must be at least 1, got " + std::to_string(N));
}

double coupling(int n, int l) { return std::sqrt((n + 1.0) * (n + 2.0 * l + 2.0)); }

} // namespace

TridiagonalMatrix overlap_matrix(int N, const ChannelSpec& channel) {
  require_size(N);
  channel.validate();
  std::vector<double> d(N), o(N - 1);
  for (int n = 0; n < N; ++n) d[n] = 2.0 * (n + channel.l + 1);
  for (int n = 0; n + 1 < N; ++n) o[n] = -coupling(n, channel.l);
  return {std::move(d), std::move(o)};
}

TridiagonalMatrix h0_matrix(int N, const ChannelSpec& channel) {
  require_size(N);
  channel.validate();
  double const lam2 = channel.lambda * channel.lambda;
  std::vector<double> d(N), o(N - 1);
  for (int n = 0; n < N; ++n) d[n] = 0.25 * lam2 * (n + channel.l + 1) + channel.Z * channel.lambda;
  for (int n = 0; n + 1 < N; ++n) o[n] = 0.125 * lam2 * coupling(n, channel.l);
  return {std::move(d), std::move(o)};
}

TridiagonalMatrix j_matrix(int N, const ChannelSpec& channel, double E) {
  if (!(E > 0.0)) throw std::invalid_argument("j_matrix: energy must be positive, got " + std::to_string(E));
  auto const h = h0_matrix(N, channel);
  auto const s = overlap_matrix(N, channel);
  std::vector<double> d(N), o(N - 1);
  for (int n = 0; n < N; ++n) d[n] = h.diag(n) - E * s.diag(n);
  for (int n = 0; n + 1 < N; ++n) o[n] = h.off(n) - E * s.off(n);
  return {std::move(d), std::move(o)};
}

TridiagonalMatrix j_matrix_factored(int N, const ChannelSpec& channel, double E) {
  require_size(N);
  channel.validate();
  if (!(E > 0.0)) throw std::invalid_argument("j_matrix_factored: energy must be positive");
  if (channel.Z != 0.0) throw UnsupportedChannelError("j_matrix_factored: only Z = 0 has the factored form");
  double const k2 = 2.0 * E;
  double const q = 0.25 * channel.lambda * channel.lambda;
  double const cos_theta = (k2 - q) / (k2 + q);
  double const scale = 0.5 * (k2 + q);
  std::vector<double> d(N), o(N - 1);
  for (int n = 0; n < N; ++n) d[n] = -2.0 * scale * (n + channel.l + 1) * cos_theta;
  for (int n = 0; n + 1 < N; ++n) o[n] = scale * coupling(n, channel.l);
  return {std::move(d), std::move(o)};
}

double basis_norm(int n, const ChannelSpec& channel) {
  return std::sqrt(channel.lambda * std::exp(std::lgamma(n + 1.0) - std::lgamma(n + 2.0 * channel.l + 2.0)));
}

std::vector<double> basis_values(int nmax, const ChannelSpec& channel, double r) {
  if (nmax < 0) throw std::invalid_argument("basis_values: nmax must be nonnegative");
  std::vector<double> out(nmax + 1, 0.0);
  double const x = channel.lambda * r;
  if (!(x > 0.0)) return out;
  double const alpha = 2.0 * channel.l + 1.0;
  // Orthonormal Laguerre recurrence: lhat_n = sqrt(n!/Gamma(n+alpha+1)) L_n^alpha,
  // with the prefactor sqrt(lambda) x^{l+1} e^{-x/2} kept in log form.
  double const log_prefactor =
      0.5 * std::log(channel.lambda) + (channel.l + 1) * std::log(x) - 0.5 * x - 0.5 * std::lgamma(alpha + 1.0);
  constexpr double big = 1e150;
  double log_scale = 0.0;
  double prev = 0.0;
  double cur = 1.0;
  out[0] = std::exp(log_prefactor);
  for (int n = 0; n < nmax; ++n) {
    double const next =
        ((2.0 * n + alpha + 1.0 - x) * cur - std::sqrt(n * (n + alpha)) * prev) / std::sqrt((n + 1.0) * (n + alpha + 1.0));
    prev = cur;
    cur = next;
    if (std::abs(cur) > big) {
      cur /= big;
      prev /= big;
      log_scale += std::log(big);
    }
    out[n + 1] = cur * std::exp(log_prefactor + log_scale);
  }
  return out;
}

num::RealMatrix potential_matrix(int N, const PotentialSpec& potential, const ChannelSpec& channel) {
  require_size(N);
  channel.validate();
  potential.validate();
  num::RealMatrix v(N);
  if (potential.v0 == 0.0) return v;

  // Integrand phi_n phi_m V is a polynomial of degree 2N + 2l + p times e^{-x}.
  int const order = 2 * N + 16 + channel.l + (potential.p + 1) / 2;
  auto const rule = num::gauss_laguerre(order);
  double const rate = channel.lambda + potential.a;
  for (int q = 0; q < rule.order; ++q) {
    double const r = rule.nodes[q] / rate;
    auto const phi = basis_values(N - 1, channel, r);
    // scaled weight * e^{-x} recovers the plain weight, but phi already
    // carries e^{-lambda r}, so only the potential's own decay is removed.
    double const w = rule.scaled_weights[q] / rate * potential.v0 * std::pow(r, potential.p) *
                     std::exp(-potential.a * r);
    for (int n = 0; n < N; ++n) {
      double const wn = w * phi[n];
      for (int m = n; m < N; ++m) v(n, m) += wn * phi[m];
    }
  }
  for (int n = 0; n < N; ++n)
    for (int m = 0; m < n; ++m) v(n, m) = v(m, n);
  return v;
}

namespace {

// Pointwise phi_n and, on request, its r-derivative from laguerre_eval.
struct PointValue {
  double value;
  double derivative;
};

PointValue oracle_basis(int n, const ChannelSpec& ch, double r) {
  double const alpha = 2.0 * ch.l + 1.0;
  double const x = ch.lambda * r;
  double const an = basis_norm(n, ch);
  double const ln = num::laguerre_eval(n, alpha, x);
  double const dln = n == 0 ? 0.0 : -num::laguerre_eval(n - 1, alpha + 1.0, x);
  double const env = std::pow(x, ch.l) * std::exp(-0.5 * x);
  double const value = an * x * env * ln;
  // d/dr = lambda d/dx of a x^{l+1} e^{-x/2} L(x)
  double const derivative = ch.lambda * an * env * ((ch.l + 1.0 - 0.5 * x) * ln + x * dln);
  return {value, derivative};
}

struct OracleValue {
  double value;
  double magnitude; ///< quadrature sum of |integrand|, the cancellation scale
};

OracleValue oracle_at_order(ElementKind kind, int n, int m, const ChannelSpec& ch,
                       const std::optional<PotentialSpec>& pot, int order) {
  auto const rule = num::gauss_laguerre(order);
  double const rate = ch.lambda + (kind == ElementKind::potential ? pot->a : 0.0);
  double const cent = 0.5 * ch.l * (ch.l + 1.0);
  OracleValue out{0.0, 0.0};
  for (int q = 0; q < rule.order; ++q) {
    double const x = rule.nodes[q];
    double const r = x / rate;
    auto const a = oracle_basis(n, ch, r);
    auto const b = oracle_basis(m, ch, r);
    double f = 0.0;
    switch (kind) {
    case ElementKind::overlap: f = a.value * b.value; break;
    case ElementKind::kinetic: f = 0.5 * a.derivative * b.derivative + cent * a.value * b.value / (r * r); break;
    case ElementKind::coulomb: f = a.value * b.value / r; break;
    case ElementKind::potential: f = a.value * b.value * (*pot)(r); break;
    }
    double const term = rule.scaled_weights[q] * f / rate;
    out.value += term;
    out.magnitude += std::abs(term);
  }
  return out;
}

} // namespace

double oracle_element(ElementKind kind, int n, int m, const ChannelSpec& channel,
                      const std::optional<PotentialSpec>& potential, const OracleOptions& options) {
  if (n < 0 || m < 0) throw std::invalid_argument("oracle_element: indices must be nonnegative");
  channel.validate();
  if (kind == ElementKind::potential) {
    if (!potential) throw std::invalid_argument("oracle_element: potential kind needs a PotentialSpec");
    potential->validate();
  }
  int const p = kind == ElementKind::potential ? potential->p : 0;
  int const minimum = n + m + 2 * channel.l + 8;
  int const order = options.order > 0 ? std::max(options.order, minimum) : minimum + p;
  double const first = oracle_at_order(kind, n, m, channel, potential, order).value;
  auto const second_eval = oracle_at_order(kind, n, m, channel, potential, 2 * order);
  double const second = second_eval.value;
  if (std::abs(second - first) > options.tolerance * std::max(std::abs(second), second_eval.magnitude))
    throw NumericalError("oracle_element: quadrature did not converge for (" + std::to_string(n) + ", " +
                         std::to_string(m) + "): " + std::to_string(first) + " vs " + std::to_string(second));
  return second;
}

double continuum_sine_overlap(int n, const ChannelSpec& channel, double k, double tolerance) {
  channel.validate();
  if (!(k > 0.0)) throw std::invalid_argument("continuum_sine_overlap: k must be positive");
  double const amp = std::sqrt(2.0 / (std::numbers::pi * k));
  // x = lambda r / 2 leaves e^{-x} as the weight; the oscillating remainder is entire.
  auto estimate = [&](int order) {
    auto const rule = num::gauss_laguerre(order);
    double const rate = 0.5 * channel.lambda;
    return rule.integrate_decaying([&](double x) {
      double const r = x / rate;
      auto const v = oracle_basis(n, channel, r);
      double const bar = v.value / (channel.lambda * r);
      return bar * amp * std::sin(k * r) / rate;
    });
  };
  int order = 64 + 2 * n;
  double prev = estimate(order);
  for (int attempt = 0; attempt < 3; ++attempt) {
    order *= 2;
    double const next = estimate(order);
    if (std::abs(next - prev) <= tolerance * std::max(std::abs(next), 1e-3)) return next;
    prev = next;
  }
  throw NumericalError("continuum_sine_overlap: no convergence for n = " + std::to_string(n));
}

} // namespace jmat
