#include "jmat/numerics.hpp"

#include "jmat/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace jmat::num {

namespace {

void require_alpha(double alpha) {
  if (!(alpha > -1.0))
    throw std::invalid_argument("laguerre: alpha must exceed -1, got " + std::to_string(alpha));
}

// L_m(x) and L_{m-1}(x) for alpha = 0, rescaled to stay finite. The common
// scale factor cancels in the Newton ratio; log_scale accumulates it so the
// weights can be recovered in log space.
// Extended precision: the small roots of high orders are ill-conditioned
// enough that weights computed in double lose three digits.
struct ScaledPair {
  long double lm;
  long double lm1;
  long double log_scale;
};

ScaledPair laguerre_pair(int m, long double x) {
  constexpr long double big = 1e150L;
  long double p1 = 1.0L, p2 = 0.0L, log_scale = 0.0L;
  for (int j = 0; j < m; ++j) {
    long double const p3 = p2;
    p2 = p1;
    p1 = ((2.0 * j + 1.0 - x) * p2 - j * p3) / (j + 1.0);
    if (std::abs(p1) > big) {
      p1 /= big;
      p2 /= big;
      log_scale += std::log(big);
    }
  }
  return {p1, p2, log_scale};
}

} // namespace

double laguerre_eval(int n, double alpha, double x) {
  if (n < 0) throw std::invalid_argument("laguerre: degree must be nonnegative");
  require_alpha(alpha);
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + alpha - x;
  for (int j = 1; j < n; ++j) {
    double const next = ((2.0 * j + alpha + 1.0 - x) * cur - (j + alpha) * prev) / (j + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> laguerre_sequence(int nmax, double alpha, double x) {
  if (nmax < 0) throw std::invalid_argument("laguerre: degree must be nonnegative");
  require_alpha(alpha);
  std::vector<double> out(nmax + 1);
  out[0] = 1.0;
  if (nmax >= 1) out[1] = 1.0 + alpha - x;
  for (int j = 1; j < nmax; ++j)
    out[j + 1] = ((2.0 * j + alpha + 1.0 - x) * out[j] - (j + alpha) * out[j - 1]) / (j + 1.0);
  return out;
}

QuadratureRule gauss_laguerre(int m) {
  if (m < 1) throw std::invalid_argument("gauss_laguerre: order must be at least 1");
  constexpr double tol = 1e-14;
  constexpr int max_iter = 100;

  QuadratureRule rule;
  rule.order = m;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  rule.scaled_weights.resize(m);

  long double z = 0.0L;
  for (int i = 0; i < m; ++i) {
    if (i == 0) {
      z = 3.0 / (1.0 + 2.4 * m);
    } else if (i == 1) {
      z += 15.0 / (1.0 + 2.5 * m);
    } else {
      double const ai = i - 1;
      z += (1.0 + 2.55 * ai) / (1.9 * ai) * (z - rule.nodes[i - 2]);
    }

    ScaledPair p{};
    bool converged = false;
    long double last_step = std::numeric_limits<long double>::infinity();
    for (int it = 0; it < max_iter; ++it) {
      p = laguerre_pair(m, z);
      long double const dp = m * (p.lm - p.lm1) / z;
      long double const z1 = z;
      z = z1 - p.lm / dp;
      long double const step = std::abs(z - z1);
      // Small roots of high orders stall a few ulps above tol.
      if (step <= tol * std::abs(z) || (step <= 1e-12 * std::abs(z) && step >= last_step)) {
        converged = true;
        break;
      }
      last_step = step;
    }
    if (!converged || !(z > 0.0))
      throw NumericalError("gauss_laguerre: root " + std::to_string(i) + " of order " +
                           std::to_string(m) + " did not converge");
    if (i > 0 && !(z > rule.nodes[i - 1]))
      throw NumericalError("gauss_laguerre: roots collided at index " + std::to_string(i));

    p = laguerre_pair(m, z);
    // w = x / (m L_{m-1}(x))^2 at a root of L_m.
    long double const log_w =
        std::log(z) - 2.0L * (std::log(static_cast<long double>(m)) + std::log(std::abs(p.lm1)) + p.log_scale);
    rule.nodes[i] = static_cast<double>(z);
    rule.weights[i] = static_cast<double>(std::exp(log_w));
    rule.scaled_weights[i] = static_cast<double>(std::exp(log_w + z));
  }
  return rule;
}

double principal_angle(double angle, AnglePeriod period) {
  double const p = period == AnglePeriod::pi ? std::numbers::pi : 2.0 * std::numbers::pi;
  double r = std::fmod(angle, p);
  if (r > 0.5 * p) r -= p;
  if (r <= -0.5 * p) r += p;
  return r;
}

double nearest_branch(double angle, double reference, AnglePeriod period) {
  double const p = period == AnglePeriod::pi ? std::numbers::pi : 2.0 * std::numbers::pi;
  return angle + p * std::round((reference - angle) / p);
}

std::vector<double> unwrap_angle_sequence(std::span<const double> values, AnglePeriod period) {
  std::vector<double> out;
  out.reserve(values.size());
  if (values.empty()) return out;
  out.push_back(principal_angle(values[0], period));
  for (std::size_t i = 1; i < values.size(); ++i)
    out.push_back(nearest_branch(values[i], out.back(), period));
  return out;
}

} // namespace jmat::num
