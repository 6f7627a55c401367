#pragma once

#include <span>
#include <vector>

namespace jmat::num {

/// Generalized Laguerre polynomial L_n^alpha(x) by the upward three-term recurrence.
/// Throws std::invalid_argument for n < 0 or alpha <= -1.
double laguerre_eval(int n, double alpha, double x);

/// L_0^alpha(x) .. L_nmax^alpha(x) in one recurrence pass.
std::vector<double> laguerre_sequence(int nmax, double alpha, double x);

/// Gauss rule for the weight e^{-x} on [0, inf).
///
/// `scaled_weights[i] = weights[i] * exp(nodes[i])` is kept alongside the plain
/// weights: it stays representable for large orders where the plain weights
/// underflow, and is the natural weight when the integrand carries its own
/// exponential decay.
struct QuadratureRule {
  int order = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> scaled_weights;

  /// sum_i w_i f(x_i) for a polynomial-like f (the e^{-x} is implied).
  template <class F> double integrate(F&& f) const {
    double acc = 0.0;
    for (int i = 0; i < order; ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }

  /// sum_i w_i e^{x_i} g(x_i) for a g that already contains its decay.
  template <class F> double integrate_decaying(F&& g) const {
    double acc = 0.0;
    for (int i = 0; i < order; ++i) acc += scaled_weights[i] * g(nodes[i]);
    return acc;
  }
};

/// m-point Gauss-Laguerre rule. Roots by Newton iteration from asymptotic
/// starting values; throws std::invalid_argument for m < 1 and
/// jmat::NumericalError if a root fails to converge or roots collide.
QuadratureRule gauss_laguerre(int m);

enum class AnglePeriod { pi, two_pi };

/// Reduce angle to the principal branch (-P/2, P/2] of the given period P.
double principal_angle(double angle, AnglePeriod period);

/// Shift each value by a multiple of the period so neighbours differ by at most
/// half a period. The first value is reduced to the principal branch.
std::vector<double> unwrap_angle_sequence(std::span<const double> values, AnglePeriod period);

/// Shift `angle` by a multiple of the period to land nearest `reference`.
double nearest_branch(double angle, double reference, AnglePeriod period);

} // namespace jmat::num
