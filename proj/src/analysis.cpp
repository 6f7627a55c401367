#include "jmat/analysis.hpp"

#include "jmat/errors.hpp"
#include "jmat/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace jmat {

std::string to_string(Route route) { return route == Route::full ? "full" : "truncated"; }

void ResonanceSearch::validate() const {
  if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("resonance window needs 0 < lo < hi");
  if (!(tol >= 1e-6)) throw std::invalid_argument("resonance tolerance must be at least 1e-6");
  if (!(coarse_step > 0.0)) throw std::invalid_argument("resonance coarse step must be positive");
}

namespace {

constexpr double golden = 0.6180339887498949;

// d delta / dE by a central difference of the phase of S.
double time_delay(const std::function<cplx(double)>& S, double E) {
  double const h = 1e-6 * std::max(1.0, E);
  cplx const ratio = S(E + h) * std::conj(S(E - h));
  return std::arg(ratio) / (4.0 * h);
}

struct Bracketed {
  double x;
  double value;
  double width;
};

// Golden-section search for a maximum of f on [a, b].
Bracketed maximize(const std::function<double(double)>& f, double a, double b, double tol) {
  double c = b - golden * (b - a);
  double d = a + golden * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - golden * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + golden * (b - a);
      fd = f(d);
    }
  }
  double const x = 0.5 * (a + b);
  return {x, f(x), b - a};
}

} // namespace

std::optional<ResonanceEstimate> locate_resonance(const std::function<cplx(double)>& S, const ResonanceSearch& search) {
  search.validate();
  int const intervals = static_cast<int>(std::ceil((search.hi - search.lo) / search.coarse_step - 1e-9));
  int const count = std::max(intervals, 2) + 1;
  double const step = (search.hi - search.lo) / (count - 1);

  std::vector<double> E(count), height(count), delay(count);
  for (int i = 0; i < count; ++i) {
    E[i] = i + 1 == count ? search.hi : search.lo + i * step;
    height[i] = std::abs(1.0 - S(E[i]));
    delay[i] = time_delay(S, E[i]);
  }

  int best = -1;
  for (int i = 1; i + 1 < count; ++i)
    if (delay[i] >= delay[i - 1] && delay[i] >= delay[i + 1] && (best < 0 || delay[i] > delay[best])) best = i;
  if (best < 0) return std::nullopt;

  // The |1 - S| peak belonging to this resonance: the highest interior local
  // maximum within a few coarse steps of the steepest phase rise.
  int peak = -1;
  int const reach = std::max(4, static_cast<int>(std::ceil(0.05 / step)));
  for (int i = std::max(1, best - reach); i <= std::min(count - 2, best + reach); ++i)
    if (height[i] >= height[i - 1] && height[i] >= height[i + 1] && (peak < 0 || height[i] > height[peak])) peak = i;
  if (peak < 0 || height[peak] < search.min_height) return std::nullopt;

  ResonanceEstimate est;
  auto const td = maximize([&](double x) { return time_delay(S, x); }, E[best - 1], E[best + 1], search.tol);
  est.E_r = td.x;
  est.time_delay = td.value;
  est.refinement_width = td.width;
  auto const hp = maximize([&](double x) { return std::abs(1.0 - S(x)); }, E[peak - 1], E[peak + 1], search.tol);
  est.abs_peak_energy = hp.x;
  est.peak_height = hp.value;
  return est;
}

std::function<cplx(double)> route_function(const ScatteringModel& model, Route route) {
  return [&model, route](double E) {
    auto pick = [route](const SMatrixPoint& p) { return route == Route::full ? p.S_full : p.S_truncated; };
    try {
      return pick(model.s_matrix(E));
    } catch (const SingularSystemError&) {
      return pick(model.s_matrix(E * (1.0 + 1e-9)));
    }
  };
}

std::vector<PhaseRow> phase_scan(const DeformationSpec& deformation, const ChannelSpec& channel, const EnergyGrid& grid) {
  grid.validate();
  std::vector<PhaseRow> rows(grid.steps);
  double const h = (grid.emax - grid.emin) / (grid.steps - 1);
  std::optional<double> prev_a, prev_n;
  for (int i = 0; i < grid.steps; ++i) {
    auto& row = rows[i];
    row.E = i + 1 == grid.steps ? grid.emax : grid.emin + i * h;
    try {
      auto const numeric = tau_numeric(row.E, deformation, channel);
      row.tau_numeric = numeric.tau;
      row.defect = numeric.flux_defect;
      if (auto const analytic = tau_analytic(row.E, deformation, channel)) {
        row.tau_analytic = analytic->tau;
        row.defect = analytic->unimodularity_defect;
      }
    } catch (const SingularSystemError&) {
      row.status = "singular";
    } catch (const NumericalError&) {
      row.status = "numerical_error";
    }
    if (!row.ok()) {
      row.tau_numeric = std::numeric_limits<double>::quiet_NaN();
      row.tau_analytic.reset();
      continue;
    }
    if (prev_n) row.tau_numeric = num::nearest_branch(row.tau_numeric, *prev_n, num::AnglePeriod::pi);
    prev_n = row.tau_numeric;
    if (row.tau_analytic) {
      if (prev_a) row.tau_analytic = num::nearest_branch(*row.tau_analytic, *prev_a, num::AnglePeriod::pi);
      prev_a = row.tau_analytic;
    }
  }
  return rows;
}

} // namespace jmat
