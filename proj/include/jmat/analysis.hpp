#pragma once

#include "jmat/deformation.hpp"
#include "jmat/scattering.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace jmat {

enum class Route { full, truncated };

std::string to_string(Route route);

struct ResonanceSearch {
  double lo = 3.0;
  double hi = 4.0;
  double tol = 1e-6;           ///< final bracket width
  double coarse_step = 0.005;  ///< upper bound on the coarse spacing
  double min_height = 0.5;     ///< |1 - S| a sharp resonance must reach

  void validate() const;
};

/// Resonance energy is where the phase shift rises fastest (maximum of
/// d delta / dE, the Wigner time delay). The |1 - S| maximum is reported
/// alongside: a background phase pulls it off the resonance by a fraction of
/// the width.
struct ResonanceEstimate {
  double E_r = 0.0;
  double time_delay = 0.0;       ///< d delta / dE at E_r
  double peak_height = 0.0;      ///< max |1 - S| near the resonance
  double abs_peak_energy = 0.0;  ///< where that maximum sits
  double refinement_width = 0.0; ///< final bracket width for E_r
};

/// Coarse scan over [lo, hi] then golden-section refinement. Returns nullopt
/// when no interior local maximum of |1 - S| reaches min_height, or when the
/// steepest phase rise sits on the window edge.
std::optional<ResonanceEstimate> locate_resonance(const std::function<cplx(double)>& S, const ResonanceSearch& search);

/// S(E) of one route of a model, with singular energies nudged by 1e-9 E.
std::function<cplx(double)> route_function(const ScatteringModel& model, Route route);

struct PhaseRow {
  double E = 0.0;
  std::optional<double> tau_analytic;
  double tau_numeric = 0.0;
  double defect = 0.0;
  std::string status = "ok";
  bool ok() const noexcept { return status == "ok"; }
};

/// tau(E) on a uniform grid by every available route, each column
/// pi-unwrapped along the grid. `defect` is |e^{2 i tau}| - 1 of the analytic
/// expression, or the numeric route's flux defect when there is no closed form.
std::vector<PhaseRow> phase_scan(const DeformationSpec& deformation, const ChannelSpec& channel, const EnergyGrid& grid);

} // namespace jmat
