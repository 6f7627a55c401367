#pragma once

#include "jmat/basis.hpp"
#include "jmat/deformation.hpp"
#include "jmat/kinematics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace jmat {

struct ScatterConfig {
  ChannelSpec channel;
  int N = 20;
  PotentialSpec potential;
  DeformationSpec deformation;

  /// N >= 1, support < N, Z = 0, l = 0.
  void validate() const;
};

struct SMatrixPoint {
  double E = 0.0;
  cplx S_full;       ///< e^{-2 i tau} S_truncated
  cplx S_truncated;  ///< standard formula on the deformed model block
  double tau = 0.0;
  double delta = 0.0; ///< arg(S_full)/2, principal or continued along a scan
  double one_minus_S_abs = 0.0;
  double g_last = 0.0;
};

/// Green's functions with condition estimates above this are rejected.
inline constexpr double green_condition_limit = 1e13;

/// Precomputed N x N blocks for repeated energy evaluations.
class ScatteringModel {
public:
  explicit ScatteringModel(ScatterConfig config);

  const ScatterConfig& config() const noexcept { return config_; }
  /// Vtilde + D, the deformed model block without H0.
  const num::RealMatrix& interaction() const noexcept { return interaction_; }

  /// <phibar_{N-1} | (H0 + D + V - E)^{-1} | phibar_{N-1}>. Throws
  /// SingularSystemError near an eigenvalue of the finite pencil.
  double green_last(double E) const;

  SMatrixPoint s_matrix(double E) const;

  /// Deformation folded into the potential and run through the undeformed
  /// formula written in h-coefficients, with the Green's function taken as a
  /// ratio of determinants. Cross-checks S_truncated.
  cplx s_matrix_folded(double E) const;

private:
  ScatterConfig config_;
  num::RealMatrix interaction_;
};

double green_last(double E, const ScatterConfig& config);
SMatrixPoint s_matrix(double E, const ScatterConfig& config);
cplx s_matrix_folded(double E, const ScatterConfig& config);

/// delta with e^{2 i delta} = S, nearest `previous` if given. Rejects
/// ||S| - 1| > 1e-6.
double phase_shift(cplx S, std::optional<double> previous = std::nullopt);

struct EnergyGrid {
  double emin = 0.5;
  double emax = 8.0;
  int steps = 751;
  bool adaptive = false;

  void validate() const;
};

struct ScanRow {
  double E = 0.0;
  cplx S_full{};
  cplx S_truncated{};
  double tau = 0.0;         ///< unwrapped mod pi along the scan
  double delta_full = 0.0;  ///< unwrapped along the scan
  double delta_truncated = 0.0;
  double abs_one_minus_full = 0.0;
  double abs_one_minus_truncated = 0.0;
  bool nudged = false;      ///< E was offset from a singular grid point
  std::string status = "ok";
  bool ok() const noexcept { return status == "ok"; }
};

struct ScanTable {
  ScatterConfig config;
  EnergyGrid grid;
  std::vector<ScanRow> rows; ///< ascending in E
};

inline constexpr double adaptive_jump = 0.05;
inline constexpr int adaptive_depth = 12;
inline constexpr double unitarity_flag = 1e-6;

/// Deterministic energy scan. Per-point failures are recorded in the row
/// status; the scan always completes.
ScanTable energy_scan(const ScatterConfig& config, const EnergyGrid& grid);

} // namespace jmat
