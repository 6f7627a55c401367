#pragma once

// Finite symmetric deformations H0 -> H0 + D of the reference Hamiltonian and
// the transformation phase tau(E) with hhat_n^+- = e^{+-i tau} h_n^+- outside
// the support of D.

#include "jmat/basis.hpp"
#include "jmat/kinematics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace jmat {

enum class DeformationKind { one_parameter, block_three, bridge_three, custom };

std::string to_string(DeformationKind kind);
/// Throws std::invalid_argument for an unknown name.
DeformationKind deformation_kind_from_string(const std::string& name);

struct DeformationEntry {
  int i = 0;
  int j = 0;
  double value = 0.0;
};

class DeformationSpec {
public:
  DeformationSpec() = default;

  static DeformationSpec one_parameter(double mu);
  static DeformationSpec block_three(double mu_plus, double mu_minus, double mu_zero);
  /// Couples state 0 with state M; M >= 2.
  static DeformationSpec bridge_three(double mu_plus, double mu_minus, double mu_zero, int M);
  /// Entries with i > j are mirrored; duplicates are rejected.
  static DeformationSpec custom(std::vector<DeformationEntry> entries);

  DeformationKind kind() const noexcept { return kind_; }
  /// Largest touched index (0 for an empty deformation).
  int support() const noexcept { return support_; }
  /// Upper-triangle entries (i <= j) with nonzero value.
  const std::vector<DeformationEntry>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }

  /// D_ij, symmetric, zero outside the entries.
  double operator()(int i, int j) const;

  /// Adds D into the leading block of a dense matrix of size > support().
  void add_to(num::RealMatrix& m) const;

  /// Parameters as given to the named constructor.
  double mu_plus() const noexcept { return mu_plus_; }
  double mu_minus() const noexcept { return mu_minus_; }
  double mu_zero() const noexcept { return mu_zero_; }
  int bridge_index() const noexcept { return bridge_m_; }

private:
  DeformationKind kind_ = DeformationKind::one_parameter;
  int support_ = 0;
  std::vector<DeformationEntry> entries_;
  double mu_plus_ = 0.0, mu_minus_ = 0.0, mu_zero_ = 0.0;
  int bridge_m_ = 0;

  void add(int i, int j, double v);
};

/// Parameter bag for build_deformation; which fields are required depends on the kind.
struct DeformationParameters {
  std::optional<double> mu;
  std::optional<double> mu_plus;
  std::optional<double> mu_minus;
  std::optional<double> mu_zero;
  std::optional<int> bridge_m;
  std::vector<DeformationEntry> entries;
};

/// Throws std::invalid_argument naming the missing parameter.
DeformationSpec build_deformation(DeformationKind kind, const DeformationParameters& params);

enum class PhaseMethod { one_parameter_formula, block_formula, numeric_matching };

struct PhaseResult {
  double tau = 0.0;               ///< principal branch (-pi/2, pi/2]
  cplx e2itau{1.0, 0.0};          ///< the computed e^{2 i tau} expression
  double unimodularity_defect = 0.0; ///< |e^{2 i tau}| - 1
  /// |2 shat_0 kappahat / W - 1|: Wronskian of the deformed sine/cosine pair
  /// against the undeformed one. Only filled by routes that build the pair.
  double flux_defect = 0.0;
  /// Distance (mod pi) between two algebraic routes when a route computes both.
  double route_disagreement = 0.0;
  double condition = 1.0; ///< interior system condition estimate (numeric route)
  PhaseMethod method = PhaseMethod::numeric_matching;
};

/// e^{2 i tau} = T0 + (1 - T0) [1 + mu / (J00 + J01 R1+)]^{-1}, cross-checked
/// against (kappa + mu h0^-)/(kappa + mu h0^+).
PhaseResult tau_one_param(double E, double mu, const ChannelSpec& channel);

/// Closed form for the 2x2 block deformation [[mu+, mu0], [mu0, mu-]].
PhaseResult tau_block_three(double E, double mu_plus, double mu_minus, double mu_zero, const ChannelSpec& channel);

/// Matching construction for any finite-support deformation: u_n = h_n^+ for
/// n >= M, rows 1..M of (J + D) u = 0 solved for u_0..u_{M-1}, and
/// tau = -arg(sum_m (J + D)_{0m} u_m) mod pi. Throws SingularSystemError when
/// the interior system is singular at this energy. `table_count` (0 picks
/// M + 2) sets how many kinematic coefficients are generated; only the first
/// M + 2 ever enter.
PhaseResult tau_numeric(double E, const DeformationSpec& deformation, const ChannelSpec& channel,
                        int table_count = 0);

/// Analytic route when one exists for this kind (one_parameter, block_three).
std::optional<PhaseResult> tau_analytic(double E, const DeformationSpec& deformation, const ChannelSpec& channel);

struct DeformedFactors {
  std::vector<cplx> T;
  std::vector<cplx> Rplus;
  std::vector<cplx> Rminus;
};

/// That = e^{-2 i tau} T, R unchanged.
DeformedFactors deformed_factors(const KinematicTable& table, double tau);

} // namespace jmat
