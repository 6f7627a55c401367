#include "jmat/deformation.hpp"

#include "jmat/errors.hpp"
#include "jmat/linalg.hpp"
#include "jmat/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jmat {

std::string to_string(DeformationKind kind) {
  switch (kind) {
  case DeformationKind::one_parameter: return "one_parameter";
  case DeformationKind::block_three: return "block_three";
  case DeformationKind::bridge_three: return "bridge_three";
  case DeformationKind::custom: return "custom";
  }
  return "unknown";
}

DeformationKind deformation_kind_from_string(const std::string& name) {
  if (name == "one_parameter") return DeformationKind::one_parameter;
  if (name == "block_three") return DeformationKind::block_three;
  if (name == "bridge_three") return DeformationKind::bridge_three;
  if (name == "custom") return DeformationKind::custom;
  throw std::invalid_argument("unknown deformation kind '" + name + "'");
}

void DeformationSpec::add(int i, int j, double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("deformation entries must be finite");
  if (i < 0 || j < 0) throw std::invalid_argument("deformation indices must be nonnegative");
  if (i > j) std::swap(i, j);
  for (const auto& e : entries_)
    if (e.i == i && e.j == j)
      throw std::invalid_argument("duplicate deformation entry (" + std::to_string(i) + ", " + std::to_string(j) + ")");
  if (v == 0.0) return;
  entries_.push_back({i, j, v});
  support_ = std::max(support_, j);
}

DeformationSpec DeformationSpec::one_parameter(double mu) {
  DeformationSpec d;
  d.kind_ = DeformationKind::one_parameter;
  d.mu_plus_ = mu;
  d.add(0, 0, mu);
  return d;
}

DeformationSpec DeformationSpec::block_three(double mu_plus, double mu_minus, double mu_zero) {
  DeformationSpec d;
  d.kind_ = DeformationKind::block_three;
  d.mu_plus_ = mu_plus;
  d.mu_minus_ = mu_minus;
  d.mu_zero_ = mu_zero;
  d.add(0, 0, mu_plus);
  d.add(1, 1, mu_minus);
  d.add(0, 1, mu_zero);
  return d;
}

DeformationSpec DeformationSpec::bridge_three(double mu_plus, double mu_minus, double mu_zero, int M) {
  if (M < 2) throw std::invalid_argument("bridge deformation needs M >= 2 (M = 1 is the block case), got " + std::to_string(M));
  DeformationSpec d;
  d.kind_ = DeformationKind::bridge_three;
  d.mu_plus_ = mu_plus;
  d.mu_minus_ = mu_minus;
  d.mu_zero_ = mu_zero;
  d.bridge_m_ = M;
  d.add(0, 0, mu_plus);
  d.add(M, M, mu_minus);
  d.add(0, M, mu_zero);
  return d;
}

DeformationSpec DeformationSpec::custom(std::vector<DeformationEntry> entries) {
  DeformationSpec d;
  d.kind_ = DeformationKind::custom;
  for (const auto& e : entries) d.add(e.i, e.j, e.value);
  return d;
}

double DeformationSpec::operator()(int i, int j) const {
  if (i > j) std::swap(i, j);
  for (const auto& e : entries_)
    if (e.i == i && e.j == j) return e.value;
  return 0.0;
}

void DeformationSpec::add_to(num::RealMatrix& m) const {
  if (!empty() && static_cast<int>(m.size()) <= support_)
    throw std::invalid_argument("deformation support " + std::to_string(support_) +
                                " does not fit a matrix of size " + std::to_string(m.size()));
  for (const auto& e : entries_) {
    m(e.i, e.j) += e.value;
    if (e.i != e.j) m(e.j, e.i) += e.value;
  }
}

DeformationSpec build_deformation(DeformationKind kind, const DeformationParameters& p) {
  auto need = [](const std::optional<double>& v, const char* name) {
    if (!v) throw std::invalid_argument(std::string("deformation parameter '") + name + "' is missing");
    return *v;
  };
  switch (kind) {
  case DeformationKind::one_parameter: return DeformationSpec::one_parameter(need(p.mu ? p.mu : p.mu_plus, "mu"));
  case DeformationKind::block_three:
    return DeformationSpec::block_three(need(p.mu_plus, "mu_plus"), need(p.mu_minus, "mu_minus"),
                                        need(p.mu_zero, "mu_zero"));
  case DeformationKind::bridge_three:
    if (!p.bridge_m) throw std::invalid_argument("deformation parameter 'bridge_m' is missing");
    return DeformationSpec::bridge_three(need(p.mu_plus, "mu_plus"), need(p.mu_minus, "mu_minus"),
                                         need(p.mu_zero, "mu_zero"), *p.bridge_m);
  case DeformationKind::custom: return DeformationSpec::custom(p.entries);
  }
  throw std::invalid_argument("unknown deformation kind");
}

namespace {

double mod_pi_distance(double a, double b) { return std::abs(num::principal_angle(a - b, num::AnglePeriod::pi)); }

// Wronskian of the deformed pair (shat, chat) built from e^{i tau} u, against W.
double flux_defect(double tau, cplx u0, cplx row0, double W) {
  cplx const rot = std::polar(1.0, tau);
  double const s0 = (rot * u0).imag();
  double const kappa = (rot * row0).real();
  return std::abs(2.0 * s0 * kappa / W - 1.0);
}

PhaseResult zero_phase(PhaseMethod method) {
  PhaseResult r;
  r.method = method;
  return r;
}

} // namespace

PhaseResult tau_one_param(double E, double mu, const ChannelSpec& channel) {
  auto const t = kinematic_table(E, channel, 2);
  auto const J = j_matrix(2, channel, E);
  PhaseResult r;
  r.method = PhaseMethod::one_parameter_formula;

  cplx const L = t.kappa + mu * t.hplus[0];
  if (std::abs(L) < 1e-300)
    throw NumericalError("tau_one_param: degenerate row-0 combination at E = " + std::to_string(E));

  cplx const T0 = t.T[0];
  cplx const base = J.diag(0) + J.off(0) * t.Rplus[0];
  cplx const e2it = T0 + (1.0 - T0) / (1.0 + mu / base);
  r.e2itau = e2it;
  r.unimodularity_defect = std::abs(e2it) - 1.0;
  r.tau = num::principal_angle(0.5 * std::arg(e2it), num::AnglePeriod::pi);

  double const tau_ratio = num::principal_angle(-std::arg(L), num::AnglePeriod::pi);
  r.route_disagreement = mod_pi_distance(r.tau, tau_ratio);
  r.flux_defect = flux_defect(r.tau, t.hplus[0], L, t.W);
  return r;
}

PhaseResult tau_block_three(double E, double mu_plus, double mu_minus, double mu_zero, const ChannelSpec& channel) {
  if (mu_plus == 0.0 && mu_minus == 0.0 && mu_zero == 0.0) {
    (void)energy_point(E, channel);
    return zero_phase(PhaseMethod::block_formula);
  }
  auto const t = kinematic_table(E, channel, 2);
  auto const J = j_matrix(2, channel, E);
  double const J00 = J.diag(0);
  double const J01 = J.off(0);
  cplx const R1 = t.Rplus[0];
  cplx const T0 = t.T[0];
  double const scale = std::abs(J01) + std::abs(mu_minus * R1) + std::abs(mu_zero);

  cplx const lower = J01 - mu_minus * R1;
  double const upper = J01 + mu_zero;
  if (std::abs(lower) < 1e-14 * scale || std::abs(upper) < 1e-14 * scale)
    throw NumericalError("tau_block_three: vanishing denominator at E = " + std::to_string(E));

  cplx const ratio = upper / lower;
  cplx const bracket = J00 + mu_plus + R1 * (upper * upper) / lower;
  if (std::abs(bracket) < 1e-300) throw NumericalError("tau_block_three: singular bracket at E = " + std::to_string(E));
  cplx const inv_ratio = lower / upper;
  cplx const e2it =
      ratio * ratio * (T0 * std::norm(inv_ratio) + (1.0 - T0) * (J00 + J01 * R1) / bracket);

  PhaseResult r;
  r.method = PhaseMethod::block_formula;
  r.e2itau = e2it;
  r.unimodularity_defect = std::abs(e2it) - 1.0;
  r.tau = num::principal_angle(0.5 * std::arg(e2it), num::AnglePeriod::pi);
  return r;
}

PhaseResult tau_numeric(double E, const DeformationSpec& deformation, const ChannelSpec& channel, int table_count) {
  if (deformation.empty()) {
    // D = 0 leaves h untouched; kinematics still validate the channel and energy.
    (void)energy_point(E, channel);
    return zero_phase(PhaseMethod::numeric_matching);
  }
  int const M = deformation.support();
  int const size = M + 2;
  auto const t = kinematic_table(E, channel, std::max(size, table_count));
  auto A = j_matrix(size, channel, E).to_dense();
  {
    num::RealMatrix D(size);
    deformation.add_to(D);
    A += D;
  }

  std::vector<cplx> u(t.hplus.begin(), t.hplus.end());
  PhaseResult r;
  r.method = PhaseMethod::numeric_matching;
  if (M > 0) {
    num::ComplexMatrix K(M);
    std::vector<cplx> rhs(M, cplx{});
    for (int row = 1; row <= M; ++row) {
      for (int m = 0; m < size; ++m) {
        if (m < M)
          K(row - 1, m) = A(row, m);
        else
          rhs[row - 1] -= A(row, m) * t.hplus[m];
      }
    }
    num::LuFactorization<cplx> lu(K);
    r.condition = lu.condition_estimate();
    if (!(r.condition <= num::default_condition_limit))
      throw SingularSystemError("tau_numeric: interior system singular at E = " + std::to_string(E), r.condition);
    auto const sol = lu.solve(rhs);
    std::copy(sol.begin(), sol.end(), u.begin());
  }

  cplx L{};
  for (int m = 0; m < size; ++m) L += A(0, m) * u[m];
  if (std::abs(L) < 1e-300)
    throw NumericalError("tau_numeric: degenerate row-0 combination at E = " + std::to_string(E));

  r.tau = num::principal_angle(-std::arg(L), num::AnglePeriod::pi);
  r.e2itau = std::conj(L) / L;
  r.unimodularity_defect = std::abs(r.e2itau) - 1.0;
  r.flux_defect = flux_defect(r.tau, u[0], L, t.W);
  return r;
}

std::optional<PhaseResult> tau_analytic(double E, const DeformationSpec& d, const ChannelSpec& channel) {
  switch (d.kind()) {
  case DeformationKind::one_parameter: return tau_one_param(E, d.mu_plus(), channel);
  case DeformationKind::block_three: return tau_block_three(E, d.mu_plus(), d.mu_minus(), d.mu_zero(), channel);
  default: return std::nullopt;
  }
}

DeformedFactors deformed_factors(const KinematicTable& table, double tau) {
  DeformedFactors f;
  cplx const rot = std::polar(1.0, -2.0 * tau);
  f.T.reserve(table.T.size());
  for (const auto& v : table.T) f.T.push_back(rot * v);
  f.Rplus = table.Rplus;
  f.Rminus = table.Rminus;
  return f;
}

} // namespace jmat
