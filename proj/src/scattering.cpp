#include "jmat/scattering.hpp"

#include "jmat/errors.hpp"
#include "jmat/linalg.hpp"
#include "jmat/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace jmat {

void ScatterConfig::validate() const {
  channel.validate();
  potential.validate();
  if (N < 1) throw std::invalid_argument("N must be at least 1, got " + std::to_string(N));
  if (!deformation.empty() && deformation.support() >= N)
    throw std::invalid_argument("deformation support " + std::to_string(deformation.support()) +
                                " must lie inside the model space (N = " + std::to_string(N) + ")");
  if (channel.Z != 0.0)
    throw UnsupportedChannelError("scattering: Coulomb kinematics (Z != 0) are not supported");
  if (channel.l != 0) throw UnsupportedChannelError("scattering: closed-form kinematics exist only for l = 0");
}

void EnergyGrid::validate() const {
  if (!(emin > 0.0) || !(emax > emin) || !std::isfinite(emax))
    throw std::invalid_argument("grid needs 0 < emin < emax");
  if (steps < 2) throw std::invalid_argument("grid.steps must be at least 2");
}

ScatteringModel::ScatteringModel(ScatterConfig config) : config_(std::move(config)) {
  config_.validate();
  interaction_ = potential_matrix(config_.N, config_.potential, config_.channel);
  config_.deformation.add_to(interaction_);
}

double ScatteringModel::green_last(double E) const {
  int const N = config_.N;
  auto B = j_matrix(N, config_.channel, E).to_dense();
  B += interaction_;
  std::vector<double> rhs(N, 0.0);
  rhs[N - 1] = 1.0;
  try {
    return num::solve_linear(B, std::span<const double>(rhs), green_condition_limit)[N - 1];
  } catch (const SingularSystemError& e) {
    throw SingularSystemError("green_last: finite pencil is singular near E = " + std::to_string(E), e.condition());
  }
}

SMatrixPoint ScatteringModel::s_matrix(double E) const {
  int const N = config_.N;
  auto const table = kinematic_table(E, config_.channel, N + 2);
  auto const J = j_matrix(N + 1, config_.channel, E);
  double const g = green_last(E);
  double const coupling = J.off(N - 1);

  SMatrixPoint p;
  p.E = E;
  p.g_last = g;
  p.S_truncated = table.T[N - 1] * (1.0 + g * coupling * table.Rminus[N - 1]) /
                  (1.0 + g * coupling * table.Rplus[N - 1]);
  p.tau = tau_numeric(E, config_.deformation, config_.channel).tau;
  p.S_full = std::polar(1.0, -2.0 * p.tau) * p.S_truncated;
  p.one_minus_S_abs = std::abs(1.0 - p.S_full);
  p.delta = 0.5 * std::arg(p.S_full);
  return p;
}

cplx ScatteringModel::s_matrix_folded(double E) const {
  int const N = config_.N;
  auto const Jf = j_matrix_factored(N + 1, config_.channel, E);
  num::RealMatrix B(N);
  for (int n = 0; n < N; ++n)
    for (int m = 0; m < N; ++m) B(n, m) = interaction_(n, m) + (std::abs(n - m) <= 1 ? Jf(n, m) : 0.0);

  // g_{N-1,N-1} = det(B without last row/column) / det(B)
  num::LuFactorization<double> full(B);
  if (full.exactly_singular()) throw SingularSystemError("s_matrix_folded: singular model block", INFINITY);
  auto const [log_full, sign_full] = full.log_abs_determinant();
  double g = 1.0 / (sign_full * std::exp(log_full));
  if (N > 1) {
    num::RealMatrix minor(N - 1);
    for (int n = 0; n + 1 < N; ++n)
      for (int m = 0; m + 1 < N; ++m) minor(n, m) = B(n, m);
    num::LuFactorization<double> lu(minor);
    auto const [log_minor, sign_minor] = lu.log_abs_determinant();
    g = sign_minor * sign_full * std::exp(log_minor - log_full);
  }

  auto const point = energy_point(E, config_.channel);
  auto const s = sine_coefficients(point, N + 1);
  auto const c = cosine_coefficients(point, N + 1);
  double const coupling = Jf.off(N - 1);
  cplx const hm_last{c[N - 1], -s[N - 1]}, hm_next{c[N], -s[N]};
  cplx const hp_last{c[N - 1], s[N - 1]}, hp_next{c[N], s[N]};
  return (hm_last + g * coupling * hm_next) / (hp_last + g * coupling * hp_next);
}

double green_last(double E, const ScatterConfig& config) { return ScatteringModel(config).green_last(E); }
SMatrixPoint s_matrix(double E, const ScatterConfig& config) { return ScatteringModel(config).s_matrix(E); }
cplx s_matrix_folded(double E, const ScatterConfig& config) { return ScatteringModel(config).s_matrix_folded(E); }

double phase_shift(cplx S, std::optional<double> previous) {
  if (!(std::abs(std::abs(S) - 1.0) <= 1e-6))
    throw std::invalid_argument("phase_shift: |S| = " + std::to_string(std::abs(S)) + " is not unimodular");
  double const delta = 0.5 * std::arg(S);
  return previous ? num::nearest_branch(delta, *previous, num::AnglePeriod::pi) : delta;
}

namespace {

ScanRow evaluate_row(const ScatteringModel& model, double E) {
  ScanRow row;
  row.E = E;
  auto fill = [&](double at) {
    auto const p = model.s_matrix(at);
    row.S_full = p.S_full;
    row.S_truncated = p.S_truncated;
    row.tau = p.tau;
    row.abs_one_minus_full = std::abs(1.0 - p.S_full);
    row.abs_one_minus_truncated = std::abs(1.0 - p.S_truncated);
  };
  try {
    try {
      fill(E);
    } catch (const SingularSystemError&) {
      row.E = E * (1.0 + 1e-9);
      row.nudged = true;
      fill(row.E);
    }
  } catch (const SingularSystemError&) {
    row.status = "singular";
    return row;
  } catch (const NumericalError&) {
    row.status = "numerical_error";
    return row;
  }
  if (std::abs(std::abs(row.S_full) - 1.0) > unitarity_flag || std::abs(std::abs(row.S_truncated) - 1.0) > unitarity_flag)
    row.status = "nonunitary";
  return row;
}

bool needs_refinement(const ScanRow& a, const ScanRow& b) {
  if (!a.ok() || !b.ok()) return false;
  return std::abs(a.abs_one_minus_full - b.abs_one_minus_full) > adaptive_jump ||
         std::abs(a.abs_one_minus_truncated - b.abs_one_minus_truncated) > adaptive_jump;
}

void refine(const ScatteringModel& model, const ScanRow& left, const ScanRow& right, int depth,
            std::vector<ScanRow>& out) {
  if (depth >= adaptive_depth || !needs_refinement(left, right)) return;
  auto const mid = evaluate_row(model, 0.5 * (left.E + right.E));
  refine(model, left, mid, depth + 1, out);
  out.push_back(mid);
  refine(model, mid, right, depth + 1, out);
}

} // namespace

ScanTable energy_scan(const ScatterConfig& config, const EnergyGrid& grid) {
  grid.validate();
  ScatteringModel const model(config);
  ScanTable table{model.config(), grid, {}};

  std::vector<ScanRow> coarse;
  coarse.reserve(grid.steps);
  double const h = (grid.emax - grid.emin) / (grid.steps - 1);
  for (int i = 0; i < grid.steps; ++i) {
    double const E = i + 1 == grid.steps ? grid.emax : grid.emin + i * h;
    coarse.push_back(evaluate_row(model, E));
  }

  auto& rows = table.rows;
  rows.reserve(coarse.size());
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    if (i > 0 && grid.adaptive) refine(model, coarse[i - 1], coarse[i], 0, rows);
    rows.push_back(coarse[i]);
  }

  std::optional<double> tau_prev, full_prev, trunc_prev;
  for (auto& r : rows) {
    if (!r.ok() && r.status != "nonunitary") continue;
    r.tau = tau_prev ? num::nearest_branch(r.tau, *tau_prev, num::AnglePeriod::pi) : r.tau;
    r.delta_full = 0.5 * std::arg(r.S_full);
    r.delta_truncated = 0.5 * std::arg(r.S_truncated);
    if (full_prev) r.delta_full = num::nearest_branch(r.delta_full, *full_prev, num::AnglePeriod::pi);
    if (trunc_prev) r.delta_truncated = num::nearest_branch(r.delta_truncated, *trunc_prev, num::AnglePeriod::pi);
    tau_prev = r.tau;
    full_prev = r.delta_full;
    trunc_prev = r.delta_truncated;
  }
  return table;
}

} // namespace jmat
