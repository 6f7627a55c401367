#include "jmat/selfcheck.hpp"

#include "jmat/analysis.hpp"
#include "jmat/deformation.hpp"
#include "jmat/kinematics.hpp"
#include "jmat/linalg.hpp"
#include "jmat/numerics.hpp"
#include "jmat/scattering.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

namespace jmat {

namespace {

using std::numbers::pi;

class Checker {
public:
  explicit Checker(std::string name) : start_(std::chrono::steady_clock::now()) { result_.name = std::move(name); }

  /// Records `what` as failing unless value < limit.
  void below(const std::string& what, double value, double limit) {
    ++result_.checks;
    if (result_.first_failure || value < limit) return;
    char buf[96];
    std::snprintf(buf, sizeof buf, ": value %.6e, limit %.1e", value, limit);
    result_.first_failure = what + buf;
  }

  void expect(const std::string& what, bool ok) {
    ++result_.checks;
    if (!result_.first_failure && !ok) result_.first_failure = what;
  }

  template <class F> void guarded(const std::string& what, F&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      expect(what + " threw: " + e.what(), false);
    }
  }

  SuiteResult finish() {
    result_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return result_;
  }

private:
  SuiteResult result_;
  std::chrono::steady_clock::time_point start_;
};

std::string label(const char* what, int n, int m, const ChannelSpec& ch) {
  std::ostringstream os;
  os << what << "(" << n << "," << m << ") l=" << ch.l << " lambda=" << ch.lambda;
  return os.str();
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

} // namespace

SuiteResult check_special_numerics() {
  Checker c("special_numerics");
  c.guarded("gauss_laguerre", [&] {
    for (int m : {1, 2, 5, 11, 20, 40, 80}) {
      auto const rule = num::gauss_laguerre(m);
      double sum = 0.0;
      for (double w : rule.weights) sum += w;
      c.below("weights sum m=" + std::to_string(m), std::abs(sum - 1.0), 1e-14);
      int const pmax = m >= 11 ? 20 : 2 * m - 1;
      for (int p = 0; p <= pmax; ++p) {
        double const moment = rule.integrate([p](double x) { return std::pow(x, p); });
        c.below("moment x^" + std::to_string(p) + " m=" + std::to_string(m), rel(moment, std::tgamma(p + 1.0)), 1e-12);
      }
    }
  });
  c.guarded("laguerre recurrence", [&] {
    for (double alpha : {0.0, 1.0, 3.0})
      for (double x : {0.5, 10.0, 50.0, 200.0}) {
        auto const L = num::laguerre_sequence(200, alpha, x);
        for (int n = 1; n < 200; n += 7) {
          double const a = (n + 1) * L[n + 1];
          double const b = (2.0 * n + alpha + 1.0 - x) * L[n];
          double const d = (n + alpha) * L[n - 1];
          double const direct = num::laguerre_eval(n + 1, alpha, x);
          c.below("laguerre recurrence n=" + std::to_string(n), std::abs(a - b + d) / (std::abs(a) + std::abs(b) + std::abs(d)),
                  1e-12);
          c.below("laguerre eval vs sequence n=" + std::to_string(n), rel(direct, L[n + 1]), 1e-12);
        }
      }
  });
  c.guarded("solve_linear", [&] {
    std::mt19937 gen(20260117u);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
      std::size_t const n = 8 + trial;
      num::ComplexMatrix A(n);
      std::vector<num::cplx> b(n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) A(i, j) = {u(gen), u(gen)};
        A(i, i) += 4.0;
        b[i] = {u(gen), u(gen)};
      }
      auto const x = num::solve_linear(A, std::span<const num::cplx>(b));
      auto const Ax = A.multiply(x);
      double rn = 0.0, bn = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        rn += std::norm(Ax[i] - b[i]);
        bn += std::norm(b[i]);
      }
      c.below("solve_linear residual trial " + std::to_string(trial), std::sqrt(rn / bn), 1e-10);
    }
  });
  double const wrapped[] = {1.5, -1.5};
  auto const unwrapped = num::unwrap_angle_sequence(wrapped, num::AnglePeriod::pi);
  c.below("unwrap [1.5, -1.5]", std::abs(unwrapped[1] - (pi - 1.5)), 1e-15);
  return c.finish();
}

SuiteResult check_matrix_elements(const SelfcheckHooks& hooks) {
  Checker c("matrix_elements");
  constexpr int nmax = 10;
  c.guarded("oracle", [&] {
    for (int l : {0, 1, 2})
      for (double lambda : {1.0, 5.0, 10.0}) {
        ChannelSpec const ch{lambda, l, 0.0};
        auto const S = hooks.overlap(nmax + 1, ch);
        auto const H = hooks.h0(nmax + 1, ch);
        for (int n = 0; n <= nmax; ++n)
          for (int m = n; m <= std::min(nmax, n + 3); ++m) {
            double const so = oracle_element(ElementKind::overlap, n, m, ch);
            double const ko = oracle_element(ElementKind::kinetic, n, m, ch);
            double const co = oracle_element(ElementKind::coulomb, n, m, ch);
            if (m - n <= 1) {
              c.below(label("overlap", n, m, ch), rel(S(n, m), so), 1e-10);
              c.below(label("h0", n, m, ch), rel(H(n, m), ko), 1e-10);
            } else {
              c.below(label("overlap band", n, m, ch), std::abs(so) / S(n, n), 1e-10);
              c.below(label("kinetic band", n, m, ch), std::abs(ko) / H(n, n), 1e-10);
            }
            // <phibar_n|phi_m> = <phi_n|1/r|phi_m> / lambda
            c.below(label("biorthogonality", n, m, ch), std::abs(co / lambda - (n == m ? 1.0 : 0.0)), 1e-10);
          }
      }
  });
  c.guarded("coulomb diagonal", [&] {
    ChannelSpec const ch{5.0, 0, 1.0};
    auto const H = hooks.h0(4, ch);
    auto const H0 = hooks.h0(4, ChannelSpec{5.0, 0, 0.0});
    for (int n = 0; n < 4; ++n) c.below("coulomb diag n=" + std::to_string(n), std::abs(H(n, n) - H0(n, n) - 5.0), 1e-12);
  });
  c.guarded("j_matrix factored", [&] {
    ChannelSpec const ch{5.0, 0, 0.0};
    for (double E : {0.3, 3.125, 11.0}) {
      auto const J = j_matrix(30, ch, E);
      auto const F = j_matrix_factored(30, ch, E);
      for (int n = 0; n < 30; ++n) {
        c.below("j factored diag n=" + std::to_string(n), std::abs(J.diag(n) - F.diag(n)) / std::max(1.0, std::abs(F.diag(n))), 1e-12);
        if (n + 1 < 30) c.below("j factored off n=" + std::to_string(n), rel(J.off(n), F.off(n)), 1e-12);
      }
    }
  });
  c.guarded("potential", [&] {
    ChannelSpec const ch{5.0, 0, 0.0};
    PotentialSpec const pot{7.5, 2, 1.0};
    auto const V = potential_matrix(12, pot, ch);
    double const scale = V.max_abs();
    for (int n = 0; n < 12; n += 3)
      for (int m = n; m < 12; m += 2)
        c.below(label("potential", n, m, ch),
                std::abs(V(n, m) - oracle_element(ElementKind::potential, n, m, ch, pot)) / scale, 1e-10);
  });
  return c.finish();
}

SuiteResult check_kinematics() {
  Checker c("kinematics");
  c.guarded("grid sweep", [&] {
    for (double lambda : {1.0, 5.0}) {
      ChannelSpec const ch{lambda, 0, 0.0};
      for (int i = 0; i < 40; ++i) {
        double const E = 0.1 + (20.0 - 0.1) * i / 39.0;
        auto const t = kinematic_table(E, ch, 201);
        auto const J = j_matrix(201, ch, E);
        std::string const at = " E=" + std::to_string(E) + " lambda=" + std::to_string(lambda);
        c.below("recursion residual" + at, recursion_residual(t, J).max_residual, 1e-12);
        c.below("row-0 sine relation" + at, std::abs(J.diag(0) * t.s[0] + J.off(0) * t.s[1]) / (std::abs(J.off(0) * t.s[1]) + std::abs(J.diag(0) * t.s[0]) + 1e-300), 1e-12);
        c.below("wronskian" + at, std::abs(t.W - 2.0 / pi), 1e-12);
        for (int n = 0; n < t.count; n += 20) c.below("|T_n|" + at, std::abs(std::abs(t.T[n]) - 1.0), 1e-12);
      }
    }
  });
  c.guarded("continuum overlap", [&] {
    ChannelSpec const ch{5.0, 0, 0.0};
    for (double E : {0.5, 3.125}) {
      auto const t = kinematic_table(E, ch, 6);
      for (int n = 0; n < 6; ++n)
        c.below("s_n quadrature n=" + std::to_string(n) + " E=" + std::to_string(E),
                std::abs(t.s[n] - continuum_sine_overlap(n, ch, t.point.k)), 1e-9);
    }
  });
  return c.finish();
}

SuiteResult check_deformation() {
  Checker c("deformation");
  ChannelSpec const ch{5.0, 0, 0.0};
  c.guarded("consistency triangle", [&] {
    for (double mu : {-2.0, -0.5, 0.5, 1.0, 5.0})
      for (int i = 0; i < 20; ++i) {
        double const E = 0.2 + 0.5 * i;
        auto const a = tau_one_param(E, mu, ch);
        auto const n = tau_numeric(E, DeformationSpec::one_parameter(mu), ch);
        std::string const at = " mu=" + std::to_string(mu) + " E=" + std::to_string(E);
        c.below("eq6 vs ratio" + at, a.route_disagreement, 1e-10);
        c.below("eq6 vs numeric" + at, std::abs(num::principal_angle(a.tau - n.tau, num::AnglePeriod::pi)), 1e-10);
        c.below("unimodular" + at, std::abs(a.unimodularity_defect), 1e-12);
        c.below("flux" + at, n.flux_defect, 1e-10);
      }
    c.expect("mu = 0 gives tau = 0", tau_one_param(3.0, 0.0, ch).tau == 0.0);
  });
  c.guarded("block reduction", [&] {
    for (int i = 0; i < 20; ++i) {
      double const E = 0.2 + 0.5 * i;
      c.below("block(mu,0,0) vs eq6 E=" + std::to_string(E),
              std::abs(tau_block_three(E, 1.3, 0.0, 0.0, ch).tau - tau_one_param(E, 1.3, ch).tau), 1e-13);
    }
  });
  c.guarded("bridge curve", [&] {
    auto const bridge = DeformationSpec::bridge_three(1.0, 0.5, -0.7, 7);
    EnergyGrid const grid{0.5, 10.0, 191, false};
    auto const rows = phase_scan(bridge, ch, grid);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (!rows[i].ok() || !rows[i - 1].ok()) continue;
      c.below("bridge jump E=" + std::to_string(rows[i].E), std::abs(rows[i].tau_numeric - rows[i - 1].tau_numeric), 0.2);
      c.below("bridge flux E=" + std::to_string(rows[i].E), rows[i].defect, 1e-10);
    }
    auto const a = tau_numeric(2.0, bridge, ch);
    auto const b = tau_numeric(2.0, bridge, ch, 60);
    c.below("tau independent of table count", std::abs(a.tau - b.tau), 1e-15);
  });
  c.guarded("small mu", [&] {
    double const E = 2.0, h = 1e-6;
    auto const t = kinematic_table(E, ch, 2);
    double const slope = (tau_one_param(E, h, ch).tau - tau_one_param(E, -h, ch).tau) / (2.0 * h);
    c.below("d tau / d mu at 0", rel(slope, -t.s[0] / t.kappa), 1e-6);
  });
  return c.finish();
}

SuiteResult check_scattering() {
  Checker c("scattering");
  ChannelSpec const ch{5.0, 0, 0.0};
  c.guarded("free identity", [&] {
    for (int N : {1, 2, 5, 20}) {
      ScatteringModel const model({ch, N, PotentialSpec{0.0, 0, 1.0}, DeformationSpec{}});
      for (int i = 0; i < 20; ++i) {
        double const E = 0.1 + i * 1.0;
        c.below("free |S-1| N=" + std::to_string(N) + " E=" + std::to_string(E),
                std::abs(model.s_matrix(E).S_full - 1.0), 1e-10);
      }
    }
  });
  c.guarded("green N=1", [&] {
    ScatteringModel const model({ch, 1, PotentialSpec{0.0, 0, 1.0}, DeformationSpec::one_parameter(0.7)});
    double const E = 1.7;
    c.below("g = 1/(J00 + mu)", rel(model.green_last(E), 1.0 / (j_matrix(1, ch, E).diag(0) + 0.7)), 1e-14);
  });
  c.guarded("fig1 audit", [&] {
    PotentialSpec const pot{7.5, 2, 1.0};
    std::vector<std::vector<ScanRow>> scans;
    for (int N : {20, 30}) {
      ScatterConfig cfg{ch, N, pot, DeformationSpec::one_parameter(1.0)};
      ScatteringModel const model(cfg);
      auto const table = energy_scan(cfg, EnergyGrid{0.5, 8.0, 151, false});
      double gap = 0.0;
      for (const auto& r : table.rows) {
        if (!r.ok()) continue;
        std::string const at = " N=" + std::to_string(N) + " E=" + std::to_string(r.E);
        c.below("unitarity" + at, std::abs(std::abs(r.S_full) - 1.0), 1e-10);
        c.below("phase relation" + at, std::abs(r.S_full * std::polar(1.0, 2.0 * r.tau) - r.S_truncated), 1e-13);
        c.below("folded route" + at, std::abs(model.s_matrix_folded(r.E) - r.S_truncated), 1e-12);
        gap = std::max(gap, std::abs(r.abs_one_minus_full - r.abs_one_minus_truncated));
      }
      c.expect("full/truncated gap exceeds 0.05 at N=" + std::to_string(N), gap > 0.05);
      scans.push_back(table.rows);
    }
    for (std::size_t i = 0; i < scans[0].size(); ++i)
      c.below("tau independent of N at E=" + std::to_string(scans[0][i].E),
              std::abs(scans[0][i].tau - scans[1][i].tau), 1e-14);
  });
  return c.finish();
}

SuiteResult check_resonance() {
  Checker c("resonance");
  c.guarded("synthetic", [&] {
    double const Er = 2.5, gamma = 0.04;
    auto S = [&](double E) {
      double const delta = std::atan2(0.5 * gamma, Er - E);
      return std::polar(1.0, 2.0 * delta);
    };
    auto const est = locate_resonance(S, ResonanceSearch{2.0, 3.0, 1e-6});
    c.expect("synthetic resonance found", est.has_value());
    if (est) c.below("synthetic E_r", std::abs(est->E_r - Er), 1e-5);
  });
  c.guarded("undeformed benchmark", [&] {
    ScatteringModel const model({ChannelSpec{5.0, 0, 0.0}, 50, PotentialSpec{7.5, 2, 1.0}, DeformationSpec{}});
    auto const est = locate_resonance(route_function(model, Route::full), ResonanceSearch{3.0, 4.0, 1e-6});
    c.expect("benchmark resonance found", est.has_value());
    if (est) c.below("|E_r - 3.426|", std::abs(est->E_r - 3.426), 0.02);
  });
  return c.finish();
}

std::vector<SuiteResult> run_selfcheck(std::ostream& log, const SelfcheckHooks& hooks) {
  std::vector<SuiteResult> results;
  results.push_back(check_special_numerics());
  results.push_back(check_matrix_elements(hooks));
  results.push_back(check_kinematics());
  results.push_back(check_deformation());
  results.push_back(check_scattering());
  results.push_back(check_resonance());
  for (const auto& r : results) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " (%d checks, %.2f s)", r.checks, r.seconds);
    log << (r.passed() ? "PASS " : "FAIL ") << r.name << buf;
    if (r.first_failure) log << " -- " << *r.first_failure;
    log << '\n';
  }
  return results;
}

} // namespace jmat
