#include "jmat/analysis.hpp"

#include <doctest.h>

#include <cmath>

using namespace jmat;
using doctest::Approx;

namespace {
const ChannelSpec ch5{5.0, 0, 0.0};
const PotentialSpec well{7.5, 2, 1.0};

cplx breit_wigner(double E, double Er, double width, double background = 0.0) {
  return std::polar(1.0, 2.0 * (std::atan2(0.5 * width, Er - E) + background));
}
}

TEST_SUITE("analysis") {

TEST_CASE("synthetic resonance") {
  ResonanceSearch const search{2.0, 3.0, 1e-6};
  auto const est = locate_resonance([](double E) { return breit_wigner(E, 2.5, 0.03); }, search);
  REQUIRE(est);
  CHECK(est->E_r == Approx(2.5).epsilon(1e-6));
  CHECK(est->refinement_width <= 1e-6);
  CHECK(est->peak_height == Approx(2.0).epsilon(1e-6));

  // A constant background moves the |1 - S| peak but not the time-delay peak.
  auto const shifted = locate_resonance([](double E) { return breit_wigner(E, 2.5, 0.03, 0.3); }, search);
  REQUIRE(shifted);
  CHECK(shifted->E_r == Approx(2.5).epsilon(1e-6));
  CHECK(std::abs(shifted->abs_peak_energy - 2.5) > 1e-3);
}

TEST_CASE("no resonance") {
  CHECK_FALSE(locate_resonance([](double) { return cplx{1.0, 0.0}; }, ResonanceSearch{1.0, 2.0, 1e-6}));
  CHECK_FALSE(locate_resonance([](double E) { return breit_wigner(E, 5.0, 0.03); }, ResonanceSearch{1.0, 2.0, 1e-6}));
  CHECK_THROWS_AS(ResonanceSearch({1.0, 2.0, 1e-7}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(ResonanceSearch({2.0, 1.0, 1e-6}).validate(), std::invalid_argument);
}

TEST_CASE("benchmark resonances") {
  ScatteringModel const undeformed({ch5, 50, well, {}});
  auto const a = locate_resonance(route_function(undeformed, Route::full), ResonanceSearch{3.0, 4.0, 1e-6});
  REQUIRE(a);
  CHECK(std::abs(a->E_r - 3.426) < 0.02);

  ScatteringModel const deformed({ch5, 50, well, DeformationSpec::one_parameter(1.0)});
  auto const f = locate_resonance(route_function(deformed, Route::full), ResonanceSearch{3.0, 4.2, 1e-6});
  auto const t = locate_resonance(route_function(deformed, Route::truncated), ResonanceSearch{3.0, 4.2, 1e-6});
  REQUIRE(f);
  REQUIRE(t);
  CHECK(std::abs(f->E_r - 3.62) < 0.02);
  CHECK(std::abs(f->E_r - t->E_r) < 1e-3);
}

TEST_CASE("basis-scale robustness of the undeformed resonance") {
  auto find = [](double lambda) {
    ScatteringModel const m({ChannelSpec{lambda, 0, 0.0}, 50, well, {}});
    return locate_resonance(route_function(m, Route::full), ResonanceSearch{3.0, 4.0, 1e-6});
  };
  auto const a = find(4.0);
  auto const b = find(5.0);
  REQUIRE(a);
  REQUIRE(b);
  CHECK(std::abs(a->E_r - b->E_r) < 0.01);
}

TEST_CASE("phase scans") {
  EnergyGrid const grid{0.5, 8.0, 76, false};
  auto const one = phase_scan(DeformationSpec::one_parameter(1.0), ch5, grid);
  REQUIRE(one.size() == 76u);
  for (const auto& r : one) {
    REQUIRE(r.tau_analytic);
    CHECK(std::abs(*r.tau_analytic - r.tau_numeric) < 1e-10);
    CHECK(std::abs(r.defect) < 1e-12);
  }
  for (const auto& r : phase_scan(DeformationSpec::one_parameter(0.0), ch5, grid)) CHECK(r.tau_numeric == 0.0);
  for (const auto& r : phase_scan(DeformationSpec::bridge_three(1.0, 0.5, -0.7, 7), ch5, grid))
    CHECK_FALSE(r.tau_analytic.has_value());
}

}
