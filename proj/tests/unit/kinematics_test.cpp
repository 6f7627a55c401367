#include "jmat/errors.hpp"
#include "jmat/kinematics.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace jmat;
using doctest::Approx;

namespace {
const ChannelSpec ch5{5.0, 0, 0.0};
}

TEST_SUITE("kinematics") {

TEST_CASE("quarter point") {
  auto const p = energy_point(3.125, ch5);
  CHECK(p.k == Approx(2.5).epsilon(1e-15));
  CHECK(p.theta == Approx(std::numbers::pi / 2).epsilon(1e-15));
  auto const s = sine_coefficients(p, 3);
  auto const c = cosine_coefficients(p, 3);
  CHECK(s[0] == Approx(0.225676).epsilon(1e-6));
  CHECK(s[0] == Approx(std::sqrt(2.0 / (std::numbers::pi * 12.5))).epsilon(1e-15));
  CHECK(std::abs(s[1]) < 1e-15);
  CHECK(std::abs(c[0]) < 1e-15);
  CHECK(c[1] == Approx(0.159577).epsilon(1e-6));

  auto const t = kinematic_table(3.125, ch5, 4);
  CHECK(std::abs(t.T[0] + 1.0) < 1e-14);
  CHECK(t.kappa == Approx(1.410474).epsilon(1e-6));
}

TEST_CASE("theta decreases towards zero at high energy") {
  double prev = energy_point(0.1, ch5).theta;
  for (double E : {1.0, 10.0, 100.0, 1e4, 1e6}) {
    double const th = energy_point(E, ch5).theta;
    CHECK(th < prev);
    prev = th;
  }
  CHECK(prev < 1e-2);
}

TEST_CASE("table identities") {
  for (double E : {0.05, 0.9, 3.125, 7.0, 40.0}) {
    CAPTURE(E);
    auto const t = kinematic_table(E, ch5, 50);
    auto const J = j_matrix(50, ch5, E);
    CHECK(std::abs(J(0, 0) * t.s[0] + J(0, 1) * t.s[1]) < 1e-12 * (std::abs(J(0, 0)) + std::abs(J(0, 1))) * t.s[0]);
    CHECK(t.W == Approx(2.0 / std::numbers::pi).epsilon(1e-12));
    CHECK(std::abs(std::abs(t.Rplus[0] * t.Rminus[0]) - 0.5) < 1e-12);
    for (const auto& v : t.T) CHECK(std::abs(std::abs(v) - 1.0) < 1e-12);
    CHECK(recursion_residual(t, J).max_residual < 1e-12);
  }
}

TEST_CASE("recursion residual sensitivity and vacuous range") {
  auto t = kinematic_table(2.0, ch5, 20);
  auto const J = j_matrix(20, ch5, 2.0);
  t.s[5] += 1e-6;
  CHECK(recursion_residual(t, J).max_residual > 1e-8);

  auto const small = kinematic_table(2.0, ch5, 2);
  auto const report = recursion_residual(small, j_matrix(2, ch5, 2.0));
  CHECK(report.vacuous);
  CHECK(report.max_residual == 0.0);
}

TEST_CASE("unsupported channels") {
  CHECK_THROWS_AS(energy_point(1.0, ChannelSpec{5.0, 0, 1.0}), UnsupportedChannelError);
  CHECK_THROWS_AS(kinematic_table(1.0, ChannelSpec{5.0, 1, 0.0}, 4), UnsupportedChannelError);
  CHECK_THROWS_AS(energy_point(-1.0, ch5), std::invalid_argument);
  CHECK_THROWS_AS(kinematic_table(1.0, ch5, 1), std::invalid_argument);
}

}
