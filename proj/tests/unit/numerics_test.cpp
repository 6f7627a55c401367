#include "jmat/errors.hpp"
#include "jmat/linalg.hpp"
#include "jmat/numerics.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace jmat::num;
using doctest::Approx;

TEST_SUITE("special_numerics") {

TEST_CASE("laguerre_eval small cases") {
  CHECK(laguerre_eval(0, 1.0, 7.3) == 1.0);
  CHECK(laguerre_eval(1, 1.0, 2.0) == 0.0);
  CHECK(laguerre_eval(2, 1.0, 0.0) == Approx(3.0).epsilon(1e-15));
  CHECK_THROWS_AS(laguerre_eval(-1, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(laguerre_eval(2, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("laguerre_sequence agrees with laguerre_eval") {
  auto const seq = laguerre_sequence(30, 3.0, 12.5);
  for (int n = 0; n <= 30; ++n) CHECK(seq[n] == Approx(laguerre_eval(n, 3.0, 12.5)).epsilon(1e-13));
}

TEST_CASE("gauss_laguerre low orders") {
  auto const one = gauss_laguerre(1);
  CHECK(one.nodes[0] == Approx(1.0).epsilon(1e-15));
  CHECK(one.weights[0] == Approx(1.0).epsilon(1e-15));

  auto const two = gauss_laguerre(2);
  double const r = std::sqrt(2.0);
  CHECK(two.nodes[0] == Approx(2.0 - r).epsilon(1e-15));
  CHECK(two.nodes[1] == Approx(2.0 + r).epsilon(1e-15));
  CHECK(two.weights[0] == Approx((2.0 + r) / 4.0).epsilon(1e-15));
  CHECK(two.weights[1] == Approx((2.0 - r) / 4.0).epsilon(1e-15));
  CHECK(two.scaled_weights[0] == Approx(two.weights[0] * std::exp(two.nodes[0])).epsilon(1e-14));
  CHECK_THROWS_AS(gauss_laguerre(0), std::invalid_argument);
}

TEST_CASE("gauss_laguerre exactness and ordering") {
  for (int m : {3, 7, 11, 25, 60, 117, 150}) {
    CAPTURE(m);
    auto const rule = gauss_laguerre(m);
    double sum = 0.0;
    for (int i = 0; i < m; ++i) {
      CHECK(rule.nodes[i] > 0.0);
      if (i) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
      sum += rule.weights[i];
    }
    CHECK(std::abs(sum - 1.0) < 1e-14);
    int const pmax = std::min(2 * m - 1, 20);
    for (int p = 0; p <= pmax; ++p) {
      double const got = rule.integrate([p](double x) { return std::pow(x, p); });
      CHECK(std::abs(got / std::tgamma(p + 1.0) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("solve_linear examples") {
  ComplexMatrix A(2);
  A(0, 0) = 1.0;
  A(0, 1) = cplx{0.0, 1.0};
  A(1, 0) = cplx{0.0, -1.0};
  A(1, 1) = 2.0;
  std::vector<cplx> b{1.0, 0.0};
  auto const x = solve_linear(A, std::span<const cplx>(b));
  CHECK(std::abs(x[0] - cplx{2.0, 0.0}) < 1e-14);
  CHECK(std::abs(x[1] - cplx{0.0, 1.0}) < 1e-14);

  ComplexMatrix one(1);
  one(0, 0) = 2.0;
  std::vector<cplx> six{6.0};
  CHECK(std::abs(solve_linear(one, std::span<const cplx>(six))[0] - 3.0) < 1e-15);

  auto const I = ComplexMatrix::identity(4);
  std::vector<cplx> v{1.0, cplx{0, 2}, -3.0, cplx{4, 4}};
  auto const same = solve_linear(I, std::span<const cplx>(v));
  for (int i = 0; i < 4; ++i) CHECK(same[i] == v[i]);
}

TEST_CASE("solve_linear rejects singular systems") {
  ComplexMatrix A(2);
  A(0, 0) = 1.0;
  A(0, 1) = 2.0;
  A(1, 0) = 2.0;
  A(1, 1) = 4.0;
  std::vector<cplx> b{1.0, 1.0};
  CHECK_THROWS_AS(solve_linear(A, std::span<const cplx>(b)), jmat::SingularSystemError);

  A(1, 1) = 4.0 + 1e-15;
  try {
    (void)solve_linear(A, std::span<const cplx>(b));
    FAIL("expected SingularSystemError");
  } catch (const jmat::SingularSystemError& e) {
    CHECK(e.condition() > 1e14);
  }
}

TEST_CASE("condition estimate tracks the true condition number") {
  RealMatrix A(3);
  A(0, 0) = 1.0;
  A(1, 1) = 1e-6;
  A(2, 2) = 10.0;
  LuFactorization<double> lu(A);
  CHECK(lu.condition_estimate() == Approx(1e7).epsilon(1e-12));
}

TEST_CASE("unwrap_angle_sequence") {
  using P = AnglePeriod;
  std::vector<double> a{0.3, 0.31};
  auto const ua = unwrap_angle_sequence(a, P::pi);
  CHECK(ua[0] == 0.3);
  CHECK(ua[1] == 0.31);

  std::vector<double> b{1.5, -1.5};
  auto const ub = unwrap_angle_sequence(b, P::pi);
  CHECK(ub[1] == Approx(1.6415926535897931).epsilon(1e-15));

  std::vector<double> c(5, 0.7);
  for (double v : unwrap_angle_sequence(c, P::two_pi)) CHECK(v == 0.7);

  CHECK(std::abs(principal_angle(std::acos(-1.0), P::pi)) < 1e-15);
  CHECK(principal_angle(2.0, P::pi) == Approx(2.0 - std::acos(-1.0)).epsilon(1e-15));
  CHECK(nearest_branch(0.1, 6.3, P::two_pi) == Approx(0.1 + 2 * std::acos(-1.0)));
}

}
