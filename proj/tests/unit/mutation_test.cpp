#include "jmat/selfcheck.hpp"

#include <doctest.h>

using namespace jmat;

TEST_SUITE("laguerre_jmatrix") {

TEST_CASE("oracle suite catches a flipped overlap off-diagonal") {
  SelfcheckHooks hooks;
  hooks.overlap = [](int N, const ChannelSpec& ch) {
    auto const S = overlap_matrix(N, ch);
    std::vector<double> d(N), o(N > 1 ? N - 1 : 0);
    for (int n = 0; n < N; ++n) d[n] = S.diag(n);
    for (int n = 0; n + 1 < N; ++n) o[n] = n == 0 ? -S.off(0) : S.off(n);
    return TridiagonalMatrix(d, o);
  };
  auto const r = check_matrix_elements(hooks);
  REQUIRE_FALSE(r.passed());
  CHECK(r.first_failure->find("overlap(0,1)") != std::string::npos);
  CHECK(check_matrix_elements().passed());
}

}
