#include <doctest.h>

#include "circlemap/errors.hpp"
#include "circlemap/triples.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace circlemap;

TEST_CASE("cubic model") {
  CHECK(h_map(0.3, 0.5, 0) == doctest::Approx(0.125 - 0.15));
  CHECK(h_map(0.3, 0.5, 1) == doctest::Approx(0.75 - 0.3));
  CHECK(h_map(0.3, 0.5, 2) == doctest::Approx(3.0));
  const auto& x = chebyshev_nodes();
  REQUIRE(x.size() == std::size_t(kTripleNodes));
  CHECK(x.front() == 0.5);
  CHECK(x[64] == 0.0);
  CHECK(x.back() == -0.5);
}

TEST_CASE("critical lift") {
  const auto& f = critical_golden();
  const auto t = lift_critical(f);
  CHECK(t.a == 0.0);
  CHECK(std::abs(g_eval(t, 0.0)) <= 1e-15);
  CHECK(g_eval(t, 0.0, 1) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(commutation_defect(t) <= 1e-8);
  CHECK(conjugacy_residual(t, f) <= 1e-12);
  for (int i = 0; i <= 200; ++i) CHECK(g_eval(t, -0.5 + i / 200.0, 1) > 0);
  const auto p = project(t);
  for (double x : {-0.4, -0.1, 0.2, 0.45}) {
    CHECK(p(x) == doctest::Approx(eval_lift(f, x, 0)).epsilon(1e-12));
    CHECK(p(x + 2) == doctest::Approx(eval_lift(f, x, 0) + 2).epsilon(1e-12));
  }
  CHECK_THROWS_AS(lift_critical(golden_at(0.5)), NotCritical);
  CHECK_THROWS_AS(lift_critical(CircleMapLift(0.1, {}, {0.0, -1 / (4 * oracle::kPi)})), Error);
}

TEST_CASE("a corrupted G breaks commutation") {
  auto t = lift_critical(critical_golden());
  const auto& x = chebyshev_nodes();
  for (int j = 0; j < kTripleNodes; ++j) t.g_nodes[j] += 0.01 * x[j] * x[j];
  CHECK(commutation_defect(t) > 1e-3);
  CHECK_THROWS_AS(project(t), CommutationFailure);
}

TEST_CASE("family lift of near-critical maps") {
  double prev = 0;
  for (double mu : {-0.04, -0.02, -0.01}) {
    const double b = 1 + 2 * oracle::kPi * mu;
    const auto f = golden_at(b);
    FamilyDiagnostics dg;
    const auto t = lift_family(f, &dg);
    CHECK(std::abs(dg.A.imag()) <= 1e-8);
    CHECK(dg.A.real() < 0);
    CHECK(std::abs(dg.c1 - std::conj(dg.c2)) <= 1e-12);
    // H_A has critical values +-(2|A|/3) sqrt(|A|/3); f's must match
    const double A = std::abs(dg.A.real());
    CHECK(std::abs(std::abs(dg.d1 - dg.d2) / 2.0 - 2 * A / 3 * std::sqrt(A / 3)) <= 1e-12);
    CHECK(conjugacy_residual(t, f) <= 1e-10);
    CHECK(commutation_defect(t) <= 1e-8);
    // A shrinks roughly linearly as mu -> 0
    if (prev != 0) CHECK(dg.A.real() / prev == doctest::Approx(0.5).epsilon(0.1));
    prev = dg.A.real();
  }
  // critical input falls back to the critical lift
  FamilyDiagnostics dg;
  const auto t = lift_family(critical_golden(), &dg);
  CHECK(t.a == 0.0);
  CHECK_THROWS_AS(lift_family(CircleMapLift::arnold(0.3, 1.2)), Error);
}
