#include <doctest.h>

#include <random>

#include "circlemap/circle_map.hpp"
#include "circlemap/errors.hpp"
#include "circlemap/rotation.hpp"
#include "oracles.hpp"

using namespace circlemap;

TEST_CASE("rigid rotations") {
  const auto r = rot_bracket(CircleMapLift::rotation(0.3));
  CHECK(r.exact);
  CHECK(r.lower == Rational{3, 10});
  CHECK(r.upper == Rational{3, 10});
  const auto g = rot_digits(CircleMapLift::rotation(oracle::kGolden), 25);
  CHECK(std::abs(g.estimate - oracle::kGolden) <= 1e-9);
  for (auto d : g.digits) CHECK(d == 1);
  CHECK(g.lower.value() <= oracle::kGolden);
  CHECK(g.upper.value() >= oracle::kGolden);
  CHECK(rot_birkhoff(CircleMapLift::rotation(0.25), 1000) == doctest::Approx(0.25));
}

TEST_CASE("plateaus are reported") {
  const auto f = CircleMapLift::arnold(0.0, 0.5);
  CHECK_THROWS_AS(rot_digits(f, 10), RationalRotation);
  try {
    rot_digits(CircleMapLift::arnold(0.5, 0.7), 10);
    FAIL("expected a plateau");
  } catch (const RationalRotation& e) {
    CHECK(e.p() == 1);
    CHECK(e.q() == 2);
  }
  const auto b = rot_bracket(f);
  CHECK(b.exact);
  CHECK(b.lower == Rational{0, 1});
  CHECK(has_periodic_orbit(f, 0, 1));
  CHECK(!has_periodic_orbit(CircleMapLift::arnold(0.3, 0.5), 0, 1));
}

TEST_CASE("comparators") {
  const auto f = CircleMapLift::arnold(0.3, 0.8);
  CHECK(rot_ge(f, 1, 4));
  CHECK(!rot_ge(f, 1, 2));
  CHECK(rot_le(f, 1, 2));
  CHECK(!rot_le(f, 1, 5));
  const auto dr = displacement_range(f, 0, 1);
  CHECK(dr.min == doctest::Approx(0.3 - 0.8 / (2 * oracle::kPi)).epsilon(1e-9));
  CHECK(dr.max == doctest::Approx(0.3 + 0.8 / (2 * oracle::kPi)).epsilon(1e-9));
}

TEST_CASE("odd symmetry of the Arnold family") {
  for (double a : {0.17, 0.31, 0.42}) {
    const auto p = rot_bracket(CircleMapLift::arnold(a, 0.9));
    const auto m = rot_bracket(CircleMapLift::arnold(-a, 0.9));
    CHECK(p.estimate + m.estimate == doctest::Approx(0.0).epsilon(1e-9));
  }
}

TEST_CASE("certified brackets agree with Birkhoff averages") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> A(0.0, 1.0), B(0.0, 0.99);
  for (int i = 0; i < 100; ++i) {
    const double a = A(rng), b = B(rng);
    const auto f = CircleMapLift::arnold(a, b);
    const auto r = rot_bracket(f, 10000);
    const double birk = oracle::birkhoff_rotation(
        [&](double x) { return oracle::arnold(a, b, x); }, 200000);
    // Birkhoff error is O(1/n); the bracket is certified
    CHECK(birk >= r.lower.value() - 2e-5);
    CHECK(birk <= r.upper.value() + 2e-5);
  }
}

TEST_CASE("monotonicity is enforced") {
  CHECK_THROWS_AS(rot_bracket(CircleMapLift::arnold(0.2, 1.3)), NonMonotoneMap);
}
