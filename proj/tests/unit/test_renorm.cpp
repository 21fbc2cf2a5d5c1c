#include <doctest.h>

#include <random>

#include "circlemap/errors.hpp"
#include "circlemap/renorm.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace circlemap;

TEST_CASE("rotation family: P' counts the return time") {
  const auto R = CircleMapLift::rotation(oracle::kGolden);
  const auto P = build_partition(R, 5);
  const Arc arc = branch_arc(R, P, ReturnBranch::QNext);
  const double y = (arc.lo + arc.hi) / 2;
  CHECK(return_map_derivative(R, P, y, ReturnBranch::QNext) == doctest::Approx(double(P.q_n1)));
  const Arc arc2 = branch_arc(R, P, ReturnBranch::QSum);
  CHECK(return_map_derivative(R, P, (arc2.lo + arc2.hi) / 2, ReturnBranch::QSum) ==
        doctest::Approx(double(P.q_n + P.q_n1)));
  const auto e = expansion_lower_bound(R, 5);
  CHECK(e.min_P_prime == doctest::Approx(double(P.q_n1)));
  CHECK(e.Mn_over_Jn >= 1.0);
  // an outside point is rejected
  CHECK_THROWS_AS(return_map_derivative(R, P, arc2.lo - 0.01 * (arc2.hi - arc2.lo) - 1e-9,
                                        ReturnBranch::QSum),
                  WrongBranch);
}

TEST_CASE("sum formula agrees with finite differences") {
  const auto& f = critical_golden();
  const auto P = build_partition(f, 6);
  for (auto w : {ReturnBranch::QNext, ReturnBranch::QSum}) {
    const Arc arc = branch_arc(f, P, w);
    for (double t : {0.1, 0.5, 0.9}) {
      const double y = arc.lo + t * (arc.hi - arc.lo);
      const double s = return_map_derivative(f, P, y, w);
      const double fd = return_map_derivative_fd(f, P, y, w);
      CHECK(s > 0);
      CHECK(std::abs(s - fd) / std::abs(fd) <= 1e-4);
    }
  }
}

TEST_CASE("expansion lower bound for the critical golden map") {
  const auto& f = critical_golden();
  std::vector<double> ratio, minp;
  for (int n = 4; n <= 10; ++n) {
    const auto e = expansion_lower_bound(f, n);
    CHECK(e.min_P_prime >= 0);
    ratio.push_back(e.ratio);
    minp.push_back(e.min_P_prime);
  }
  CHECK(*std::max_element(ratio.begin(), ratio.end()) / *std::min_element(ratio.begin(), ratio.end()) <= 10);
  for (std::size_t i = 1; i < minp.size(); ++i) CHECK(minp[i] > minp[i - 1]);
}

TEST_CASE("expansion rates") {
  const auto R = expansion_rates(CircleMapLift::rotation(oracle::kGolden), 12);
  CHECK(R.s == doctest::Approx(oracle::kGolden).epsilon(1e-9));
  CHECK(R.lambda1_proxy == doctest::Approx(std::pow(oracle::kGolden, -3)).epsilon(1e-8));
  CHECK(std::log(R.lambda1_proxy) / std::log(R.lambda2_proxy) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(R.k == 1);
  const auto C = expansion_rates(critical_golden(), 12);
  CHECK(C.k == 1);
  CHECK(C.s < 1);
  const auto high = CircleMapLift::arnold(tongue_point(ContinuedFraction::constant(7), 1.0, 1e-13), 1.0);
  const auto H = expansion_rates(high, 8);
  CHECK(H.lambda1_proxy > C.lambda1_proxy);
  CHECK_THROWS_AS(expansion_rates(CircleMapLift::rotation(oracle::kGolden), 3), InsufficientLevels);
}

TEST_CASE("smoothness exponent") {
  CHECK(smoothness_exponent(2.83, 1.66) == 2);
  CHECK(smoothness_exponent(8, 2) == 3);
  CHECK_THROWS_AS(smoothness_exponent(1.7, 1.7), HypothesisViolated);
  CHECK_THROWS_AS(smoothness_exponent(2, 0.5), HypothesisViolated);
}
