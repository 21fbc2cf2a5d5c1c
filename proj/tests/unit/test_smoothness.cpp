#include <doctest.h>

#include <limits>

#include "circlemap/errors.hpp"
#include "circlemap/smoothness.hpp"
#include "oracles.hpp"

using namespace circlemap;

namespace {

SmoothnessReport synthetic(double (*y)(double), int j_max = 14) {
  std::vector<double> b, a, e;
  for (int j = 3; j <= j_max; ++j) {
    const double x = 1 - std::ldexp(1.0, -j);
    b.push_back(x);
    a.push_back(y(x));
    e.push_back(4 * std::numeric_limits<double>::epsilon() * std::abs(y(x)));
  }
  return analyze_samples(b, a, e);
}

}  // namespace

TEST_CASE("divided differences agree with the Lagrange form") {
  const std::vector<double> x{0.1, 0.3, 0.35, 0.6, 0.9, 0.95};
  std::vector<double> y;
  for (double v : x) y.push_back(std::exp(v) * std::sin(3 * v));
  for (int m = 1; m <= 4; ++m) {
    const auto d = divided_differences(x, y, m);
    REQUIRE(d.size() == x.size() - m);
    for (std::size_t i = 0; i < d.size(); ++i) {
      const std::vector<double> xs(x.begin() + i, x.begin() + i + m + 1);
      const std::vector<double> ys(y.begin() + i, y.begin() + i + m + 1);
      CHECK(d[i] == doctest::Approx(oracle::divided_difference(xs, ys)).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(divided_differences({0.1, 0.1 + 1e-15, 0.2}, {1, 2, 3}, 1), DegenerateNodes);
  CHECK_THROWS_AS(divided_differences({0.2, 0.1}, {1, 2}, 1), InvalidArgument);
}

TEST_CASE("synthetic smoothness classes") {
  CHECK(synthetic([](double b) { return std::pow(1 - b, 1.5); }).estimated_k == 1);
  CHECK(synthetic([](double b) { return std::pow(1 - b, 2.05); }).estimated_k == 2);
  CHECK(synthetic([](double b) { return std::pow(1 - b, 2.5); }).estimated_k == 2);
  const auto line = synthetic([](double b) { return 0.25 + b / (2 * oracle::kPi); });
  CHECK(line.estimated_k == 4);
  // literal vanishing of order 2 while rounding is still small
  const auto short_line = synthetic([](double b) { return 0.25 + b / (2 * oracle::kPi); }, 10);
  for (double d : short_line.divided_diffs[1]) CHECK(std::abs(d) <= 1e-9);
}

TEST_CASE("probe argument checks") {
  CHECK_THROWS_AS(probe_report(ContinuedFraction::golden(), 5, 1e-10), InvalidArgument);
  CHECK_THROWS_AS(probe_report(ContinuedFraction::golden(), 20, 1e-10), InvalidArgument);
  CHECK_THROWS_AS(probe_report(ContinuedFraction({1, 1, 5000}, PeriodicTail{3, 1}), 8, 1e-10),
                  HypothesisViolated);
}

TEST_CASE("probe samples the tongue") {
  const auto r = probe_report(ContinuedFraction::golden(), 8, 1e-10);
  REQUIRE(r.b_samples.size() == 6);
  CHECK(r.b_samples.front() == 1 - 0.125);
  for (std::size_t i = 0; i < r.a_values.size(); ++i) {
    CHECK(r.a_error[i] <= 1e-10);
    const double b = r.b_samples[i], a = r.a_values[i];
    const double birk = oracle::birkhoff_rotation([&](double x) { return oracle::arnold(a, b, x); }, 200000);
    CHECK(std::abs(birk - oracle::kGolden) <= 2e-5);
  }
}
