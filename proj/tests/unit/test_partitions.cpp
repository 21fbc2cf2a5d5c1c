#include <doctest.h>

#include "circlemap/errors.hpp"
#include "circlemap/partitions.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace circlemap;

namespace {

double fit_rate(const std::vector<double>& y) {
  // exp of the least-squares slope of log y against the index
  const double n = double(y.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double x = double(i), l = std::log(y[i]);
    sx += x;
    sy += l;
    sxx += x * x;
    sxy += x * l;
  }
  return std::exp((n * sxy - sx * sy) / (n * sxx - sx * sx));
}

}  // namespace

TEST_CASE("closest returns of the golden rotation") {
  const auto r = closest_returns(CircleMapLift::rotation(oracle::kGolden), 10000);
  const auto fib = oracle::fibonacci_from_1_2(static_cast<int>(r.size()));
  REQUIRE(r.size() >= 15);
  for (std::size_t n = 0; n < r.size(); ++n) {
    CHECK(r[n].q == fib[n]);
    CHECK(std::abs(r[n].d) == doctest::Approx(std::pow(oracle::kGolden, n + 2)).epsilon(1e-9));
    if (n > 0) CHECK(r[n].d * r[n - 1].d < 0);
  }
  CHECK_THROWS_AS(closest_returns(CircleMapLift::rotation(0.4), 100), PeriodicOrbit);
}

TEST_CASE("partition of the golden rotation") {
  const auto R = CircleMapLift::rotation(oracle::kGolden);
  const auto P = build_partition(R, 3);
  CHECK(P.q_n == 5);
  CHECK(P.q_n1 == 8);
  int nl = 0, ns = 0;
  for (const auto& I : P.intervals) (I.is_long ? nl : ns)++;
  CHECK(nl == 8);
  CHECK(ns == 5);
  CHECK(P.total_length == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(P.M_n == doctest::Approx(std::pow(oracle::kGolden, 5)).epsilon(1e-12));
  const auto s = partition_stats(P, R);
  CHECK(s.max_adjacent_ratio <= 1 / (oracle::kGolden * oracle::kGolden) + 1e-9);
  const auto P0 = build_partition(R, 0);
  CHECK(P0.intervals.size() == std::size_t(P0.q_n + P0.q_n1));
  CHECK_THROWS_AS(build_partition(R, -1), InvalidArgument);
}

TEST_CASE("partitions of the critical golden map") {
  const auto& f = critical_golden();
  const auto P8 = build_partition(f, 8);
  CHECK(std::abs(P8.total_length - 1.0) <= 1e-9);
  for (std::size_t i = 1; i < P8.intervals.size(); ++i)
    CHECK(std::abs(P8.intervals[i].left - P8.intervals[i - 1].right) <= 1e-9);
  std::vector<double> cube, adj, maxlen;
  for (int n = 4; n <= 12; ++n) {
    const auto P = build_partition(f, n);
    const auto s = partition_stats(P, f);
    cube.push_back(s.cube_ratio);
    adj.push_back(s.max_adjacent_ratio);
    maxlen.push_back(s.max_len);
    CHECK(s.shortest_long_l > 0);
    CHECK(s.shortest_long_l < P.q_n1);
    if (n <= 10) CHECK(return_distortion(P, f) <= 1e3);
    if (n > 4) CHECK(refines(P, build_partition(f, n - 1)));
  }
  const auto span = [](const std::vector<double>& v) {
    return *std::max_element(v.begin(), v.end()) / *std::min_element(v.begin(), v.end());
  };
  CHECK(span(cube) <= 10);
  CHECK(span(adj) <= 5);
  CHECK(fit_rate(maxlen) < 0.9);
}
