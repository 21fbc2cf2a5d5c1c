#include <doctest.h>

#include "circlemap/errors.hpp"
#include "circlemap/measures.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace circlemap;

namespace {

// f = h^-1 o R_gamma o h with h(x) = x + A sin 2 pi x, so the (-1)-density
// is h'^2 = (1 + 2 pi A cos 2 pi x)^2 up to normalization
CircleMapLift conjugated_rotation(double A) {
  auto h = [A](double x) { return x + A * std::sin(2 * oracle::kPi * x); };
  auto hinv = [&](double y) {
    double x = y;
    for (int i = 0; i < 60; ++i)
      x -= (h(x) - y) / (1 + 2 * oracle::kPi * A * std::cos(2 * oracle::kPi * x));
    return x;
  };
  return fit_lift([&](double x) { return hinv(h(x) + oracle::kGolden); }, 64, 1e-16);
}

double mean_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s / a.size();
}

}  // namespace

TEST_CASE("rigid rotation has the uniform density") {
  const auto d = minus_one_density(CircleMapLift::rotation(oracle::kGolden), 256, 4096, 1e-10);
  CHECK(d.method == "pointwise");
  for (double w : d.weights) CHECK(w == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(functional_L(CircleMapLift::rotation(oracle::kGolden), d, [](double x) {
          return std::cos(2 * oracle::kPi * x);
        }) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("conjugated rotation recovers h'^2") {
  const int n = 512;
  for (double A : {0.05, 0.1}) {
    const auto f = conjugated_rotation(A);
    DensityOptions opt;
    opt.min_length = 2048;
    const auto d = minus_one_density(f, n, 4096, 1e9, opt);
    const auto ref = oracle::squared_derivative_midpoints(2 * oracle::kPi * A, n);
    const double err = mean_abs_diff(d.weights, ref);
    if (A < 0.075)
      CHECK(err <= 1e-9);
    else
      CHECK(err <= 1e-3);
    CHECK(invariance_residual(f, d, 8) <= 1e-6);
  }
}

TEST_CASE("invariance detects a perturbed density") {
  const auto f = golden_at(0.5);
  const auto d = minus_one_density(f, 1024, 20000, 1e-8);
  CHECK(d.residual <= 1e-8);
  CHECK(invariance_residual(f, d, 8) <= 1e-6);
  CHECK(functional_L(f, d, [](double) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-12));
  // L(w o f - f' w) vanishes for trigonometric w
  const double L = functional_L(f, d, [&](double y) {
    const auto w = [](double x) { return std::sin(2 * oracle::kPi * x) + 0.3 * std::cos(4 * oracle::kPi * x); };
    return w(eval_lift(f, y, 0)) - eval_lift(f, y, 1) * w(y);
  });
  CHECK(std::abs(L) <= 1e-6);
  auto w = d.weights;
  w[100] *= 2;
  CHECK(invariance_residual(f, density_from_weights(w), 8) > 1e-3);
  CHECK(l1_distance(d, d) == 0.0);
  CHECK(max_cell_mass(d) < 0.01);
}

TEST_CASE("reciprocal derivative series") {
  const auto r = reciprocal_derivative_series(CircleMapLift::rotation(oracle::kGolden), 0.3, 50);
  for (int n = 1; n <= 50; ++n) CHECK(r[n - 1] == doctest::Approx(double(n)).epsilon(1e-14));
  const auto S = reciprocal_derivative_series(critical_golden(), 0.3, 200);
  CHECK(S[199] / S[99] >= 1.3);
  const auto D = reciprocal_derivative_series(golden_at(0.5), 0.3, 1000);
  for (std::size_t n = 1; n <= D.size(); ++n) CHECK(D[n - 1] >= 2.0 * n / 3.0);
  CHECK_THROWS_AS(reciprocal_derivative_series(critical_golden(), 0.0, 5), HitCriticalOrbit);
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(density_from_weights({1.0, -1.0}), InvalidArgument);
  const auto a = density_from_weights({1, 1});
  const auto b = density_from_weights({1, 1, 1});
  CHECK_THROWS_AS(l1_distance(a, b), InvalidArgument);
}
