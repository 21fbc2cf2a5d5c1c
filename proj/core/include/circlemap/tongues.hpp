#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "circlemap/cf.hpp"
#include "circlemap/circle_map.hpp"
#include "circlemap/rotation.hpp"

namespace circlemap {

struct TongueOptions {
  std::int64_t q_cap = 1000000;  // largest convergent denominator used
  std::int64_t residual_q_cap = 100000;
};

struct TonguePoint {
  double a;
  double a_lo, a_hi;    // rot(f_{a_lo}) < alpha < rot(f_{a_hi}) certified
  double residual;      // Farey bracket width of rot at (a, b)
  bool resolved;        // false if the comparator ran out of convergents
};

struct TongueSample {
  double b, a, residual;
};

// a*(b) with rot(x + a - (b/2 pi) sin 2 pi x) = alpha
TonguePoint tongue_point_full(const ContinuedFraction& alpha, double b, double tol,
                              const TongueOptions& opt = {});
double tongue_point(const ContinuedFraction& alpha, double b, double tol,
                    const TongueOptions& opt = {});
std::vector<TongueSample> tongue_curve(const ContinuedFraction& alpha,
                                       const std::vector<double>& b_grid, double tol,
                                       const TongueOptions& opt = {});

struct BoundaryPair {
  double a_left, a_right;
  double x_left, x_right;     // periodic point with unit multiplier
  double residual;            // max of |g1|, |g2| over both solutions
};
BoundaryPair rational_boundary_full(std::int64_t p, std::int64_t q, double b);
std::pair<double, double> rational_boundary(std::int64_t p, std::int64_t q, double b);

struct StairStep {
  double a;
  Rational lo, hi;
};
std::vector<StairStep> staircase(double b, const std::vector<double>& a_grid,
                                 std::int64_t q_cap = 1000);

}  // namespace circlemap
