#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "circlemap/circle_map.hpp"

namespace circlemap {

// Discrete measure used for integrals: mu has atoms (mu_x, mu_w); nu is
// the pull-back of mu by f, so that  int v(f^{-1}(x)) dmu(x) = sum nu_w v(nu_x).
struct QuadratureRule {
  std::vector<double> mu_x, mu_w, nu_x, nu_w;
};

struct DiscreteDensity {
  int grid_n = 0;
  std::vector<double> weights;   // cell values, sum(weights)/grid_n = 1
  double residual = 0.0;         // L1 change over the last doubling
  std::int64_t iterations = 0;   // averaging length reached
  std::string method;            // "pointwise" | "ensemble" | "given"
  QuadratureRule rule;           // empty: built from weights on demand
};

struct DensityOptions {
  int orbits = 256;                    // ensemble size for critical maps
  std::vector<double> initial;         // starting cell density (grid_n values), default uniform
  std::int64_t min_length = 0;         // first averaging length; 0 picks per method
};

// Weights are normalized; no quadrature rule is attached.
DiscreteDensity density_from_weights(std::vector<double> weights);

DiscreteDensity minus_one_density(const CircleMapLift& map, int grid_n, std::int64_t max_iter,
                                  double tol, const DensityOptions& opt = {});

// Midpoint rule for mu, nodes f^{-1}(midpoints) for nu.
QuadratureRule midpoint_rule(const CircleMapLift& map, const DiscreteDensity& d);

double invariance_residual(const CircleMapLift& map, const DiscreteDensity& d, int test_degree);

double functional_L(const CircleMapLift& map, const DiscreteDensity& d,
                    const std::function<double(double)>& v);

// S_1..S_n of sum_{k>=1} 1/(f^k)'(p)
std::vector<double> reciprocal_derivative_series(const CircleMapLift& map, double p,
                                                 std::int64_t n_terms);

double l1_distance(const DiscreteDensity& a, const DiscreteDensity& b);
double max_cell_mass(const DiscreteDensity& d);

}  // namespace circlemap
