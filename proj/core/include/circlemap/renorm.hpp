#pragma once

#include <cstdint>
#include <vector>

#include "circlemap/circle_map.hpp"
#include "circlemap/partitions.hpp"

namespace circlemap {

enum class ReturnBranch { QNext, QSum };  // q_{n+1} or q_n + q_{n+1}

// Derivative in a of f_a^Q(y) for the family f_a = f + a at a = 0, via
// sum_{l=1..Q} (f^{Q-l})'(y_l). y is a real coordinate near the critical
// point 0; the branch must match the side of 0 that y lies on.
double return_map_derivative(const CircleMapLift& map, int n, double y, ReturnBranch which);
double return_map_derivative(const CircleMapLift& map, const DynamicalPartition& part,
                             double y, ReturnBranch which);
// central difference (P_{a+eps}(y) - P_{a-eps}(y)) / 2 eps
double return_map_derivative_fd(const CircleMapLift& map, const DynamicalPartition& part,
                                double y, ReturnBranch which, double eps = 1e-6);

// Arc of the first-return domain served by a branch: [lo, hi] around 0.
struct Arc {
  double lo, hi;
};
Arc branch_arc(const CircleMapLift& map, const DynamicalPartition& part, ReturnBranch which);

struct ExpansionBound {
  double min_P_prime;
  double Mn_over_Jn;
  double ratio;
};
ExpansionBound expansion_lower_bound(const CircleMapLift& map, int n, int samples = 64);

struct ExpansionEstimate {
  std::vector<int> levels;
  std::vector<std::int64_t> q;
  std::vector<double> inv_Jn, Mn, Jn;
  double s;
  double log_lambda1, log_lambda2;
  double lambda1_proxy, lambda2_proxy;
  int k;
};
ExpansionEstimate expansion_rates(const CircleMapLift& map, int n_max,
                                  std::int64_t max_q = kPartitionQCap);

int smoothness_exponent(double lambda1, double lambda2);

}  // namespace circlemap
