#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "circlemap/circle_map.hpp"

namespace circlemap {

struct ClosestReturn {
  std::int64_t q;
  std::int64_t p;
  double d;  // F^q(0) - p, signed, |d| < 1/2
};

inline constexpr std::int64_t kPartitionQCap = 100000;

// Closest-return times of the orbit of 0. The list starts at q = 1.
std::vector<ClosestReturn> closest_returns(const CircleMapLift& map, std::int64_t max_q);

struct PartitionInterval {
  bool is_long;   // f^l(I_n) if true, f^l(I_{n+1}) otherwise
  std::int64_t l;
  double left, right;   // left in [0,1), right > left
  double length() const { return right - left; }
};

struct DynamicalPartition {
  int level;
  std::int64_t q_n, q_n1, p_n, p_n1;
  double d_n, d_n1;     // signed returns F^{q}(0) - p
  std::vector<PartitionInterval> intervals;  // sorted by left endpoint
  double M_n;           // |I_n|
  std::int64_t J_index; // l of the shortest long interval, 0 < l < q_{n+1}
  double J_len;
  double total_length;
};

DynamicalPartition build_partition(const CircleMapLift& map, int n,
                                   double cover_tol = 1e-9);

struct PartitionStats {
  double max_adjacent_ratio;
  double max_len;
  std::int64_t shortest_long_l;
  double shortest_long_len;
  double cube_ratio;   // |f(I_n)| / M_n^3
};

PartitionStats partition_stats(const DynamicalPartition& part, const CircleMapLift& map);

// max over 0 < i < q_{n+1} of the derivative spread of f^{q_{n+1}-i} on
// f^i(I_n), sampled at both endpoints and the midpoint
double return_distortion(const DynamicalPartition& part, const CircleMapLift& map);

// true if every interval of fine lies inside an interval of coarse
bool refines(const DynamicalPartition& fine, const DynamicalPartition& coarse,
             double slack = 1e-10);

}  // namespace circlemap
