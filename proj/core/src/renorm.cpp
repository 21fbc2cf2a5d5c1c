#include "circlemap/renorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "circlemap/errors.hpp"

namespace circlemap {

namespace {

std::int64_t branch_time(const DynamicalPartition& P, ReturnBranch w) {
  return w == ReturnBranch::QNext ? P.q_n1 : P.q_n + P.q_n1;
}

std::int64_t branch_shift(const DynamicalPartition& P, ReturnBranch w) {
  return w == ReturnBranch::QNext ? P.p_n1 : P.p_n + P.p_n1;
}

const char* branch_name(ReturnBranch w) {
  return w == ReturnBranch::QNext ? "q_{n+1}" : "q_n+q_{n+1}";
}

// floor(log l1 / log l2) with a relative guard against ratios that are
// integers up to rounding
int floor_ratio(double r) { return static_cast<int>(std::floor(r + 1e-9 * std::max(1.0, r))); }

}  // namespace

Arc branch_arc(const CircleMapLift& map, const DynamicalPartition& P, ReturnBranch which) {
  double end;
  if (which == ReturnBranch::QNext) {
    end = iterate_displacement(map, 0.0, P.q_n + P.q_n1, P.p_n + P.p_n1);
  } else {
    end = P.d_n1;
  }
  return {std::min(0.0, end), std::max(0.0, end)};
}

double return_map_derivative(const CircleMapLift& map, const DynamicalPartition& P, double y,
                             ReturnBranch which) {
  const Arc arc = branch_arc(map, P, which);
  const double slack = 1e-15;
  if (y < arc.lo - slack || y > arc.hi + slack)
    throw WrongBranch("y = " + std::to_string(y) + " is not in the " + branch_name(which) +
                      " return arc [" + std::to_string(arc.lo) + ", " +
                      std::to_string(arc.hi) + "]");
  const std::int64_t Q = branch_time(P, which);
  LiftedPoint pt = lifted(y);
  double S = 0.0;
  for (std::int64_t k = 0; k < Q; ++k) {
    double fp;
    pt = step(map, pt, fp);
    S = fp * S + 1.0;
  }
  return S;
}

double return_map_derivative(const CircleMapLift& map, int n, double y, ReturnBranch which) {
  return return_map_derivative(map, build_partition(map, n), y, which);
}

double return_map_derivative_fd(const CircleMapLift& map, const DynamicalPartition& P,
                                double y, ReturnBranch which, double eps) {
  const std::int64_t Q = branch_time(P, which), p = branch_shift(P, which);
  const double up = iterate_displacement(map.with_c0(map.c0() + eps), y, Q, p);
  const double dn = iterate_displacement(map.with_c0(map.c0() - eps), y, Q, p);
  return (up - dn) / (2.0 * eps);
}

ExpansionBound expansion_lower_bound(const CircleMapLift& map, int n, int samples) {
  if (samples < 2) throw InvalidArgument("need at least two samples per arc");
  const DynamicalPartition P = build_partition(map, n);
  double mn = std::numeric_limits<double>::infinity();
  for (ReturnBranch w : {ReturnBranch::QNext, ReturnBranch::QSum}) {
    const Arc arc = branch_arc(map, P, w);
    for (int i = 0; i < samples; ++i) {
      const double t = double(i) / double(samples - 1);
      const double y = arc.lo + t * (arc.hi - arc.lo);
      mn = std::min(mn, return_map_derivative(map, P, y, w));
    }
  }
  ExpansionBound e;
  e.min_P_prime = mn;
  e.Mn_over_Jn = P.M_n / P.J_len;
  e.ratio = mn / e.Mn_over_Jn;
  return e;
}

ExpansionEstimate expansion_rates(const CircleMapLift& map, int n_max, std::int64_t max_q) {
  if (n_max < 0 || n_max > 14) throw InvalidArgument("n_max must be in 0..14");
  const auto ret = closest_returns(map, max_q);
  ExpansionEstimate e{};
  for (int n = 0; n <= n_max && n < static_cast<int>(ret.size()); ++n) {
    e.levels.push_back(n);
    e.q.push_back(ret[n].q);
    e.Mn.push_back(std::abs(ret[n].d));
    double J = std::numeric_limits<double>::quiet_NaN();
    if (n + 1 < static_cast<int>(ret.size()) && ret[n + 1].q <= kPartitionQCap) {
      try {
        J = build_partition(map, n).J_len;
      } catch (const CoverFailure&) {
      }
    }
    e.Jn.push_back(J);
    e.inv_Jn.push_back(1.0 / J);
  }
  const int m = static_cast<int>(e.levels.size());
  if (m < 6)
    throw InsufficientLevels("only " + std::to_string(m) +
                             " closest-return levels below the q cap; need 6");
  // least squares slope of log M_n over the last 6 levels
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = m - 6; i < m; ++i) {
    const double x = e.levels[i], y = std::log(e.Mn[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (6 * sxy - sx * sy) / (6 * sxx - sx * sx);
  e.s = std::exp(slope);
  const double t = -slope;
  e.log_lambda2 = 2.0 * t;
  e.log_lambda1 = 3.0 * t;
  e.lambda1_proxy = std::exp(e.log_lambda1);
  e.lambda2_proxy = std::exp(e.log_lambda2);
  if (!(t > 0)) throw HypothesisViolated("M_n does not decay; the proxies are not expanding");
  e.k = floor_ratio(e.log_lambda1 / e.log_lambda2);
  return e;
}

int smoothness_exponent(double lambda1, double lambda2) {
  if (!(std::isfinite(lambda1) && std::isfinite(lambda2)) || !(lambda2 > 1.0) ||
      !(lambda1 > lambda2))
    throw HypothesisViolated("need lambda1 > lambda2 > 1");
  return floor_ratio(std::log(lambda1) / std::log(lambda2));
}

}  // namespace circlemap
