#include "circlemap/partitions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "circlemap/errors.hpp"
#include "circlemap/parallel.hpp"

namespace circlemap {

namespace {

constexpr double kPeriodicTol = 1e-13;

ClosestReturn signed_return(std::int64_t t, LiftedPoint x) {
  if (x.frac > 0.5) return {t, x.n + 1, x.frac - 1.0};
  return {t, x.n, x.frac};
}

// Orbit of 0 and its closest returns; stops once `want` returns are known
// (want < 0: run to max_q).
std::vector<ClosestReturn> scan(const CircleMapLift& map, std::int64_t max_q, int want,
                                std::vector<LiftedPoint>* orbit) {
  require_monotone(map);
  std::vector<ClosestReturn> out;
  LiftedPoint x;
  if (orbit) orbit->push_back(x);
  double best = std::numeric_limits<double>::infinity();
  for (std::int64_t t = 1; t <= max_q; ++t) {
    x = step(map, x);
    if (orbit) orbit->push_back(x);
    const ClosestReturn r = signed_return(t, x);
    if (std::abs(r.d) < best) {
      if (std::abs(r.d) < kPeriodicTol) throw PeriodicOrbit(t);
      best = std::abs(r.d);
      out.push_back(r);
      if (want >= 0 && static_cast<int>(out.size()) >= want) break;
    }
  }
  return out;
}

PartitionInterval make_interval(bool is_long, std::int64_t l, LiftedPoint a,
                                LiftedPoint b, std::int64_t shift_b) {
  // both endpoints relative to a's integer part to keep full precision
  const double A = a.frac;
  const double B = static_cast<double>(b.n - shift_b - a.n) + b.frac;
  double lo = std::min(A, B), hi = std::max(A, B);
  const double fl = std::floor(lo);
  lo -= fl;
  hi -= fl;
  return {is_long, l, lo, hi};
}

}  // namespace

std::vector<ClosestReturn> closest_returns(const CircleMapLift& map, std::int64_t max_q) {
  if (max_q < 1) throw InvalidArgument("max_q must be positive");
  return scan(map, max_q, -1, nullptr);
}

DynamicalPartition build_partition(const CircleMapLift& map, int n, double cover_tol) {
  if (n < 0) throw InvalidArgument("partition level must be >= 0");
  std::vector<LiftedPoint> orbit;
  const auto ret = scan(map, kPartitionQCap, n + 2, &orbit);
  if (static_cast<int>(ret.size()) < n + 2)
    throw InsufficientLevels("q_" + std::to_string(n + 1) + " exceeds the return-time cap");
  const ClosestReturn rn = ret[n], rn1 = ret[n + 1];
  const std::int64_t need = rn.q + rn1.q;
  LiftedPoint x = orbit.back();
  while (static_cast<std::int64_t>(orbit.size()) <= need) {
    x = step(map, x);
    orbit.push_back(x);
  }
  DynamicalPartition P;
  P.level = n;
  P.q_n = rn.q;
  P.q_n1 = rn1.q;
  P.p_n = rn.p;
  P.p_n1 = rn1.p;
  P.d_n = rn.d;
  P.d_n1 = rn1.d;
  P.M_n = std::abs(rn.d);
  P.intervals.reserve(rn.q + rn1.q);
  for (std::int64_t l = 0; l < rn1.q; ++l)
    P.intervals.push_back(make_interval(true, l, orbit[l], orbit[l + rn.q], rn.p));
  for (std::int64_t l = 0; l < rn.q; ++l)
    P.intervals.push_back(make_interval(false, l, orbit[l], orbit[l + rn1.q], rn1.p));

  P.J_index = -1;
  P.J_len = std::numeric_limits<double>::infinity();
  for (const auto& I : P.intervals)
    if (I.is_long && I.l > 0 && I.length() < P.J_len) {
      P.J_len = I.length();
      P.J_index = I.l;
    }
  if (P.J_index < 0) {  // q_{n+1} == 1 cannot happen past the first return, keep total
    P.J_index = 0;
    P.J_len = P.M_n;
  }

  std::sort(P.intervals.begin(), P.intervals.end(),
            [](const PartitionInterval& a, const PartitionInterval& b) { return a.left < b.left; });
  double total = 0.0;
  for (const auto& I : P.intervals) total += I.length();
  P.total_length = total;
  if (std::abs(total - 1.0) > cover_tol)
    throw CoverFailure("level " + std::to_string(n) + ": total length " +
                       std::to_string(total) + " differs from 1");
  const std::size_t m = P.intervals.size();
  for (std::size_t i = 0; i < m; ++i) {
    const auto& cur = P.intervals[i];
    const double next_left = (i + 1 < m) ? P.intervals[i + 1].left : P.intervals[0].left + 1.0;
    const double gap = next_left - cur.right;
    if (std::abs(gap) > cover_tol)
      throw CoverFailure("level " + std::to_string(n) + ": " +
                         (gap > 0 ? "gap" : "overlap") + " of " + std::to_string(gap) +
                         " at x = " + std::to_string(cur.right));
  }
  return P;
}

PartitionStats partition_stats(const DynamicalPartition& part, const CircleMapLift& map) {
  (void)map;
  PartitionStats s{};
  const auto& iv = part.intervals;
  const std::size_t m = iv.size();
  s.max_adjacent_ratio = 1.0;
  s.max_len = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double a = iv[i].length(), b = iv[(i + 1) % m].length();
    if (m > 1) s.max_adjacent_ratio = std::max(s.max_adjacent_ratio, std::max(a / b, b / a));
    s.max_len = std::max(s.max_len, a);
  }
  s.shortest_long_l = part.J_index;
  s.shortest_long_len = part.J_len;
  double f_in = part.M_n;
  for (const auto& I : iv)
    if (I.is_long && I.l == 1) f_in = I.length();
  s.cube_ratio = f_in / (part.M_n * part.M_n * part.M_n);
  return s;
}

double return_distortion(const DynamicalPartition& part, const CircleMapLift& map) {
  std::vector<const PartitionInterval*> longs;
  for (const auto& I : part.intervals)
    if (I.is_long && I.l > 0) longs.push_back(&I);
  std::vector<double> dist(longs.size(), 1.0);
  parallel_for(longs.size(), [&](std::size_t k) {
    const PartitionInterval& I = *longs[k];
    const std::int64_t steps = part.q_n1 - I.l;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (double x : {I.left, 0.5 * (I.left + I.right), I.right}) {
      double d;
      iterate_lift(map, x, steps, &d);
      d = std::abs(d);
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    dist[k] = lo > 0 ? hi / lo : std::numeric_limits<double>::infinity();
  });
  double mx = 1.0;
  for (double d : dist) mx = std::max(mx, d);
  return mx;
}

bool refines(const DynamicalPartition& fine, const DynamicalPartition& coarse, double slack) {
  const auto& C = coarse.intervals;
  for (const auto& I : fine.intervals) {
    bool inside = false;
    for (double shift : {0.0, 1.0}) {
      const double x = I.left + shift + slack;
      auto it = std::upper_bound(C.begin(), C.end(), x,
                                 [](double v, const PartitionInterval& c) { return v < c.left; });
      if (it == C.begin()) continue;
      --it;
      if (I.left + shift >= it->left - slack && I.right + shift <= it->right + slack) {
        inside = true;
        break;
      }
    }
    if (!inside) return false;
  }
  return true;
}

}  // namespace circlemap
