#include "circlemap/tongues.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "circlemap/errors.hpp"
#include "circlemap/parallel.hpp"

namespace circlemap {

namespace {

enum class Cmp { Less, Greater, Undecided };

double zero_tol(std::int64_t q) {
  return 16.0 * std::numeric_limits<double>::epsilon() * double(q) + 1e-13;
}

// Convergents of alpha up to the first denominator above q_cap.
Convergents convergents_to(const ContinuedFraction& alpha, std::int64_t q_cap) {
  std::size_t n = 1;
  for (;;) {
    if (!alpha.has_digit(n)) return convergents(alpha, n - 1);
    Convergents c = convergents(alpha, n);
    if (c.q.back() > q_cap || n >= 90) return c;
    ++n;
  }
}

// Compares rot(f_a) with alpha using single-orbit certificates at the
// convergents: rot >= c > alpha or rot <= c < alpha.
Cmp compare(const CircleMapLift& m, const Convergents& cv, std::int64_t q_cap) {
  for (std::size_t k = 1; k < cv.q.size(); ++k) {
    const std::int64_t p = cv.p[k], q = cv.q[k];
    if (q > q_cap) break;
    const double s = iterate_displacement(m, 0.0, q, p);
    const double tol = zero_tol(q);
    const bool above = (k % 2) == 1;  // odd convergents exceed alpha
    if (above && s > tol) return Cmp::Greater;
    if (!above && s < -tol) return Cmp::Less;
  }
  return Cmp::Undecided;
}

struct Solution {
  double x, a, res;
};

struct System {
  double g1, g2, j11, j12, j21, j22;
};

System eval_system(const CircleMapLift& base, double x, double a, std::int64_t p,
                   std::int64_t q) {
  const CircleMapLift m = base.with_c0(a);
  LiftedPoint pt = lifted(x);
  const LiftedPoint x0 = pt;
  double D = 1, S = 0, E = 0, M = 0;
  for (std::int64_t k = 0; k < q; ++k) {
    const Jet j = eval_jet(m, pt.frac);
    // order matters: each update uses the previous D, S
    E = j.d2 * D * D + j.d1 * E;
    M = j.d2 * S * D + j.d1 * M;
    D = j.d1 * D;
    S = j.d1 * S + 1.0;
    pt = step(m, pt);
  }
  System s;
  s.g1 = static_cast<double>(pt.n - x0.n - p) + (pt.frac - x0.frac);
  s.g2 = D - 1.0;
  s.j11 = D - 1.0;
  s.j12 = S;
  s.j21 = E;
  s.j22 = M;
  return s;
}

bool newton(const CircleMapLift& base, double x, double a, std::int64_t p, std::int64_t q,
            double a_lo, double a_hi, Solution& out) {
  System s = eval_system(base, x, a, p, q);
  double nrm = std::max(std::abs(s.g1), std::abs(s.g2));
  int polish = 0;
  for (int it = 0; it < 80; ++it) {
    if (nrm < 1e-13) {
      if (++polish > 2) break;
    }
    const double det = s.j11 * s.j22 - s.j12 * s.j21;
    if (!std::isfinite(det) || std::abs(det) < 1e-300) return false;
    const double dx = -(s.j22 * s.g1 - s.j12 * s.g2) / det;
    const double da = -(-s.j21 * s.g1 + s.j11 * s.g2) / det;
    double lam = 1.0;
    bool accepted = false;
    for (int h = 0; h < 30; ++h) {
      const double nx = x + lam * dx, na = a + lam * da;
      const System t = eval_system(base, nx, na, p, q);
      const double tn = std::max(std::abs(t.g1), std::abs(t.g2));
      if (std::isfinite(tn) && (tn < nrm || (nrm < 1e-13 && tn <= 2 * nrm + 1e-16))) {
        x = nx;
        a = na;
        s = t;
        nrm = tn;
        accepted = true;
        break;
      }
      lam *= 0.5;
    }
    if (!accepted) break;
    if (std::abs(a) > 1e3) return false;
  }
  if (!(nrm <= 1e-11) || a < a_lo || a > a_hi) return false;
  out = {x - std::floor(x), a, nrm};
  return true;
}

}  // namespace

TonguePoint tongue_point_full(const ContinuedFraction& alpha, double b, double tol,
                              const TongueOptions& opt) {
  if (!(b >= 0.0 && b <= 1.0)) throw InvalidArgument("tongue_point needs b in [0,1]");
  if (!(tol > 0)) throw InvalidArgument("tongue_point needs tol > 0");
  if (alpha.terminates()) throw InvalidArgument("alpha must be irrational");
  const double v = alpha.value();
  if (!(v > 0.0 && v < 1.0)) throw BracketFailure("alpha is not inside (0,1)");
  TonguePoint tp{v, v, v, 0.0, true};
  if (b == 0.0) {
    const RotationResult r = rot_bracket(CircleMapLift::rotation(v), opt.residual_q_cap);
    tp.residual = r.upper.value() - r.lower.value();
    return tp;
  }
  const Convergents cv = convergents_to(alpha, opt.q_cap);
  auto cmp = [&](double a) {
    return compare(CircleMapLift::arnold(a, b), cv, opt.q_cap);
  };
  double lo = 0.0, hi = 1.0;
  if (cmp(lo) != Cmp::Less || cmp(hi) != Cmp::Greater)
    throw BracketFailure("[0,1] does not straddle the alpha tongue");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const Cmp c = cmp(mid);
    if (c == Cmp::Undecided) {
      tp.resolved = false;
      break;
    }
    (c == Cmp::Less ? lo : hi) = mid;
  }
  tp.a_lo = lo;
  tp.a_hi = hi;
  tp.a = 0.5 * (lo + hi);
  const RotationResult r = rot_bracket(CircleMapLift::arnold(tp.a, b), opt.residual_q_cap);
  tp.residual = r.upper.value() - r.lower.value();
  return tp;
}

double tongue_point(const ContinuedFraction& alpha, double b, double tol,
                    const TongueOptions& opt) {
  return tongue_point_full(alpha, b, tol, opt).a;
}

std::vector<TongueSample> tongue_curve(const ContinuedFraction& alpha,
                                       const std::vector<double>& b_grid, double tol,
                                       const TongueOptions& opt) {
  for (std::size_t i = 1; i < b_grid.size(); ++i)
    if (!(b_grid[i] > b_grid[i - 1]))
      throw InvalidArgument("b grid must be strictly increasing");
  std::vector<TongueSample> out(b_grid.size());
  parallel_for(b_grid.size(), [&](std::size_t i) {
    const TonguePoint tp = tongue_point_full(alpha, b_grid[i], tol, opt);
    out[i] = {b_grid[i], tp.a, tp.residual};
  });
  return out;
}

BoundaryPair rational_boundary_full(std::int64_t p, std::int64_t q, double b) {
  if (q < 1) throw InvalidArgument("q must be positive");
  if (std::gcd(p < 0 ? -p : p, q) != 1) throw InvalidArgument("p/q must be in lowest terms");
  if (!(b > 0.0 && b <= 1.0)) throw InvalidArgument("rational_boundary needs b in (0,1]");
  const CircleMapLift base = CircleMapLift::arnold(0.0, b);
  const double center = double(p) / double(q), half = b / kTwoPi;
  const double a_lo = center - half - 1e-6, a_hi = center + half + 1e-6;
  constexpr int n = 64;
  std::vector<std::vector<Solution>> found(n);
  parallel_for(n, [&](std::size_t i) {
    for (int j = 0; j < n; ++j) {
      const double x = (double(i) + 0.5) / n;
      const double a = center - half + 2.0 * half * (double(j) + 0.5) / n;
      Solution s;
      if (newton(base, x, a, p, q, a_lo, a_hi, s)) found[i].push_back(s);
    }
  });
  std::vector<Solution> all;
  for (auto& v : found) all.insert(all.end(), v.begin(), v.end());
  if (all.empty()) throw NewtonDivergence("no seed converged for " + std::to_string(p) +
                                          "/" + std::to_string(q));
  const auto [mn, mx] = std::minmax_element(
      all.begin(), all.end(), [](const Solution& l, const Solution& r) { return l.a < r.a; });
  BoundaryPair bp;
  bp.a_left = mn->a;
  bp.a_right = mx->a;
  bp.x_left = mn->x;
  bp.x_right = mx->x;
  bp.residual = std::max(mn->res, mx->res);
  if (bp.a_right - bp.a_left < 1e-13)
    throw DegenerateTip("tongue " + std::to_string(p) + "/" + std::to_string(q) +
                        " is thinner than 1e-13 at this b");
  return bp;
}

std::pair<double, double> rational_boundary(std::int64_t p, std::int64_t q, double b) {
  const BoundaryPair bp = rational_boundary_full(p, q, b);
  return {bp.a_left, bp.a_right};
}

std::vector<StairStep> staircase(double b, const std::vector<double>& a_grid,
                                 std::int64_t q_cap) {
  std::vector<StairStep> out(a_grid.size());
  require_monotone(CircleMapLift::arnold(0.0, b));
  parallel_for(a_grid.size(), [&](std::size_t i) {
    const RotationResult r = rot_bracket(CircleMapLift::arnold(a_grid[i], b), q_cap);
    out[i] = {a_grid[i], r.lower, r.upper};
  });
  return out;
}

}  // namespace circlemap
