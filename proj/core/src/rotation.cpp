#include "circlemap/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "circlemap/cf.hpp"
#include "circlemap/errors.hpp"
#include "circlemap/parallel.hpp"

namespace circlemap {

namespace {

constexpr int kGrid = 512;
constexpr double kRefineWidth = 1e-12;
constexpr std::int64_t kPlateauRun = 16;

// Rounding floor of F^q(x) - x - p; below it a sign is not trusted.
double zero_tol(std::int64_t q) {
  return 16.0 * std::numeric_limits<double>::epsilon() * double(q) + 1e-13;
}

double disp(const CircleMapLift& m, double x, std::int64_t p, std::int64_t q) {
  return iterate_displacement(m, x, q, p);
}

// ternary search for an extremum of g on [lo, hi]; sign = +1 for max
double refine(const CircleMapLift& m, std::int64_t p, std::int64_t q, double lo,
              double hi, double sign, double best) {
  while (hi - lo > kRefineWidth) {
    const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
    const double g1 = sign * disp(m, m1, p, q), g2 = sign * disp(m, m2, p, q);
    best = std::max({best, g1, g2});
    if (g1 < g2) lo = m1; else hi = m2;
  }
  return best;
}

enum class Side { Less, Greater, Plateau };

Side decide(const CircleMapLift& m, Rational r) {
  const double s = disp(m, 0.0, r.p, r.q);
  const double tol = zero_tol(r.q);
  if (s > tol) return Side::Greater;
  if (s < -tol) return Side::Less;
  const DisplacementRange g = displacement_range(m, r.p, r.q);
  if (g.min <= tol && g.max >= -tol) return Side::Plateau;
  return g.min > 0 ? Side::Greater : Side::Less;
}

struct Descent {
  Rational lower, upper;
  std::vector<std::int64_t> digits;
  std::optional<Rational> plateau;
};

// Largest t in [0, t_max] with decide(cand(t)) == want, assuming the
// predicate holds on an initial segment. Returns nullopt in `plateau`
// unless a plateau was hit at some candidate.
struct RunResult {
  std::int64_t r;
  bool complete;
  std::optional<Rational> plateau;
};

template <class Cand>
RunResult gallop(const CircleMapLift& m, Cand cand, std::int64_t t_max, Side want) {
  RunResult res{0, false, std::nullopt};
  if (t_max < 1) return res;
  auto test = [&](std::int64_t t, bool& stop) {
    const Rational c = cand(t);
    const Side s = decide(m, c);
    if (s == Side::Plateau) {
      res.plateau = c;
      stop = true;
      return false;
    }
    return s == want;
  };
  bool stop = false;
  std::int64_t good = 0, bad = -1, t = 1;
  for (;;) {
    if (!test(t, stop)) {
      if (stop) return res;
      bad = t;
      break;
    }
    good = t;
    if (t == t_max) break;
    t = std::min(t_max, t * 2);
  }
  if (bad < 0) {
    res.r = good;
    res.complete = false;
    return res;
  }
  while (bad - good > 1) {
    const std::int64_t mid = good + (bad - good) / 2;
    if (test(mid, stop)) good = mid;
    else {
      if (stop) return res;
      bad = mid;
    }
  }
  res.r = good;
  res.complete = true;
  return res;
}

Descent descend(const CircleMapLift& m, int depth, std::int64_t q_cap) {
  require_monotone(m);
  if (q_cap < 1) throw InvalidArgument("q_cap must be positive");
  const double f0 = displacement(m, 0.0);
  const auto k = static_cast<std::int64_t>(std::floor(f0));
  Descent d;
  d.lower = {k, 1};
  d.upper = {k + 1, 1};
  bool upper_moves = true;
  bool first = true;
  while (depth < 0 || static_cast<int>(d.digits.size()) < depth) {
    const Rational L = d.lower, U = d.upper;
    RunResult run;
    if (upper_moves) {
      // upper_t = (U + t L): moves while rot < upper_t
      const std::int64_t t_max = (q_cap - U.q) / L.q;
      run = gallop(m, [&](std::int64_t t) { return Rational{U.p + t * L.p, U.q + t * L.q}; },
                   t_max, Side::Less);
      if (run.plateau) {
        d.plateau = run.plateau;
        return d;
      }
      d.upper = {U.p + run.r * L.p, U.q + run.r * L.q};
    } else {
      const std::int64_t t_max = (q_cap - L.q) / U.q;
      run = gallop(m, [&](std::int64_t t) { return Rational{L.p + t * U.p, L.q + t * U.q}; },
                   t_max, Side::Greater);
      if (run.plateau) {
        d.plateau = run.plateau;
        return d;
      }
      d.lower = {L.p + run.r * U.p, L.q + run.r * U.q};
    }
    if (!run.complete) {
      // The run reached q_cap. A plateau at the fixed endpoint shows up as a
      // run that never ends; only long runs are worth the grid check; a
      // missed plateau still leaves a valid bracket.
      const Rational fixed = upper_moves ? d.lower : d.upper;
      if (run.r >= kPlateauRun && has_periodic_orbit(m, fixed.p, fixed.q))
        d.plateau = fixed;
      return d;
    }
    d.digits.push_back(run.r + (first ? 1 : 0));
    first = false;
    upper_moves = !upper_moves;
  }
  return d;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  while (b) {
    const std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

double rot_birkhoff(const CircleMapLift& map, std::int64_t n_iter) {
  if (n_iter < 1) throw InvalidArgument("rot_birkhoff needs n_iter >= 1");
  require_monotone(map);
  LiftedPoint p;
  for (std::int64_t k = 0; k < n_iter; ++k) p = step(map, p);
  return (static_cast<double>(p.n) + p.frac) / static_cast<double>(n_iter);
}

DisplacementRange displacement_range(const CircleMapLift& map, std::int64_t p,
                                     std::int64_t q) {
  if (q < 1) throw InvalidArgument("q must be positive");
  require_monotone(map);
  std::vector<double> g(kGrid);
  parallel_for(kGrid, [&](std::size_t i) { g[i] = disp(map, double(i) / kGrid, p, q); });
  const int imax = int(std::max_element(g.begin(), g.end()) - g.begin());
  const int imin = int(std::min_element(g.begin(), g.end()) - g.begin());
  const double h = 1.0 / kGrid;
  DisplacementRange r;
  r.max = refine(map, p, q, (imax - 1) * h, (imax + 1) * h, 1.0, g[imax]);
  r.min = -refine(map, p, q, (imin - 1) * h, (imin + 1) * h, -1.0, -g[imin]);
  return r;
}

bool rot_ge(const CircleMapLift& map, std::int64_t p, std::int64_t q) {
  if (q < 1) throw InvalidArgument("q must be positive");
  require_monotone(map);
  if (disp(map, 0.0, p, q) >= 0.0) return true;
  return displacement_range(map, p, q).max >= 0.0;
}

bool rot_le(const CircleMapLift& map, std::int64_t p, std::int64_t q) {
  if (q < 1) throw InvalidArgument("q must be positive");
  require_monotone(map);
  if (disp(map, 0.0, p, q) <= 0.0) return true;
  return displacement_range(map, p, q).min <= 0.0;
}

bool has_periodic_orbit(const CircleMapLift& map, std::int64_t p, std::int64_t q) {
  const DisplacementRange g = displacement_range(map, p, q);
  const double tol = zero_tol(q);
  return g.min <= tol && g.max >= -tol;
}

static RotationResult finish(const Descent& d) {
  RotationResult r;
  if (d.plateau) {
    const Rational x = *d.plateau;
    const std::int64_t g = gcd64(x.p, x.q);
    r.lower = r.upper = {x.p / g, x.q / g};
    r.exact = true;
    r.estimate = r.lower.value();
    const std::int64_t fl = (r.lower.p >= 0 ? r.lower.p : r.lower.p - r.lower.q + 1) / r.lower.q;
    const std::int64_t num = r.lower.p - fl * r.lower.q;
    if (num != 0) r.digits = digits_of(num, r.lower.q);
    return r;
  }
  r.lower = d.lower;
  r.upper = d.upper;
  r.digits = d.digits;
  r.estimate = 0.5 * (r.lower.value() + r.upper.value());
  return r;
}

RotationResult rot_digits(const CircleMapLift& map, int depth, std::int64_t q_cap) {
  if (depth < 1) throw InvalidArgument("rot_digits needs depth >= 1");
  const Descent d = descend(map, depth, q_cap);
  if (d.plateau) {
    const RotationResult r = finish(d);
    throw RationalRotation(r.lower.p, r.lower.q);
  }
  return finish(d);
}

RotationResult rot_bracket(const CircleMapLift& map, std::int64_t q_cap) {
  return finish(descend(map, -1, q_cap));
}

}  // namespace circlemap
