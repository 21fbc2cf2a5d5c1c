#include "circlemap/circle_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "circlemap/errors.hpp"

namespace circlemap {

namespace {

constexpr int kClassifySamples = 4096;

double frac_part(double x) {
  double f = x - std::floor(x);
  return f >= 1.0 ? 0.0 : f;
}

// periodic part and derivatives at t in [0,1)
Jet periodic_jet(const std::vector<double>& rc, const std::vector<double>& sc,
                 double t, int max_order) {
  Jet j{0, 0, 0, 0};
  if (rc.empty()) return j;
  const double th = kTwoPi * t;
  const double c1 = std::cos(th), s1 = std::sin(th);
  double ck = c1, sk = s1;
  for (std::size_t k = 0; k < rc.size(); ++k) {
    const double r = rc[k], s = sc[k];
    const double w = kTwoPi * static_cast<double>(k + 1);
    j.v += r * ck + s * sk;
    if (max_order >= 1) j.d1 += w * (s * ck - r * sk);
    if (max_order >= 2) j.d2 -= w * w * (r * ck + s * sk);
    if (max_order >= 3) j.d3 += w * w * w * (r * sk - s * ck);
    const double cn = ck * c1 - sk * s1;
    sk = sk * c1 + ck * s1;
    ck = cn;
  }
  return j;
}

double periodic_value(const CircleMapLift& m, double t) {
  return periodic_jet(m.cos_coeffs(), m.sin_coeffs(), t, 0).v;
}

double periodic_d1(const CircleMapLift& m, double t) {
  return periodic_jet(m.cos_coeffs(), m.sin_coeffs(), t, 1).d1;
}

}  // namespace

CircleMapLift::CircleMapLift(double c0, std::vector<double> cos_coeffs,
                             std::vector<double> sin_coeffs)
    : c0_(c0), cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
  const std::size_t k = std::max(cos_.size(), sin_.size());
  if (k > static_cast<std::size_t>(kMaxDegree))
    throw InvalidArgument("trig degree " + std::to_string(k) +
                          " exceeds the cap of 64");
  cos_.resize(k, 0.0);
  sin_.resize(k, 0.0);
  while (!cos_.empty() && cos_.back() == 0.0 && sin_.back() == 0.0) {
    cos_.pop_back();
    sin_.pop_back();
  }
  for (double v : cos_)
    if (!std::isfinite(v)) throw InvalidArgument("non-finite coefficient");
  for (double v : sin_)
    if (!std::isfinite(v)) throw InvalidArgument("non-finite coefficient");
  if (!std::isfinite(c0_)) throw InvalidArgument("non-finite constant term");
  double mn = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kClassifySamples; ++i)
    mn = std::min(mn, 1.0 + periodic_d1(*this, double(i) / kClassifySamples));
  min_deriv_ = mn;
}

CircleMapLift CircleMapLift::rotation(double alpha) {
  return CircleMapLift(alpha, {}, {});
}

CircleMapLift CircleMapLift::arnold(double a, double b) {
  return CircleMapLift(a, {0.0}, {-b / kTwoPi});
}

CircleMapLift CircleMapLift::with_c0(double c0) const {
  CircleMapLift m = *this;
  m.c0_ = c0;
  return m;
}

bool CircleMapLift::monotone() const { return min_deriv_ >= -1e-12; }

void require_monotone(const CircleMapLift& map) {
  if (!map.monotone())
    throw NonMonotoneMap("map is not monotone (min F' = " +
                         std::to_string(map.min_derivative()) + ")");
}

Jet eval_jet(const CircleMapLift& map, double x) {
  Jet j = periodic_jet(map.cos_coeffs(), map.sin_coeffs(), frac_part(x), 3);
  j.v += x + map.c0();
  j.d1 += 1.0;
  return j;
}

double eval_lift(const CircleMapLift& map, double x, int order) {
  if (order < 0 || order > 3)
    throw InvalidArgument("eval_lift supports derivative orders 0..3");
  const Jet j =
      periodic_jet(map.cos_coeffs(), map.sin_coeffs(), frac_part(x), order);
  switch (order) {
    case 0: return x + map.c0() + j.v;
    case 1: return 1.0 + j.d1;
    case 2: return j.d2;
    default: return j.d3;
  }
}

double displacement(const CircleMapLift& map, double x) {
  return map.c0() + periodic_value(map, frac_part(x));
}

LiftedPoint lifted(double x) {
  LiftedPoint p;
  const double fl = std::floor(x);
  p.n = static_cast<std::int64_t>(fl);
  p.frac = x - fl;
  if (p.frac >= 1.0) {
    p.frac -= 1.0;
    p.n += 1;
  }
  return p;
}

static inline LiftedPoint renormalize(std::int64_t n, double y) {
  const double fl = std::floor(y);
  LiftedPoint q;
  q.n = n + static_cast<std::int64_t>(fl);
  q.frac = y - fl;
  if (q.frac >= 1.0) {
    q.frac -= 1.0;
    q.n += 1;
  }
  return q;
}

LiftedPoint step(const CircleMapLift& map, LiftedPoint p) {
  const double y = p.frac + map.c0() + periodic_value(map, p.frac);
  return renormalize(p.n, y);
}

LiftedPoint step(const CircleMapLift& map, LiftedPoint p, double& fprime) {
  const Jet j =
      periodic_jet(map.cos_coeffs(), map.sin_coeffs(), p.frac, 1);
  fprime = 1.0 + j.d1;
  return renormalize(p.n, p.frac + map.c0() + j.v);
}

double iterate_lift(const CircleMapLift& map, double x, std::int64_t n,
                    double* deriv) {
  if (n < 0) throw InvalidArgument("iterate_lift needs n >= 0");
  require_monotone(map);
  LiftedPoint p = lifted(x);
  double d = 1.0;
  for (std::int64_t k = 0; k < n; ++k) {
    if (deriv) {
      double fp;
      p = step(map, p, fp);
      d *= fp;
    } else {
      p = step(map, p);
    }
  }
  if (deriv) *deriv = d;
  // keep the caller's integer part exactly
  const LiftedPoint x0 = lifted(x);
  return x + (static_cast<double>(p.n - x0.n) + (p.frac - x0.frac));
}

double iterate_displacement(const CircleMapLift& map, double x,
                            std::int64_t n, std::int64_t p) {
  LiftedPoint pt = lifted(x);
  const LiftedPoint x0 = pt;
  for (std::int64_t k = 0; k < n; ++k) pt = step(map, pt);
  return static_cast<double>(pt.n - x0.n - p) + (pt.frac - x0.frac);
}

double invert_lift(const CircleMapLift& map, double y) {
  double amp = 0.0;
  for (int k = 0; k < map.degree(); ++k)
    amp += std::abs(map.cos_coeffs()[k]) + std::abs(map.sin_coeffs()[k]);
  double lo = y - map.c0() - amp - 1e-12, hi = y - map.c0() + amp + 1e-12;
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const Jet j = eval_jet(map, x);
    const double r = j.v - y;
    if (r == 0.0) return x;
    if (r > 0) hi = x; else lo = x;
    double nx = (j.d1 > 0) ? x - r / j.d1 : 0.5 * (lo + hi);
    if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
    if (std::abs(nx - x) <= 1e-16 * std::max(1.0, std::abs(x)) ||
        hi - lo <= 4e-16 * std::max(1.0, std::abs(x)))
      return nx;
    x = nx;
  }
  return x;
}

MapClass classify(const CircleMapLift& map, double tol) {
  if (!(tol > 0)) throw InvalidArgument("classify needs tol > 0");
  const int n = kClassifySamples;
  std::vector<double> d(n);
  for (int i = 0; i < n; ++i) d[i] = eval_lift(map, double(i) / n, 1);
  const int imin = int(std::min_element(d.begin(), d.end()) - d.begin());

  // refine the minimum of F' by Newton on F''
  double c = double(imin) / n;
  for (int it = 0; it < 50; ++it) {
    const Jet j = eval_jet(map, c);
    if (j.d3 <= 0) break;
    const double nc = c - j.d2 / j.d3;
    if (std::abs(nc - double(imin) / n) > 2.0 / n) break;
    if (std::abs(nc - c) < 1e-16) {
      c = nc;
      break;
    }
    c = nc;
  }
  double mval = eval_lift(map, c, 1);
  if (mval > d[imin]) {
    c = double(imin) / n;
    mval = d[imin];
  }
  if (mval > tol) return Diffeomorphism{};
  if (mval < -tol) {
    const double w = double(imin) / n;
    return NonMonotone{w};
  }
  // other local minima of F' that come close to zero?
  for (int i = 0; i < n; ++i) {
    const double l = d[(i + n - 1) % n], r = d[(i + 1) % n];
    if (d[i] <= l && d[i] <= r && d[i] <= tol) {
      int dist = std::abs(i - imin);
      dist = std::min(dist, n - dist);
      if (dist > 2)
        throw AmbiguousClass("F' comes within tol of zero at two places");
    }
  }
  const Jet j = eval_jet(map, c);
  if (!(j.d3 > tol))
    throw AmbiguousClass("F' vanishes to higher than second order");
  if (mval < 0) {
    // two simple roots c +- sqrt(2|m|/F'''); cubic only if they merge within tol
    if (2.0 * std::sqrt(2.0 * -mval / j.d3) > tol)
      throw AmbiguousClass("F' has two distinct simple roots");
  }
  double cp = c - std::floor(c);
  if (cp >= 1.0 || std::abs(cp) < 1e-15 || std::abs(cp - 1.0) < 1e-15) cp = 0.0;
  return CubicCritical{cp};
}

const char* class_name(const MapClass& c) {
  if (std::holds_alternative<Diffeomorphism>(c)) return "Diffeomorphism";
  if (std::holds_alternative<CubicCritical>(c)) return "CubicCritical";
  return "NonMonotone";
}

CircleMapLift fit_lift(const std::function<double(double)>& lift, int degree,
                       double drop) {
  if (degree < 0 || degree > kMaxDegree)
    throw InvalidArgument("fit degree must be in 0..64");
  const int n = std::max(256, 4 * degree);
  std::vector<double> phi(n);
  double c0 = 0.0;
  for (int j = 0; j < n; ++j) {
    const double x = double(j) / n;
    phi[j] = lift(x) - x;
    c0 += phi[j];
  }
  c0 /= n;
  std::vector<double> rc(degree), sc(degree);
  for (int k = 1; k <= degree; ++k) {
    double a = 0, b = 0;
    for (int j = 0; j < n; ++j) {
      const double th = kTwoPi * double(k) * double(j) / n;
      a += phi[j] * std::cos(th);
      b += phi[j] * std::sin(th);
    }
    rc[k - 1] = 2.0 * a / n;
    sc[k - 1] = 2.0 * b / n;
  }
  while (!rc.empty() && std::abs(rc.back()) <= drop && std::abs(sc.back()) <= drop) {
    rc.pop_back();
    sc.pop_back();
  }
  return CircleMapLift(c0, rc, sc);
}

}  // namespace circlemap
