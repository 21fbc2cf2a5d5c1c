#include "circlemap/triples.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "circlemap/errors.hpp"

namespace circlemap {

namespace {

using cplx = std::complex<double>;

constexpr double kCriticalTol = 1e-9;
constexpr double kCommuteTol = 1e-8;
constexpr int kSignSamples = 4096;

// f, f', f'' of the lift at a complex point
struct CJet {
  cplx v, d1, d2;
};

CJet complex_jet(const CircleMapLift& m, cplx z) {
  CJet j{z + m.c0(), 1.0, 0.0};
  const auto& rc = m.cos_coeffs();
  const auto& sc = m.sin_coeffs();
  for (std::size_t k = 0; k < rc.size(); ++k) {
    const double w = kTwoPi * double(k + 1);
    const cplx c = std::cos(w * z), s = std::sin(w * z);
    j.v += rc[k] * c + sc[k] * s;
    j.d1 += w * (sc[k] * c - rc[k] * s);
    j.d2 -= w * w * (rc[k] * c + sc[k] * s);
  }
  return j;
}

// Newton on f' = 0 from a complex seed
cplx critical_point_near(const CircleMapLift& m, cplx z) {
  for (int it = 0; it < 100; ++it) {
    const CJet j = complex_jet(m, z);
    if (std::abs(j.d2) == 0.0) break;
    const cplx dz = j.d1 / j.d2;
    z -= dz;
    if (std::abs(dz) < 1e-15 * std::max(1.0, std::abs(z))) {
      if (std::abs(complex_jet(m, z).d1) < 1e-12) return z;
      break;
    }
  }
  throw RootFindingFailure("Newton for a complex critical point did not converge");
}

// the real root u of u^3 - A u = v for A <= 0
double h_inverse(double A, double v) {
  const double p = -A;
  double u;
  if (p == 0.0) {
    u = std::cbrt(v);
  } else {
    const double r = std::sqrt(0.25 * v * v + p * p * p / 27.0);
    // pick the sign that avoids cancellation, then u = w - p / (3 w)
    const double w = std::cbrt(v >= 0 ? 0.5 * v + r : 0.5 * v - r);
    u = w - p / (3.0 * w);
  }
  for (int it = 0; it < 3; ++it) {
    const double d = 3.0 * u * u - A;
    if (d == 0.0) break;
    u -= (u * u * u - A * u - v) / d;
  }
  return u;
}

std::vector<double> barycentric_weights() {
  const int n = kTripleNodes;
  std::vector<double> w(n);
  for (int j = 0; j < n; ++j) w[j] = (j % 2 ? -1.0 : 1.0) * ((j == 0 || j == n - 1) ? 0.5 : 1.0);
  return w;
}

const std::vector<double>& bary() {
  static const std::vector<double> w = barycentric_weights();
  return w;
}

TripleReal normalize(double f_shift, double A, double h_shift, double C,
                     std::vector<double> g0) {
  TripleReal t;
  t.f_shift = f_shift;
  t.h_shift = h_shift;
  t.a = A / (C * C);
  t.pi_scale = C * C * C;
  for (double& g : g0) g /= C;
  t.g_nodes = std::move(g0);
  return t;
}

// H_a o G on the window
double hg(const TripleReal& t, double x) { return h_map(t.a, g_eval(t, x, 0), 0); }
double hg_d(const TripleReal& t, double x) {
  return h_map(t.a, g_eval(t, x, 0), 1) * g_eval(t, x, 1);
}

}  // namespace

const std::vector<double>& chebyshev_nodes() {
  static const std::vector<double> x = [] {
    const int n = kTripleNodes;
    std::vector<double> v(n);
    for (int j = 0; j < n; ++j) v[j] = 0.5 * std::cos(std::numbers::pi * j / (n - 1));
    v[(n - 1) / 2] = 0.0;
    return v;
  }();
  return x;
}

double h_map(double a, double z, int order) {
  switch (order) {
    case 0: return z * z * z - a * z;
    case 1: return 3.0 * z * z - a;
    case 2: return 6.0 * z;
    default: throw InvalidArgument("h_map order must be 0, 1 or 2");
  }
}

double g_eval(const TripleReal& t, double x, int order) {
  const auto& xs = chebyshev_nodes();
  const auto& w = bary();
  const auto& f = t.g_nodes;
  const int n = kTripleNodes;
  if (static_cast<int>(f.size()) != n) throw InvalidArgument("triple has no G samples");
  if (order != 0 && order != 1) throw InvalidArgument("g_eval order must be 0 or 1");
  for (int i = 0; i < n; ++i) {
    if (x == xs[i]) {
      if (order == 0) return f[i];
      double s = 0.0;
      for (int j = 0; j < n; ++j)
        if (j != i) s += (w[j] / w[i]) * (f[j] - f[i]) / (xs[i] - xs[j]);
      return s;
    }
  }
  double num = 0.0, den = 0.0;
  for (int j = 0; j < n; ++j) {
    const double c = w[j] / (x - xs[j]);
    num += c * f[j];
    den += c;
  }
  const double p = num / den;
  if (order == 0) return p;
  double dn = 0.0;
  for (int j = 0; j < n; ++j) {
    const double c = w[j] / (x - xs[j]);
    dn += c * (p - f[j]) / (x - xs[j]);
  }
  return dn / den;
}

TripleReal lift_critical(const CircleMapLift& map) {
  const MapClass cls = classify(map, kCriticalTol);
  const auto* cc = std::get_if<CubicCritical>(&cls);
  if (!cc) throw NotCritical(std::string("map is ") + class_name(cls));
  if (std::abs(cc->critical_point) > 1e-6 && std::abs(cc->critical_point - 1.0) > 1e-6)
    throw NotCritical("critical point is not at 0");
  const double f0 = eval_lift(map, 0.0, 0);
  const double d3 = eval_lift(map, 0.0, 3);
  if (!(d3 > 0)) throw NotCritical("third derivative at 0 is not positive");

  // f - f(0) must have the sign of x on the whole window
  for (int i = 0; i <= kSignSamples; ++i) {
    const double x = -0.5 + double(i) / kSignSamples;
    if (x == 0.0) continue;
    const double v = eval_lift(map, x, 0) - f0;
    if (!(v * x > 0))
      throw ExtraPreimage("f(x) = f(0) again near x = " + std::to_string(x));
  }

  const auto& xs = chebyshev_nodes();
  std::vector<double> g(kTripleNodes);
  for (int j = 0; j < kTripleNodes; ++j)
    g[j] = xs[j] == 0.0 ? 0.0 : std::cbrt(eval_lift(map, xs[j], 0) - f0);
  const double C = std::cbrt(d3 / 6.0);
  return normalize(f0, 0.0, 0.0, C, std::move(g));
}

TripleReal lift_family(const CircleMapLift& map, FamilyDiagnostics* diag) {
  const MapClass cls = classify(map, kCriticalTol);
  if (std::holds_alternative<CubicCritical>(cls)) {
    if (diag) *diag = FamilyDiagnostics{};
    return lift_critical(map);
  }
  if (!std::holds_alternative<Diffeomorphism>(cls))
    throw RootFindingFailure("map has real critical points; the family lift needs mu1 < 0");

  // seeds from the quadratic model of f' at 0
  const Jet j0 = eval_jet(map, 0.0);
  if (!(j0.d3 > 0)) throw RootFindingFailure("f''' (0) <= 0: no critical pair near 0");
  const cplx disc = cplx(j0.d2 * j0.d2 - 2.0 * j0.d3 * j0.d1, 0.0);
  const cplx sq = std::sqrt(disc);
  const cplx s1 = (-j0.d2 + sq) / j0.d3, s2 = (-j0.d2 - sq) / j0.d3;
  const cplx c1 = critical_point_near(map, s1.imag() >= 0 ? s1 : s2);
  const cplx c2 = critical_point_near(map, s1.imag() >= 0 ? s2 : s1);
  if (std::abs(c1 - std::conj(c2)) > 1e-10 || std::abs(c1.imag()) < 1e-12)
    throw RootFindingFailure("critical points are not a conjugate pair");
  const cplx d1 = complex_jet(map, c1).v, d2 = complex_jet(map, c2).v;

  // A = (3 sqrt3 (d1 - d2) / 4)^(2/3), real branch: the cube root of w^2
  // closest to the negative axis
  const cplx w = 3.0 * std::sqrt(3.0) * (d1 - d2) / 4.0;
  const cplx w2 = w * w;
  cplx A = std::polar(std::cbrt(std::abs(w2)), std::arg(w2) / 3.0);
  const cplx rot = std::polar(1.0, kTwoPi / 3.0);
  cplx best = A;
  for (int k = 0; k < 3; ++k, A *= rot)
    if (std::abs(A.imag()) + std::max(0.0, A.real()) <
        std::abs(best.imag()) + std::max(0.0, best.real()))
      best = A;
  A = best;
  if (std::abs(A.imag()) > 1e-8)
    throw BranchAmbiguity("A has imaginary part " + std::to_string(A.imag()));
  const double Ar = std::min(A.real(), 0.0);
  if (Ar == 0.0) throw RootFindingFailure("A vanishes for a map classified as a diffeomorphism");

  // z0: f(z0) = m, m the real part of the critical values
  const double m = d1.real();
  double z0 = c1.real();
  for (int it = 0; it < 100; ++it) {
    const Jet j = eval_jet(map, z0);
    const double dz = (j.v - m) / j.d1;
    z0 -= dz;
    if (std::abs(dz) < 1e-16) break;
  }
  if (!(std::abs(eval_lift(map, z0, 0) - m) < 1e-13))
    throw RootFindingFailure("no real solution of f(z) = Re d1 near the critical pair");

  const auto& xs = chebyshev_nodes();
  std::vector<double> g(kTripleNodes);
  for (int k = 0; k < kTripleNodes; ++k)
    g[k] = xs[k] == 0.0 ? 0.0 : h_inverse(Ar, eval_lift(map, xs[k] + z0, 0) - m);
  const double C = eval_lift(map, z0, 1) / (-Ar);

  if (diag) *diag = FamilyDiagnostics{c1, c2, d1, d2, A, z0};
  return normalize(m - z0, Ar, z0, C, std::move(g));
}

double commutation_defect(const TripleReal& t) {
  const double v = std::abs(t.pi_scale * (hg(t, 0.5) - hg(t, -0.5)) - 1.0);
  const double d = std::abs(t.pi_scale * (hg_d(t, 0.5) - hg_d(t, -0.5)));
  return std::max(v, d);
}

TripleProjection::TripleProjection(TripleReal t) : t_(std::move(t)) {
  if (static_cast<int>(t_.g_nodes.size()) != kTripleNodes)
    throw InvalidArgument("triple has no G samples");
  const double defect = commutation_defect(t_);
  if (!(defect <= kCommuteTol)) throw CommutationFailure(defect);
}

double TripleProjection::operator()(double x) const {
  const double k = std::round(x);
  const double y = std::clamp(x - k, -0.5, 0.5);
  return t_.f_shift + t_.pi_scale * hg(t_, y) + k;
}

double TripleProjection::derivative(double x) const {
  const double y = std::clamp(x - std::round(x), -0.5, 0.5);
  return t_.pi_scale * hg_d(t_, y);
}

TripleProjection project(const TripleReal& t) { return TripleProjection(t); }

double conjugacy_residual(const TripleReal& t, const CircleMapLift& map, int samples) {
  if (samples < 1) throw InvalidArgument("need at least one sample");
  const TripleProjection p(t);
  double r = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double z = (i + 0.5) / samples;
    r = std::max(r, std::abs(p(z - t.h_shift) + t.h_shift - eval_lift(map, z, 0)));
  }
  return r;
}

}  // namespace circlemap
