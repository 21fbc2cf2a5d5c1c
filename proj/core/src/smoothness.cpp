#include "circlemap/smoothness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "circlemap/errors.hpp"
#include "circlemap/parallel.hpp"
#include "circlemap/tongues.hpp"

namespace circlemap {

namespace {

constexpr double kNodeGap = 1e-13;
constexpr double kVanish = 1e-9;

void check_nodes(const std::vector<double>& xs, const std::vector<double>& ys, int order) {
  if (order < 0) throw InvalidArgument("order must be >= 0");
  if (xs.size() != ys.size()) throw InvalidArgument("xs and ys differ in length");
  if (xs.size() < static_cast<std::size_t>(order) + 1)
    throw InvalidArgument("need at least order + 1 nodes");
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) throw InvalidArgument("nodes must be strictly increasing");
    if (xs[i] - xs[i - 1] < kNodeGap)
      throw DegenerateNodes("nodes " + std::to_string(i - 1) + " and " + std::to_string(i) +
                            " are closer than 1e-13");
  }
}

// error of f[x_i..x_{i+m}] caused by independent errors e_r in the values
double propagated(const std::vector<double>& xs, const std::vector<double>& err,
                  std::size_t i, int m) {
  double s = 0.0;
  for (std::size_t r = i; r <= i + m; ++r) {
    double p = 1.0;
    for (std::size_t j = i; j <= i + m; ++j)
      if (j != r) p *= std::abs(xs[r] - xs[j]);
    s += err[r] / p;
  }
  return s;
}

}  // namespace

std::vector<double> divided_differences(const std::vector<double>& xs,
                                        const std::vector<double>& ys, int order) {
  check_nodes(xs, ys, order);
  std::vector<double> d = ys;
  for (int m = 1; m <= order; ++m) {
    for (std::size_t i = 0; i + m < xs.size(); ++i) d[i] = (d[i + 1] - d[i]) / (xs[i + m] - xs[i]);
    d.pop_back();
  }
  return d;
}

SmoothnessReport analyze_samples(const std::vector<double>& b, const std::vector<double>& a,
                                 const std::vector<double>& y_err) {
  check_nodes(b, a, kMaxDiffOrder);
  if (y_err.size() != a.size()) throw InvalidArgument("one error per sample is required");
  SmoothnessReport r;
  r.b_samples = b;
  r.a_values = a;
  r.a_error = y_err;
  for (int m = 1; m <= kMaxDiffOrder; ++m) {
    auto& d = r.divided_diffs[m - 1];
    auto& nz = r.noise[m - 1];
    d = divided_differences(b, a, m);
    nz.resize(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) nz[i] = propagated(b, y_err, i, m);

    const std::size_t w = d.size();
    auto vanishes = [&](std::size_t i) { return std::abs(d[i]) <= std::max(nz[i], kVanish); };

    if (w >= static_cast<std::size_t>(kBoundWindows)) {
      const std::size_t s = w - kBoundWindows;
      const double first = std::max(std::abs(d[s]), std::max(nz[s], kVanish));
      double mx = 0.0;
      for (std::size_t i = s; i < w; ++i) mx = std::max(mx, vanishes(i) ? 0.0 : std::abs(d[i]));
      r.bounded[m - 1] = mx < kBoundFactor * first;
    }
    if (w >= static_cast<std::size_t>(kGrowWindows)) {
      bool g = true;
      for (std::size_t i = w - kGrowWindows; i < w && g; ++i) {
        if (vanishes(i)) g = false;
        else if (i > w - kGrowWindows && !(std::abs(d[i]) > std::abs(d[i - 1]))) g = false;
      }
      r.grows[m - 1] = g;
    }

    // slope of log|d| against log(1 - b) over the window midpoints
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = w >= 6 ? w - 6 : 0; i < w; ++i) {
      if (vanishes(i)) continue;
      double lx = 0.0;
      for (std::size_t j = i; j <= i + m; ++j) lx += std::log(std::max(1.0 - b[j], 1e-300));
      lx /= (m + 1);
      const double ly = std::log(std::abs(d[i]));
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      ++n;
    }
    const double den = n * sxx - sx * sx;
    r.growth_exponents[m - 1] = (n >= 2 && den > 0) ? -(n * sxy - sx * sy) / den
                                                    : std::numeric_limits<double>::quiet_NaN();
  }
  for (int m = kMaxDiffOrder; m >= 1; --m) {
    if (r.bounded[m - 1] && (m == kMaxDiffOrder || r.grows[m])) {
      r.estimated_k = m;
      break;
    }
  }
  return r;
}

namespace {

std::int64_t default_q_cap(double tol) {
  const double q = 0.3 / std::sqrt(tol);
  return static_cast<std::int64_t>(std::clamp(q, 1e6, 3e7));
}

}  // namespace

SmoothnessReport probe_report(const ContinuedFraction& alpha, int j_max, double tol,
                              std::int64_t q_cap) {
  const int j_min = 3;
  if (j_max > 16) throw InvalidArgument("j_max must be <= 16");
  if (j_max < j_min + kMaxDiffOrder) throw InvalidArgument("j_max must be >= 7");
  if (!(tol > 0)) throw InvalidArgument("tol must be positive");
  const std::size_t depth = alpha.length() ? *alpha.length() : 64;
  if (!is_bounded_type(alpha, 1000, depth))
    throw HypothesisViolated("the smoothness probe needs alpha of bounded type");
  if (q_cap < 0) throw InvalidArgument("q_cap must be >= 0");
  TongueOptions opt;
  opt.q_cap = q_cap > 0 ? q_cap : default_q_cap(tol);
  const int n = j_max - j_min + 1;
  std::vector<double> b(n), a(n), err(n), res(n);
  for (int i = 0; i < n; ++i) b[i] = 1.0 - std::ldexp(1.0, -(j_min + i));
  parallel_for(n, [&](std::size_t i) {
    const TonguePoint t = tongue_point_full(alpha, b[i], tol, opt);
    a[i] = t.a;
    err[i] = std::max(0.5 * (t.a_hi - t.a_lo), 4.0 * std::numeric_limits<double>::epsilon() *
                                                   std::abs(t.a));
    res[i] = t.residual;
  });
  SmoothnessReport r = analyze_samples(b, a, err);
  r.residuals = std::move(res);
  return r;
}

SmoothnessReport probe(const ContinuedFraction& alpha, int j_max, double tol,
                       std::int64_t q_cap) {
  SmoothnessReport r = probe_report(alpha, j_max, tol, q_cap);
  if (!r.estimated_k)
    throw InconclusiveReport("neither boundedness nor growth was detected at any order");
  return r;
}

}  // namespace circlemap
