// (-1)-measure of a circle map.
//
// The density satisfies rho(y) = rho(f(y)) f'(y)^2, equivalently
// rho(y) = rho(f^k y) (f^k)'(y)^2 for every k. Plain iteration of that
// identity does not settle (the operator is conjugate to a rotation and
// does not mix), so the iterates are averaged with a smooth bump weight in
// the averaging length, which converges fast for Diophantine rotation.
//
// Diffeomorphisms: log rho(y) = average_k [log rho0(f^k y) + 2 log (f^k)'(y)]
// at every cell midpoint.
// Critical maps: log (f^k)' is unbounded below near the critical orbit, so
// instead the measure is assembled from orbit atoms. An atom at f^k(p) of
// mass 1/(f^k)'(p) is exactly what the transfer operator maps to the atom
// at f^{k-1}(p); averaging with the bump weight over many starting points
// gives the invariant measure.

#include "circlemap/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "circlemap/errors.hpp"
#include "circlemap/parallel.hpp"
#include "circlemap/rotation.hpp"

namespace circlemap {

namespace {

constexpr int kFineBits = 16;
constexpr int kFineBins = 1 << kFineBits;
constexpr int kChunks = 8;

double bump(std::int64_t k, std::int64_t N) {
  const double t = (double(k) + 0.5) / double(N);
  return std::exp(-1.0 / (t * (1.0 - t)));
}

double frac(double x) {
  double f = x - std::floor(x);
  return f >= 1.0 ? 0.0 : f;
}

int cell_of(double x, int n) {
  int i = static_cast<int>(frac(x) * n);
  return std::min(std::max(i, 0), n - 1);
}

std::vector<double> log_initial(const DensityOptions& opt, int grid_n) {
  if (opt.initial.empty()) return {};
  if (static_cast<int>(opt.initial.size()) != grid_n)
    throw InvalidArgument("initial density must have grid_n values");
  std::vector<double> out(grid_n);
  for (int i = 0; i < grid_n; ++i) {
    if (!(opt.initial[i] > 0)) throw InvalidArgument("initial density must be positive");
    out[i] = std::log(opt.initial[i]);
  }
  return out;
}

void normalize_log(std::vector<double>& lw, std::vector<double>& w) {
  const double mx = *std::max_element(lw.begin(), lw.end());
  w.resize(lw.size());
  double s = 0.0;
  for (std::size_t i = 0; i < lw.size(); ++i) {
    w[i] = std::exp(lw[i] - mx);
    s += w[i];
  }
  const double scale = double(w.size()) / s;
  for (double& v : w) v *= scale;
}

double l1(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s / double(a.size());
}

std::vector<double> pointwise_sweep(const CircleMapLift& map, int grid_n, std::int64_t N,
                                    const std::vector<double>& lrho0) {
  std::vector<double> lw(grid_n);
  double W = 0.0;
  for (std::int64_t k = 0; k < N; ++k) W += bump(k, N);
  parallel_for(grid_n, [&](std::size_t i) {
    LiftedPoint y = lifted((double(i) + 0.5) / grid_n);
    double L = 0.0, acc = 0.0;
    for (std::int64_t k = 0; k < N; ++k) {
      double term = 2.0 * L;
      if (!lrho0.empty()) term += lrho0[cell_of(y.frac, grid_n)];
      acc += bump(k, N) * term;
      double fp;
      y = step(map, y, fp);
      L += std::log(fp);
    }
    lw[i] = acc / W;
  });
  std::vector<double> w;
  normalize_log(lw, w);
  return w;
}

struct EnsembleAccum {
  std::vector<double> grid;
  std::vector<double> mu_m, mu_xm, nu_m, nu_xm;
  void init(int grid_n, bool fine) {
    grid.assign(grid_n, 0.0);
    if (fine) {
      mu_m.assign(kFineBins, 0.0);
      mu_xm.assign(kFineBins, 0.0);
      nu_m.assign(kFineBins, 0.0);
      nu_xm.assign(kFineBins, 0.0);
    }
  }
};

void deposit(std::vector<double>& m, std::vector<double>& xm, double x, double mass) {
  const int b = cell_of(x, kFineBins);
  m[b] += mass;
  xm[b] += mass * x;
}

struct EnsembleResult {
  std::vector<double> weights;
  QuadratureRule rule;
};

EnsembleResult ensemble_sweep(const CircleMapLift& map, int grid_n, std::int64_t N, int J,
                              const std::vector<double>& lrho0) {
  // orbit weights from the starting density
  std::vector<double> c(J, 1.0);
  if (!lrho0.empty())
    for (int j = 0; j < J; ++j) c[j] = std::exp(lrho0[cell_of((j + 0.5) / J, grid_n)]);
  const double C = std::accumulate(c.begin(), c.end(), 0.0);

  std::vector<double> lbump(N);
  for (std::int64_t k = 0; k < N; ++k) lbump[k] = std::log(bump(k, N));

  std::vector<EnsembleAccum> acc(kChunks);
  parallel_for(kChunks, [&](std::size_t ch) {
    EnsembleAccum& A = acc[ch];
    A.init(grid_n, true);
    std::vector<double> pos(N + 1), lm(N);
    for (int j = static_cast<int>(ch); j < J; j += kChunks) {
      const double p = (j + 0.5) / J;
      pos[0] = frac(invert_lift(map, p));  // f^{-1}(p), the nu atom of k = 0
      LiftedPoint y = lifted(p);
      double L = 0.0;
      double lmax = -std::numeric_limits<double>::infinity();
      for (std::int64_t k = 0; k < N; ++k) {
        pos[k + 1] = y.frac;
        lm[k] = lbump[k] - L;
        lmax = std::max(lmax, lm[k]);
        double fp;
        y = step(map, y, fp);
        L += std::log(fp);
      }
      double Z = 0.0;
      for (std::int64_t k = 0; k < N; ++k) Z += std::exp(lm[k] - lmax);
      const double scale = c[j] / (C * Z);
      for (std::int64_t k = 0; k < N; ++k) {
        const double m = scale * std::exp(lm[k] - lmax);
        if (!(m > 0)) continue;
        A.grid[cell_of(pos[k + 1], grid_n)] += m;
        deposit(A.mu_m, A.mu_xm, pos[k + 1], m);
        deposit(A.nu_m, A.nu_xm, pos[k], m);
      }
    }
  });
  // fixed-order reduction
  EnsembleAccum tot;
  tot.init(grid_n, true);
  for (const auto& A : acc) {
    for (int i = 0; i < grid_n; ++i) tot.grid[i] += A.grid[i];
    for (int b = 0; b < kFineBins; ++b) {
      tot.mu_m[b] += A.mu_m[b];
      tot.mu_xm[b] += A.mu_xm[b];
      tot.nu_m[b] += A.nu_m[b];
      tot.nu_xm[b] += A.nu_xm[b];
    }
  }
  EnsembleResult r;
  r.weights.resize(grid_n);
  for (int i = 0; i < grid_n; ++i) r.weights[i] = tot.grid[i] * grid_n;
  for (int b = 0; b < kFineBins; ++b) {
    if (tot.mu_m[b] > 0) {
      r.rule.mu_x.push_back(tot.mu_xm[b] / tot.mu_m[b]);
      r.rule.mu_w.push_back(tot.mu_m[b]);
    }
    if (tot.nu_m[b] > 0) {
      r.rule.nu_x.push_back(tot.nu_xm[b] / tot.nu_m[b]);
      r.rule.nu_w.push_back(tot.nu_m[b]);
    }
  }
  return r;
}

const QuadratureRule& rule_for(const CircleMapLift& map, const DiscreteDensity& d,
                               QuadratureRule& storage) {
  if (!d.rule.mu_x.empty()) return d.rule;
  storage = midpoint_rule(map, d);
  return storage;
}

}  // namespace

DiscreteDensity density_from_weights(std::vector<double> weights) {
  if (weights.empty()) throw InvalidArgument("empty density");
  double s = 0.0;
  for (double w : weights) {
    if (!(w >= 0)) throw InvalidArgument("density weights must be nonnegative");
    s += w;
  }
  if (!(s > 0)) throw InvalidArgument("density has zero mass");
  DiscreteDensity d;
  d.grid_n = static_cast<int>(weights.size());
  for (double& w : weights) w *= d.grid_n / s;
  d.weights = std::move(weights);
  d.method = "given";
  return d;
}

DiscreteDensity minus_one_density(const CircleMapLift& map, int grid_n, std::int64_t max_iter,
                                  double tol, const DensityOptions& opt) {
  if (grid_n < 2) throw InvalidArgument("grid_n must be at least 2");
  if (max_iter < 1) throw InvalidArgument("max_iter must be positive");
  if (!(tol > 0)) throw InvalidArgument("tol must be positive");
  if (opt.orbits < 1) throw InvalidArgument("need at least one orbit");
  require_monotone(map);
  rot_digits(map, 3);  // throws RationalRotation inside a tongue
  const MapClass cls = classify(map, 1e-9);
  const std::vector<double> lrho0 = log_initial(opt, grid_n);

  DiscreteDensity d;
  d.grid_n = grid_n;
  const bool critical = std::holds_alternative<CubicCritical>(cls);
  d.method = critical ? "ensemble" : "pointwise";
  std::int64_t N = opt.min_length > 0 ? opt.min_length : (critical ? 1024 : 64);
  N = std::min(N, max_iter);
  std::vector<double> prev;
  double residual = std::numeric_limits<double>::infinity();
  for (;;) {
    std::vector<double> w;
    if (critical) {
      EnsembleResult r = ensemble_sweep(map, grid_n, N, opt.orbits, lrho0);
      w = std::move(r.weights);
      d.rule = std::move(r.rule);
    } else {
      w = pointwise_sweep(map, grid_n, N, lrho0);
    }
    if (!prev.empty()) residual = l1(w, prev);
    d.weights = w;
    d.iterations = N;
    d.residual = residual;
    if (residual <= tol) break;
    if (N >= max_iter) break;
    prev = std::move(w);
    N = std::min(N * 2, max_iter);
  }
  if (!(d.residual <= tol))
    throw NoConvergence(d.residual, "density did not settle: L1 change " +
                                        std::to_string(d.residual) + " after averaging length " +
                                        std::to_string(d.iterations));
  return d;
}

QuadratureRule midpoint_rule(const CircleMapLift& map, const DiscreteDensity& d) {
  QuadratureRule r;
  const int n = d.grid_n;
  r.mu_x.resize(n);
  r.mu_w.resize(n);
  r.nu_x.resize(n);
  r.nu_w.resize(n);
  parallel_for(n, [&](std::size_t i) {
    const double x = (double(i) + 0.5) / n;
    r.mu_x[i] = x;
    r.mu_w[i] = d.weights[i] / n;
    r.nu_x[i] = frac(invert_lift(map, x));
    r.nu_w[i] = d.weights[i] / n;
  });
  return r;
}

double invariance_residual(const CircleMapLift& map, const DiscreteDensity& d,
                           int test_degree) {
  if (test_degree < 0) throw InvalidArgument("test degree must be >= 0");
  QuadratureRule storage;
  const QuadratureRule& r = rule_for(map, d, storage);
  std::vector<double> fp(r.nu_x.size());
  for (std::size_t i = 0; i < fp.size(); ++i) fp[i] = eval_lift(map, r.nu_x[i], 1);
  double worst = 0.0;
  for (int k = 0; k <= test_degree; ++k) {
    for (int kind = 0; kind < (k == 0 ? 1 : 2); ++kind) {
      auto phi = [&](double x) {
        if (k == 0) return 1.0;
        const double th = kTwoPi * k * x;
        return kind == 0 ? std::cos(th) : std::sin(th);
      };
      double a = 0.0, b = 0.0;
      for (std::size_t i = 0; i < r.mu_x.size(); ++i) a += r.mu_w[i] * phi(r.mu_x[i]);
      for (std::size_t i = 0; i < r.nu_x.size(); ++i) b += r.nu_w[i] * fp[i] * phi(r.nu_x[i]);
      worst = std::max(worst, std::abs(a - b));
    }
  }
  return worst;
}

double functional_L(const CircleMapLift& map, const DiscreteDensity& d,
                    const std::function<double(double)>& v) {
  QuadratureRule storage;
  const QuadratureRule& r = rule_for(map, d, storage);
  double s = 0.0;
  for (std::size_t i = 0; i < r.nu_x.size(); ++i) s += r.nu_w[i] * v(r.nu_x[i]);
  return s;
}

std::vector<double> reciprocal_derivative_series(const CircleMapLift& map, double p,
                                                 std::int64_t n_terms) {
  if (n_terms < 1) throw InvalidArgument("need at least one term");
  require_monotone(map);
  const MapClass cls = classify(map, 1e-9);
  const CubicCritical* cc = std::get_if<CubicCritical>(&cls);
  std::vector<double> S;
  S.reserve(n_terms);
  LiftedPoint y = lifted(p);
  double D = 1.0, sum = 0.0;
  for (std::int64_t k = 1; k <= n_terms; ++k) {
    if (cc) {
      double dist = std::abs(y.frac - cc->critical_point);
      dist = std::min(dist, 1.0 - dist);
      if (dist < 1e-12) throw HitCriticalOrbit(k - 1);
    }
    double fp;
    y = step(map, y, fp);
    D *= fp;
    sum += 1.0 / D;
    S.push_back(sum);
  }
  return S;
}

double l1_distance(const DiscreteDensity& a, const DiscreteDensity& b) {
  if (a.grid_n != b.grid_n) throw InvalidArgument("densities live on different grids");
  return l1(a.weights, b.weights);
}

double max_cell_mass(const DiscreteDensity& d) {
  return *std::max_element(d.weights.begin(), d.weights.end()) / d.grid_n;
}

}  // namespace circlemap
