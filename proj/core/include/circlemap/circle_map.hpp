#pragma once

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

namespace circlemap {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr int kMaxDegree = 64;

// Lift F(x) = x + c0 + sum_k (r_k cos 2 pi k x + s_k sin 2 pi k x).
// Immutable; the minimum of F' is sampled once at construction so that
// iteration can reject non-monotone maps cheaply.
class CircleMapLift {
 public:
  CircleMapLift() : CircleMapLift(0.0, {}, {}) {}
  CircleMapLift(double c0, std::vector<double> cos_coeffs,
                std::vector<double> sin_coeffs);

  static CircleMapLift rotation(double alpha);
  // x + a - (b / 2 pi) sin 2 pi x: the critical point sits at 0 when b = 1.
  static CircleMapLift arnold(double a, double b);

  double c0() const { return c0_; }
  const std::vector<double>& cos_coeffs() const { return cos_; }
  const std::vector<double>& sin_coeffs() const { return sin_; }
  int degree() const { return static_cast<int>(cos_.size()); }

  // Same periodic part, different constant term (the family f + a).
  CircleMapLift with_c0(double c0) const;

  // sampled min of F' over [0,1)
  double min_derivative() const { return min_deriv_; }
  bool monotone() const;

 private:
  double c0_;
  std::vector<double> cos_, sin_;
  double min_deriv_ = 1.0;
};

// order 0..3: F, F', F'', F'''.
double eval_lift(const CircleMapLift& map, double x, int order);

struct Jet {
  double v, d1, d2, d3;
};
// All four at once (one set of trig evaluations).
Jet eval_jet(const CircleMapLift& map, double x);

// F(x) - x, which is 1-periodic.
double displacement(const CircleMapLift& map, double x);

// A lifted point split into an integer and a fractional part. Long orbits
// keep full precision in the fraction no matter how far the lift travels.
struct LiftedPoint {
  std::int64_t n = 0;
  double frac = 0.0;
  double value() const { return static_cast<double>(n) + frac; }
};

LiftedPoint lifted(double x);
// One application of F.
LiftedPoint step(const CircleMapLift& map, LiftedPoint p);
LiftedPoint step(const CircleMapLift& map, LiftedPoint p, double& fprime);

// F^n(x). If deriv is non-null it receives (F^n)'(x).
double iterate_lift(const CircleMapLift& map, double x, std::int64_t n,
                    double* deriv = nullptr);
// F^n(x) - x - p evaluated without forming the large lifted value.
double iterate_displacement(const CircleMapLift& map, double x,
                            std::int64_t n, std::int64_t p);

struct Diffeomorphism {};
struct CubicCritical {
  double critical_point;
};
struct NonMonotone {
  double witness;
};
using MapClass = std::variant<Diffeomorphism, CubicCritical, NonMonotone>;

MapClass classify(const CircleMapLift& map, double tol);
const char* class_name(const MapClass& c);

// Throws NonMonotoneMap when the sampled minimum of F' is negative.
void require_monotone(const CircleMapLift& map);

// Inverse of F on the real line by safeguarded Newton (F must be monotone).
double invert_lift(const CircleMapLift& map, double y);

// Trigonometric fit of a lift given as a function with F(x+1) = F(x) + 1.
// Coefficients with magnitude below drop are discarded from the top.
CircleMapLift fit_lift(const std::function<double(double)>& lift, int degree,
                       double drop = 0.0);

}  // namespace circlemap
