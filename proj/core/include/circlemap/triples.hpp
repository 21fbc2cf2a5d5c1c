#pragma once

#include <complex>
#include <vector>

#include "circlemap/circle_map.hpp"

namespace circlemap {

inline constexpr int kTripleNodes = 129;

// Real triple (F, H_a, G): F(z) = z + f_shift, H_a(z) = z^3 - a z, G stored
// by its values at Chebyshev nodes of [-1/2, 1/2]. The projection is
//   p(x) = f_shift + pi_scale * H_a(G(x))   for x in [-1/2, 1/2],
// extended by p(x + 1) = p(x) + 1. pi_scale carries the constant that the
// normalization G'(0) = 1 pulls out of H_a o G. h_shift is the translation
// h(x) = x + h_shift with h o p o h^{-1} = f.
struct TripleReal {
  double f_shift = 0.0;
  double a = 0.0;
  double h_shift = 0.0;
  double pi_scale = 1.0;
  std::vector<double> g_nodes;  // G at chebyshev_nodes()
};

// x_j = cos(j pi / 128) / 2, j = 0..128 (descending); the middle node is 0.
const std::vector<double>& chebyshev_nodes();

// H_a and its first two derivatives.
double h_map(double a, double z, int order);

// Barycentric interpolant of G (order 0 or 1), valid on [-1/2, 1/2].
double g_eval(const TripleReal& t, double x, int order = 0);

// G = cbrt(f - f(0)) rescaled to G'(0) = 1; needs the critical point at 0.
TripleReal lift_critical(const CircleMapLift& map);

struct FamilyDiagnostics {
  std::complex<double> c1, c2;  // critical points of the complexified map
  std::complex<double> d1, d2;  // critical values
  std::complex<double> A;       // before discarding the imaginary part
  double z0 = 0.0;              // real solution of f(z0) = Re d1
};

// Lift of a near-critical diffeomorphism with a pair of complex conjugate
// critical points near 0. Falls back to lift_critical for a critical map.
TripleReal lift_family(const CircleMapLift& map, FamilyDiagnostics* diag = nullptr);

// p(triple) as a lift; construction checks that H_a o G commutes with the
// unit translation (values and slopes across the window edges).
class TripleProjection {
 public:
  explicit TripleProjection(TripleReal t);
  double operator()(double x) const;
  double derivative(double x) const;
  const TripleReal& triple() const { return t_; }

 private:
  TripleReal t_;
};

TripleProjection project(const TripleReal& t);

// max of |value defect|, |slope defect at +-1/2|
double commutation_defect(const TripleReal& t);

// sup over `samples` points of |h o p o h^{-1}(z) - f(z)|
double conjugacy_residual(const TripleReal& t, const CircleMapLift& map, int samples = 512);

}  // namespace circlemap
