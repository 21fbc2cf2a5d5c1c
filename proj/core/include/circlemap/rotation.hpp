#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "circlemap/circle_map.hpp"

namespace circlemap {

struct Rational {
  std::int64_t p = 0, q = 1;
  double value() const { return double(p) / double(q); }
  std::string str() const { return std::to_string(p) + "/" + std::to_string(q); }
};

inline bool operator==(Rational a, Rational b) { return a.p == b.p && a.q == b.q; }

struct RotationResult {
  double estimate = 0.0;
  Rational lower, upper;
  std::vector<std::int64_t> digits;  // digits of rot - floor(rot), 1-based order
  bool exact = false;                // plateau: lower == upper == rot
};

double rot_birkhoff(const CircleMapLift& map, std::int64_t n_iter);

// rot >= p/q, decided from max_x (F^q(x) - x - p).
bool rot_ge(const CircleMapLift& map, std::int64_t p, std::int64_t q);
// rot <= p/q, decided from min_x (F^q(x) - x - p).
bool rot_le(const CircleMapLift& map, std::int64_t p, std::int64_t q);

struct DisplacementRange {
  double min, max;
};
// Range of F^q(x) - x - p over the circle (grid plus local refinement).
DisplacementRange displacement_range(const CircleMapLift& map, std::int64_t p,
                                     std::int64_t q);

// True if the range straddles zero up to the rounding floor of a q-step orbit.
bool has_periodic_orbit(const CircleMapLift& map, std::int64_t p, std::int64_t q);

inline constexpr std::int64_t kDefaultQCap = 100000;

// Stern-Brocot descent. Throws RationalRotation on a plateau.
RotationResult rot_digits(const CircleMapLift& map, int depth,
                          std::int64_t q_cap = kDefaultQCap);
// Same descent without depth limit; a plateau gives lower == upper.
RotationResult rot_bracket(const CircleMapLift& map,
                           std::int64_t q_cap = kDefaultQCap);

}  // namespace circlemap
