#pragma once

#include "circlemap/cf.hpp"
#include "circlemap/circle_map.hpp"
#include "circlemap/tongues.hpp"

// Critical Arnold map with golden rotation number; a is found once by the
// library and cross-checked against a Birkhoff oracle in test_tongues.
inline const circlemap::CircleMapLift& critical_golden() {
  static const circlemap::CircleMapLift m = circlemap::CircleMapLift::arnold(
      circlemap::tongue_point(circlemap::ContinuedFraction::golden(), 1.0, 1e-13), 1.0);
  return m;
}

inline circlemap::CircleMapLift golden_at(double b) {
  return circlemap::CircleMapLift::arnold(
      circlemap::tongue_point(circlemap::ContinuedFraction::golden(), b, 1e-13), b);
}
