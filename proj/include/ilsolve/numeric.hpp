#ifndef ILSOLVE_NUMERIC_HPP_
#define ILSOLVE_NUMERIC_HPP_

#include <cmath>

#include "ilsolve/model.hpp"

namespace ilsolve {

// Ratios like slack/coeff are computed in floating point; values within
// 1e-9 of an integer are snapped to it before rounding so that floor/ceil
// do not flip on representation noise.
inline constexpr double kSnapEps = 1e-9;

inline double snap_to_int(double r) {
  double n = std::nearbyint(r);
  return std::fabs(r - n) < kSnapEps ? n : r;
}

inline double snapped_floor(double r) { return std::floor(snap_to_int(r)); }
inline double snapped_ceil(double r) { return std::ceil(snap_to_int(r)); }

// Converts a rounded ratio to a Value, clamping magnitudes beyond the
// representable range to the infinity sentinels.
inline Value ratio_to_value(double r) {
  if (r >= 9.0e18) return kPosInf;
  if (r <= -9.0e18) return kNegInf;
  return (Value)r;
}

// a + b where a may be a sentinel; b finite.
inline Value shifted(Value a, Value b) {
  if (!is_finite(a)) return a;
  return a + b;
}

}  // namespace ilsolve

#endif  // ILSOLVE_NUMERIC_HPP_
