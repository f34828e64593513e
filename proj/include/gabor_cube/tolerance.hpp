#ifndef GABOR_CUBE_TOLERANCE_HPP
#define GABOR_CUBE_TOLERANCE_HPP

#include <cmath>
#include <cstdint>

namespace gabor_cube {

/// Integer-membership tolerance shared by every module.
inline constexpr double kIntegerTolerance = 1e-9;

inline double distance_to_integer(double x) { return std::abs(x - std::round(x)); }

inline bool is_integer(double x, double eps = kIntegerTolerance) {
  return distance_to_integer(x) <= eps;
}

/// x ∈ Z∖{0} up to eps.
inline bool is_nonzero_integer(double x, double eps = kIntegerTolerance) {
  const double r = std::round(x);
  return r != 0.0 && std::abs(x - r) <= eps;
}

/// floor(x) with values within eps below an integer snapped up to it.
inline std::int64_t integer_part(double x, double eps = kIntegerTolerance) {
  return static_cast<std::int64_t>(std::floor(x + eps));
}

/// x - integer_part(x), clamped to [0, 1).
inline double fractional_part(double x, double eps = kIntegerTolerance) {
  const double f = x - static_cast<double>(integer_part(x, eps));
  return f <= eps ? 0.0 : f;
}

/// Both residues mod 1 agree up to eps.
inline bool congruent_mod_one(double a, double b, double eps = kIntegerTolerance) {
  return distance_to_integer(a - b) <= eps;
}

}  // namespace gabor_cube

#endif  // GABOR_CUBE_TOLERANCE_HPP
