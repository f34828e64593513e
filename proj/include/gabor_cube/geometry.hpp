#ifndef GABOR_CUBE_GEOMETRY_HPP
#define GABOR_CUBE_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace gabor_cube {

/// A point of R^n. Time-frequency points of R^{2d} store the d time
/// coordinates first, then the d frequency coordinates.
using Point = std::vector<double>;

/// (t, λ) view of a point of R^{2d}.
struct TFPoint {
  std::vector<double> t;
  std::vector<double> lambda;

  static TFPoint from_flat(std::span<const double> p) {
    if (p.size() % 2 != 0 || p.empty()) {
      throw DomainError("time-frequency point needs an even, non-zero number of coordinates");
    }
    const std::size_t d = p.size() / 2;
    return {{p.begin(), p.begin() + d}, {p.begin() + d, p.end()}};
  }
  Point flat() const {
    Point p(t);
    p.insert(p.end(), lambda.begin(), lambda.end());
    return p;
  }
  friend bool operator==(const TFPoint&, const TFPoint&) = default;
};

/// Axis-aligned half-open box ∏ [lo_i, hi_i).
class BoxRegion {
 public:
  BoxRegion() = default;
  BoxRegion(std::vector<double> lo, std::vector<double> hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.size() != hi_.size() || lo_.empty()) {
      throw DomainError("box bounds must be non-empty and of equal length");
    }
    for (std::size_t i = 0; i < lo_.size(); ++i) {
      if (!std::isfinite(lo_[i]) || !std::isfinite(hi_[i]) || !(lo_[i] < hi_[i])) {
        throw DomainError("box needs finite bounds with lo < hi in every coordinate");
      }
    }
  }

  /// [-radius, radius)^n.
  static BoxRegion centered(std::size_t n, double radius) {
    return BoxRegion(std::vector<double>(n, -radius), std::vector<double>(n, radius));
  }

  std::size_t dimension() const noexcept { return lo_.size(); }
  const std::vector<double>& lo() const noexcept { return lo_; }
  const std::vector<double>& hi() const noexcept { return hi_; }
  double lo(std::size_t i) const { return lo_[i]; }
  double hi(std::size_t i) const { return hi_[i]; }

  bool contains(std::span<const double> p) const {
    if (p.size() != lo_.size()) return false;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!(p[i] >= lo_[i] && p[i] < hi_[i])) return false;
    }
    return true;
  }

  /// The box shrunk by `by` on every side; empty (nullopt-like) boxes throw.
  BoxRegion shrunk(double by) const {
    std::vector<double> lo(lo_), hi(hi_);
    for (std::size_t i = 0; i < lo.size(); ++i) {
      lo[i] += by;
      hi[i] -= by;
      if (!(lo[i] < hi[i])) throw DomainError("box too small: interior-safe region is empty");
    }
    return BoxRegion(std::move(lo), std::move(hi));
  }

  BoxRegion translated(std::span<const double> v) const {
    std::vector<double> lo(lo_), hi(hi_);
    for (std::size_t i = 0; i < lo.size(); ++i) {
      lo[i] += v[i];
      hi[i] += v[i];
    }
    return BoxRegion(std::move(lo), std::move(hi));
  }

  /// Sub-box over the listed coordinates, in that order.
  BoxRegion select(std::span<const std::size_t> coords) const {
    std::vector<double> lo, hi;
    for (auto c : coords) {
      lo.push_back(lo_.at(c));
      hi.push_back(hi_.at(c));
    }
    return BoxRegion(std::move(lo), std::move(hi));
  }

  /// Smallest distance from p to the box boundary (negative if outside).
  double margin(std::span<const double> p) const {
    double m = INFINITY;
    for (std::size_t i = 0; i < lo_.size(); ++i) {
      m = std::min({m, p[i] - lo_[i], hi_[i] - p[i]});
    }
    return m;
  }

  double volume() const {
    double v = 1.0;
    for (std::size_t i = 0; i < lo_.size(); ++i) v *= hi_[i] - lo_[i];
    return v;
  }

  friend bool operator==(const BoxRegion&, const BoxRegion&) = default;

 private:
  std::vector<double> lo_, hi_;
};

inline std::vector<std::size_t> coordinate_range(std::size_t begin, std::size_t end) {
  std::vector<std::size_t> out;
  for (std::size_t i = begin; i < end; ++i) out.push_back(i);
  return out;
}

/// Lexicographic sort plus removal of exact duplicates.
inline void sort_points(std::vector<Point>& points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
}

inline double max_norm_distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

/// Lexicographic sort, then drop every point within eps (max norm) of an
/// earlier kept point.
inline void sort_dedupe(std::vector<Point>& points, double eps) {
  std::sort(points.begin(), points.end());
  std::vector<Point> out;
  out.reserve(points.size());
  for (auto& p : points) {
    bool duplicate = false;
    for (auto j = out.size(); j-- > 0;) {
      if (out[j][0] < p[0] - eps) break;
      if (max_norm_distance(out[j], p) <= eps) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) out.push_back(std::move(p));
  }
  points = std::move(out);
}

}  // namespace gabor_cube

#endif  // GABOR_CUBE_GEOMETRY_HPP
