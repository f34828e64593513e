#ifndef GABOR_CUBE_TILING_HPP
#define GABOR_CUBE_TILING_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "geometry.hpp"
#include "indexed.hpp"
#include "sets.hpp"
#include "tolerance.hpp"

namespace gabor_cube {

inline constexpr std::size_t kMaxWitnesses = 100;

enum class CoverageVerdict { packing_and_tiling, packing_only, not_packing };

inline const char* to_string(CoverageVerdict v) {
  switch (v) {
    case CoverageVerdict::packing_and_tiling: return "packing_and_tiling";
    case CoverageVerdict::packing_only: return "packing_only";
    case CoverageVerdict::not_packing: return "not_packing";
  }
  return "?";
}

struct CoverageWitness {
  enum class Kind { overlap, uncovered };
  Kind kind = Kind::uncovered;
  std::vector<Point> points;  // the overlapping pair, or the uncovered sample
  Point location;             // a point of the region where the defect sits
};

struct CoverageReport {
  CoverageVerdict verdict = CoverageVerdict::packing_and_tiling;
  std::vector<CoverageWitness> witnesses;
  /// Smallest distance of a witness location from the box boundary; the
  /// width of the safe band when there are no witnesses.
  double margin = 0.0;
  BoxRegion region;  // where the verdict holds

  bool tiles() const noexcept { return verdict == CoverageVerdict::packing_and_tiling; }
  bool packs() const noexcept { return verdict != CoverageVerdict::not_packing; }
};

namespace detail {

inline void require_dimension(const std::vector<Point>& points, std::size_t n) {
  for (const auto& p : points) {
    if (p.size() != n) throw DomainError("point dimension does not match the box");
  }
}

/// Overlapping pairs of unit cubes [p, p+1)^n whose intersection meets the
/// region in positive measure, in lexicographic (p, q) order.
inline std::vector<CoverageWitness> overlapping_pairs(std::vector<Point> points, const BoxRegion& region,
                                                      double eps, std::size_t limit) {
  sort_points(points);
  const std::size_t n = region.dimension();
  std::vector<CoverageWitness> out;
  Point where(n);
  for (std::size_t i = 0; i < points.size() && out.size() < limit; ++i) {
    const Point& p = points[i];
    for (std::size_t j = i + 1; j < points.size() && out.size() < limit; ++j) {
      const Point& q = points[j];
      if (q[0] >= p[0] + 1.0 - eps) break;
      bool overlap = true;
      for (std::size_t c = 0; c < n && overlap; ++c) {
        const double a = std::max({p[c], q[c], region.lo(c)});
        const double b = std::min({p[c] + 1.0, q[c] + 1.0, region.hi(c)});
        overlap = b - a > eps;
        where[c] = 0.5 * (a + b);
      }
      if (overlap) out.push_back({CoverageWitness::Kind::overlap, {p, q}, where});
    }
  }
  return out;
}

/// Dimension-recursive exact sweep: splits the region at every cube face,
/// descending with the cubes active on each elementary interval.
class CoverageSweep {
 public:
  CoverageSweep(const std::vector<Point>& points, const BoxRegion& region, double eps, std::size_t limit)
      : points_(points), region_(region), eps_(eps), limit_(limit), mid_(region.dimension()) {}

  std::vector<Point> run() {
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < points_.size(); ++i) {
      bool meets = true;
      for (std::size_t c = 0; c < region_.dimension() && meets; ++c) {
        meets = points_[i][c] < region_.hi(c) - eps_ && points_[i][c] + 1.0 > region_.lo(c) + eps_;
      }
      if (meets) active.push_back(i);
    }
    descend(0, region_.lo(), region_.hi(), active);
    return std::move(uncovered_);
  }

 private:
  void descend(std::size_t dim, const std::vector<double>& lo, const std::vector<double>& hi,
               const std::vector<std::size_t>& active) {
    if (uncovered_.size() >= limit_) return;
    const std::size_t n = region_.dimension();
    if (active.empty()) {
      for (std::size_t c = dim; c < n; ++c) mid_[c] = 0.5 * (lo[c] + hi[c]);
      uncovered_.push_back(mid_);
      return;
    }
    if (dim == n) return;
    std::vector<double> cuts{lo[dim], hi[dim]};
    for (auto i : active) {
      for (double x : {points_[i][dim], points_[i][dim] + 1.0}) {
        if (x > lo[dim] && x < hi[dim]) cuts.push_back(x);
      }
    }
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> snapped;
    for (double x : cuts) {
      if (snapped.empty() || x - snapped.back() > eps_) snapped.push_back(x);
    }
    if (hi[dim] - snapped.back() <= eps_) snapped.back() = hi[dim];
    std::vector<std::size_t> sub;
    for (std::size_t k = 0; k + 1 < snapped.size(); ++k) {
      const double a = snapped[k], b = snapped[k + 1];
      sub.clear();
      for (auto i : active) {
        const double p = points_[i][dim];
        if (p <= a + eps_ && p + 1.0 >= b - eps_) sub.push_back(i);
      }
      mid_[dim] = 0.5 * (a + b);
      descend(dim + 1, lo, hi, sub);
      if (uncovered_.size() >= limit_) return;
    }
  }

  const std::vector<Point>& points_;
  const BoxRegion& region_;
  double eps_;
  std::size_t limit_;
  Point mid_;
  std::vector<Point> uncovered_;
};

inline CoverageReport assemble(const BoxRegion& box, const BoxRegion& region,
                               std::vector<CoverageWitness> overlaps, std::vector<Point> uncovered) {
  CoverageReport r;
  r.region = region;
  if (!overlaps.empty()) {
    r.verdict = CoverageVerdict::not_packing;
    r.witnesses = std::move(overlaps);
  } else if (!uncovered.empty()) {
    r.verdict = CoverageVerdict::packing_only;
    for (auto& u : uncovered) r.witnesses.push_back({CoverageWitness::Kind::uncovered, {u}, u});
  }
  if (r.witnesses.empty()) {
    r.margin = region.lo(0) - box.lo(0);
  } else {
    r.margin = INFINITY;
    for (const auto& w : r.witnesses) r.margin = std::min(r.margin, box.margin(w.location));
  }
  return r;
}

}  // namespace detail

/// Packing check over the whole box: any two cubes [p, p+1)^n overlapping in
/// positive measure inside the box give not_packing.
inline CoverageReport check_packing(const std::vector<Point>& points, const BoxRegion& box,
                                    double eps = kIntegerTolerance) {
  detail::require_dimension(points, box.dimension());
  for (const auto& p : points) {
    if (!box.contains(p)) throw DomainError("check_packing: point outside the box");
  }
  return detail::assemble(box, box, detail::overlapping_pairs(points, box, eps, kMaxWitnesses), {});
}

/// Exact windowed tiling check. `points` is the set enumerated on `box`; the
/// verdict covers the interior-safe region (box shrunk by 1 on every side).
inline CoverageReport check_tiling(const std::vector<Point>& points, const BoxRegion& box,
                                   double eps = kIntegerTolerance) {
  detail::require_dimension(points, box.dimension());
  const BoxRegion region = box.shrunk(1.0);
  auto overlaps = detail::overlapping_pairs(points, region, eps, kMaxWitnesses);
  std::vector<Point> uncovered;
  if (overlaps.empty()) uncovered = detail::CoverageSweep(points, region, eps, kMaxWitnesses).run();
  return detail::assemble(box, region, std::move(overlaps), std::move(uncovered));
}

inline CoverageReport check_tiling(const StructuredSet& s, const BoxRegion& box,
                                   double eps = kIntegerTolerance) {
  return check_tiling(enumerate(s, box), box, eps);
}

// ---------------------------------------------------------------- grid oracle

/// Samples on the nodes lo + i·h of a box, row-major (last coordinate
/// fastest). Read as piecewise constant on the half-open cells [node, node+h).
struct GridFunction {
  std::vector<double> lo;
  double resolution = 1.0;
  std::vector<std::size_t> shape;
  std::vector<double> values;

  std::size_t dimension() const noexcept { return lo.size(); }
  std::size_t size() const noexcept { return values.size(); }

  Point node(std::size_t flat) const {
    Point x(lo.size());
    for (std::size_t c = lo.size(); c-- > 0;) {
      x[c] = lo[c] + static_cast<double>(flat % shape[c]) * resolution;
      flat /= shape[c];
    }
    return x;
  }

  /// Value of the cell containing x, 0 outside the grid.
  double operator()(std::span<const double> x) const {
    std::size_t flat = 0;
    for (std::size_t c = 0; c < lo.size(); ++c) {
      const auto i = static_cast<std::int64_t>(std::floor((x[c] - lo[c]) / resolution + kIntegerTolerance));
      if (i < 0 || i >= static_cast<std::int64_t>(shape[c])) return 0.0;
      flat = flat * shape[c] + static_cast<std::size_t>(i);
    }
    return values[flat];
  }
};

namespace detail {
inline std::vector<std::size_t> grid_shape(const BoxRegion& box, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("grid resolution must be positive");
  std::vector<std::size_t> shape;
  for (std::size_t c = 0; c < box.dimension(); ++c) {
    const double cells = (box.hi(c) - box.lo(c)) / h;
    if (!is_integer(cells, 1e-6)) throw DomainError("grid resolution does not divide the box sides");
    shape.push_back(static_cast<std::size_t>(std::llround(cells)));
  }
  return shape;
}
}  // namespace detail

inline GridFunction sample_grid(const std::function<double(std::span<const double>)>& f, const BoxRegion& box,
                                double resolution) {
  GridFunction g{box.lo(), resolution, detail::grid_shape(box, resolution), {}};
  std::size_t total = 1;
  for (auto s : g.shape) total *= s;
  g.values.resize(total);
  for (std::size_t i = 0; i < total; ++i) g.values[i] = f(g.node(i));
  return g;
}

/// χ_[0,1)^n on its own support.
inline GridFunction unit_cube_grid(std::size_t n, double resolution) {
  return sample_grid([](std::span<const double>) { return 1.0; },
                     BoxRegion(std::vector<double>(n, 0.0), std::vector<double>(n, 1.0)), resolution);
}

/// (f ∗ Σ_p δ_p)(x) = Σ_p f(x − p) on the nodes of `region` at spacing
/// `resolution`. Exact when every coordinate is a multiple of the resolution.
inline GridFunction convolution_oracle(const GridFunction& f, const std::vector<Point>& points,
                                       const BoxRegion& region, double resolution) {
  if (f.dimension() != region.dimension()) throw DomainError("convolution_oracle: dimension mismatch");
  detail::require_dimension(points, region.dimension());
  GridFunction out{region.lo(), resolution, detail::grid_shape(region, resolution), {}};
  std::size_t total = 1;
  for (auto s : out.shape) total *= s;
  out.values.assign(total, 0.0);
  const std::size_t n = region.dimension();
  std::vector<std::int64_t> first(n), last(n);
  Point x(n), y(n);
  for (const auto& p : points) {
    // nodes x with x - p inside f's box
    bool empty = false;
    for (std::size_t c = 0; c < n && !empty; ++c) {
      const double fhi = f.lo[c] + static_cast<double>(f.shape[c]) * f.resolution;
      first[c] = std::max<std::int64_t>(
          0, static_cast<std::int64_t>(std::ceil((p[c] + f.lo[c] - region.lo(c)) / resolution - kIntegerTolerance)));
      last[c] = std::min<std::int64_t>(
          static_cast<std::int64_t>(out.shape[c]) - 1,
          static_cast<std::int64_t>(std::ceil((p[c] + fhi - region.lo(c)) / resolution - kIntegerTolerance)) - 1);
      empty = first[c] > last[c];
    }
    if (empty) continue;
    std::vector<std::int64_t> idx(first);
    while (true) {
      std::size_t flat = 0;
      for (std::size_t c = 0; c < n; ++c) {
        x[c] = region.lo(c) + static_cast<double>(idx[c]) * resolution;
        y[c] = x[c] - p[c];
        flat = flat * out.shape[c] + static_cast<std::size_t>(idx[c]);
      }
      out.values[flat] += f(y);
      std::size_t c = n;
      while (c-- > 0) {
        if (++idx[c] <= last[c]) break;
        idx[c] = first[c];
      }
      if (c == static_cast<std::size_t>(-1)) break;
    }
  }
  return out;
}

/// Grid oracle verdict: f = χ_[0,1)^n convolved with the points is 1 at
/// every node of the interior-safe region.
inline bool oracle_tiles(const std::vector<Point>& points, const BoxRegion& box, double resolution) {
  const BoxRegion region = box.shrunk(1.0);
  const GridFunction g = convolution_oracle(unit_cube_grid(box.dimension(), resolution), points, region, resolution);
  return std::all_of(g.values.begin(), g.values.end(), [](double v) { return v == 1.0; });
}

// ---------------------------------------------------------------- 2D recognition

enum class CubeTilingForm { rows, columns, lattice };

inline const char* to_string(CubeTilingForm f) {
  switch (f) {
    case CubeTilingForm::rows: return "rows";
    case CubeTilingForm::columns: return "columns";
    case CubeTilingForm::lattice: return "lattice";
  }
  return "?";
}

/// Offsets are relative to the anchor: a_k is the offset of strip k of the
/// translated set J − anchor, so the anchor's strip has a_0 = 0.
struct CubeTilingRecognition {
  bool recognized = false;
  CubeTilingForm form = CubeTilingForm::lattice;
  IndexedParam offsets{1};
  std::vector<std::int64_t> strips;  // observed strip indices
  Point anchor{0.0, 0.0};
  std::string reason;  // when not recognized
};

namespace detail {
inline std::optional<std::map<std::int64_t, double>> strip_offsets(const std::vector<Point>& shifted,
                                                                    std::size_t strip, double eps) {
  const std::size_t other = 1 - strip;
  std::map<std::int64_t, double> seen;
  for (const auto& q : shifted) {
    if (!is_integer(q[strip], eps)) return std::nullopt;
    const auto k = static_cast<std::int64_t>(std::llround(q[strip]));
    const double a = fractional_part(q[other], eps);
    const auto [it, inserted] = seen.emplace(k, a);
    if (!inserted && !congruent_mod_one(it->second, a, eps)) return std::nullopt;
  }
  return seen;
}
}  // namespace detail

/// Recovers the rows/columns form of a windowed 2D cube tiling.
inline CubeTilingRecognition recognize_2d_cube_tiling(const std::vector<Point>& points, const BoxRegion& box,
                                                      double eps = kIntegerTolerance) {
  if (box.dimension() != 2) throw DomainError("recognize_2d_cube_tiling needs a box in R^2");
  const CoverageReport tiling = check_tiling(points, box, eps);
  if (!tiling.tiles()) {
    throw PreconditionError(std::string("recognize_2d_cube_tiling: input is not a tiling (") +
                            to_string(tiling.verdict) + ")");
  }
  CubeTilingRecognition r;
  std::vector<Point> sorted(points);
  sort_points(sorted);
  if (sorted.empty()) throw PreconditionError("recognize_2d_cube_tiling: no points");
  r.anchor = {fractional_part(sorted[0][0], eps), fractional_part(sorted[0][1], eps)};
  for (auto& q : sorted) {
    q[0] -= r.anchor[0];
    q[1] -= r.anchor[1];
  }
  const auto rows = detail::strip_offsets(sorted, 1, eps);
  const auto cols = detail::strip_offsets(sorted, 0, eps);
  if (rows && cols) {
    r.recognized = true;
    r.form = CubeTilingForm::lattice;
  } else if (rows || cols) {
    r.recognized = true;
    r.form = rows ? CubeTilingForm::rows : CubeTilingForm::columns;
    for (const auto& [k, a] : rows ? *rows : *cols) {
      r.strips.push_back(k);
      if (a != 0.0) r.offsets.set({k}, a);
    }
  } else {
    r.reason = "neither the rows nor the columns form fits";
  }
  return r;
}

/// Set described by a recognition, with absolute offsets in [0,1): a lattice
/// Z² + anchor, or a cube tiling whose shift moves only the strip coordinate.
inline StructuredSet recognized_set(const CubeTilingRecognition& r, double eps = kIntegerTolerance) {
  if (!r.recognized) throw DomainError("recognized_set: recognition failed: " + r.reason);
  if (r.form == CubeTilingForm::lattice) return make_lattice(std::vector<double>{r.anchor[0], r.anchor[1]});
  const std::size_t strip = r.form == CubeTilingForm::rows ? 1 : 0;
  const std::size_t other = 1 - strip;
  // keys k of the relative table sit at absolute strip coordinate k + anchor
  IndexedParam absolute(1);
  for (auto k : r.strips) absolute.set({k}, fractional_part(r.offsets.at({k}) + r.anchor[other], eps));
  std::array<double, 2> shift{0.0, 0.0};
  shift[strip] = r.anchor[strip];
  return make_cube_tiling_2d(r.form == CubeTilingForm::rows ? TilingAxis::rows : TilingAxis::columns,
                             absolute.canonical(), shift);
}

// ---------------------------------------------------------------- density

/// #(points in [−T, T)^n) / (2T)^n.
inline double estimate_density(const std::vector<Point>& points, double T) {
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("estimate_density: T must be positive");
  if (points.empty()) return 0.0;
  const BoxRegion box = BoxRegion::centered(points.front().size(), T);
  std::size_t count = 0;
  for (const auto& p : points) count += box.contains(p) ? 1 : 0;
  return static_cast<double>(count) / std::pow(2.0 * T, static_cast<double>(box.dimension()));
}

inline double estimate_density(const StructuredSet& s, double T) {
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("estimate_density: T must be positive");
  std::size_t count = 0;
  for_each_point(s, BoxRegion::centered(s.ambient(), T), [&](std::span<const double>) { ++count; });
  return static_cast<double>(count) / std::pow(2.0 * T, static_cast<double>(s.ambient()));
}

}  // namespace gabor_cube

#endif  // GABOR_CUBE_TILING_HPP
