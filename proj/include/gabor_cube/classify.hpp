#ifndef GABOR_CUBE_CLASSIFY_HPP
#define GABOR_CUBE_CLASSIFY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "geometry.hpp"
#include "indexed.hpp"
#include "ortho.hpp"
#include "sets.hpp"
#include "sets_json.hpp"
#include "stft.hpp"
#include "tiling.hpp"
#include "tolerance.hpp"

namespace gabor_cube {

// ---------------------------------------------------------------- slices

namespace detail {
inline void require_tf_dimension(const StructuredSet& s, std::size_t d, const char* what) {
  if (s.ambient() != 2 * d) {
    throw DomainError(std::string(what) + ": expected a set in R^" + std::to_string(2 * d) + ", got R^" +
                      std::to_string(s.ambient()));
  }
}

inline bool unit_square(const BoxRegion& a, double eps) {
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    if (std::abs(a.hi(i) - a.lo(i) - 1.0) > eps) return false;
  }
  return true;
}

inline BoxRegion product_box(const BoxRegion& a, const BoxRegion& b) {
  std::vector<double> lo(a.lo()), hi(a.hi());
  lo.insert(lo.end(), b.lo().begin(), b.lo().end());
  hi.insert(hi.end(), b.hi().begin(), b.hi().end());
  return BoxRegion(lo, hi);
}

/// Sorted and within eps elementwise.
inline bool same_points(std::vector<Point> a, std::vector<Point> b, double eps, Point* first_difference) {
  sort_points(a);
  sort_points(b);
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (max_norm_distance(a[i], b[i]) > eps) {
      if (first_difference) *first_difference = std::min(a[i], b[i]);
      return false;
    }
  }
  if (a.size() != b.size()) {
    if (first_difference) *first_difference = a.size() > n ? a[n] : b[n];
    return false;
  }
  return true;
}

inline std::string format_point(std::span<const double> p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ", ";
    std::ostringstream v;
    v << p[i];
    s += v.str();
  }
  return s + ")";
}
}  // namespace detail

/// Γ(A): frequencies (λ1, λ2) of the points whose time part lies in A,
/// restricted to the frequency window.
inline std::vector<Point> gamma(const StructuredSet& s, const BoxRegion& a, const BoxRegion& freq_window,
                                double eps = kIntegerTolerance) {
  detail::require_tf_dimension(s, 2, "gamma");
  std::vector<Point> out;
  for_each_point(s, detail::product_box(a, freq_window),
                 [&](std::span<const double> p) { out.emplace_back(p.begin() + 2, p.end()); });
  sort_dedupe(out, eps);
  return out;
}

/// T_A(λ): time points of A carrying the frequency λ. A half-open unit
/// square holds at most one of them on any orthonormal basis.
inline std::vector<Point> t_slice(const StructuredSet& s, const BoxRegion& a, std::span<const double> lambda,
                                  double eps = kIntegerTolerance) {
  detail::require_tf_dimension(s, 2, "t_slice");
  if (a.dimension() != 2 || lambda.size() != 2) throw DomainError("t_slice: A and λ must be two-dimensional");
  const BoxRegion freq({lambda[0] - 0.5, lambda[1] - 0.5}, {lambda[0] + 0.5, lambda[1] + 0.5});
  std::vector<Point> out;
  for_each_point(s, detail::product_box(a, freq), [&](std::span<const double> p) {
    if (max_norm_distance(p.subspan(2), lambda) <= eps) out.emplace_back(p.begin(), p.begin() + 2);
  });
  sort_dedupe(out, eps);
  if (out.size() > 1 && detail::unit_square(a, eps)) {
    throw InvariantViolation("t_slice: " + std::to_string(out.size()) + " time points over one half-open unit square at λ = " +
                             detail::format_point(lambda) + "; the set is not an orthonormal basis");
  }
  return out;
}

namespace detail {
inline std::vector<std::size_t> projection_coords(std::size_t d, std::size_t m) {
  std::vector<std::size_t> c = coordinate_range(0, m);
  for (std::size_t i = d; i < d + m; ++i) c.push_back(i);
  return c;
}
inline std::vector<std::size_t> complement_coords(std::size_t d, std::size_t m) {
  std::vector<std::size_t> c = coordinate_range(m, d);
  for (std::size_t i = d + m; i < 2 * d; ++i) c.push_back(i);
  return c;
}
inline Point pick(std::span<const double> p, const std::vector<std::size_t>& coords) {
  Point out;
  out.reserve(coords.size());
  for (auto c : coords) out.push_back(p[c]);
  return out;
}
}  // namespace detail

/// Π₁(s, t, λ, ν) = (s, λ) of the points of a set in R^{2d}, s, λ ∈ R^m.
inline std::vector<Point> project_tf(const std::vector<Point>& points, std::size_t m,
                                     double eps = kIntegerTolerance) {
  if (points.empty()) return {};
  const std::size_t d = points.front().size() / 2;
  if (m < 1 || m >= d) throw DomainError("project_tf: need 1 <= m < d");
  const auto coords = detail::projection_coords(d, m);
  std::vector<Point> out;
  for (const auto& p : points) out.push_back(detail::pick(p, coords));
  sort_dedupe(out, eps);
  return out;
}

inline std::vector<Point> project_tf(const StructuredSet& s, std::size_t m, const BoxRegion& box,
                                     double eps = kIntegerTolerance) {
  if (m < 1 || 2 * m >= s.ambient()) throw DomainError("project_tf: need 1 <= m < d");
  return project_tf(enumerate(s, box), m, eps);
}

/// Λ(C) = {(t, ν) : (s, t, λ, ν) ∈ Λ, (s, λ) ∈ C} for the half-open unit
/// cube C = corner + [0,1)^{2m}.
inline std::vector<Point> restrict_tf(const std::vector<Point>& points, std::size_t m,
                                      std::span<const double> corner, double eps = kIntegerTolerance) {
  if (points.empty()) return {};
  const std::size_t d = points.front().size() / 2;
  if (m < 1 || m >= d || corner.size() != 2 * m) throw DomainError("restrict_tf: need 1 <= m < d and a corner in R^2m");
  const auto base = detail::projection_coords(d, m);
  const auto rest = detail::complement_coords(d, m);
  std::vector<Point> out;
  for (const auto& p : points) {
    bool inside = true;
    for (std::size_t i = 0; i < base.size() && inside; ++i) {
      inside = p[base[i]] >= corner[i] && p[base[i]] < corner[i] + 1.0;
    }
    if (inside) out.push_back(detail::pick(p, rest));
  }
  sort_dedupe(out, eps);
  return out;
}

inline std::vector<Point> restrict_tf(const StructuredSet& s, std::size_t m, std::span<const double> corner,
                                      const BoxRegion& box, double eps = kIntegerTolerance) {
  const std::size_t d = s.ambient() / 2;
  if (m < 1 || m >= d || corner.size() != 2 * m) throw DomainError("restrict_tf: need 1 <= m < d and a corner in R^2m");
  std::vector<double> lo(box.lo()), hi(box.hi());
  const auto base = detail::projection_coords(d, m);
  for (std::size_t i = 0; i < base.size(); ++i) {
    lo[base[i]] = std::max(lo[base[i]], corner[i]);
    hi[base[i]] = std::min(hi[base[i]], corner[i] + 1.0);
    if (!(lo[base[i]] < hi[base[i]])) return {};
  }
  return restrict_tf(enumerate(s, BoxRegion(lo, hi)), m, corner, eps);
}

// ---------------------------------------------------------------- 1D

struct Classification1D {
  bool standard = false;
  /// J = Z + time_offset; the spectrum over the time cell [k, k+1) is
  /// Z + spectra_offsets[k].
  double time_offset = 0.0;
  IndexedParam spectra_offsets{1};
  CubeTilingForm tiling_form = CubeTilingForm::lattice;
  std::optional<StructuredSet> reconstruction;
  Point witness;  // violating difference when not standard
  std::string reason;
};

/// Recognizes Λ ⊂ R² as ⋃_{t ∈ J} {t} × Λ_t.
inline Classification1D classify_1d(const StructuredSet& s, const BoxRegion& box, double eps = kIntegerTolerance) {
  detail::require_tf_dimension(s, 1, "classify_1d");
  const auto points = enumerate(s, box);
  const CoverageReport tiling = check_tiling(points, box, eps);
  if (!tiling.tiles()) {
    throw PreconditionError(std::string("classify_1d: Λ + [0,1)^2 does not tile the window (") +
                            to_string(tiling.verdict) + ")");
  }
  const CubeTilingRecognition rec = recognize_2d_cube_tiling(points, box, eps);
  Classification1D out;
  if (!rec.recognized) throw InvariantViolation("classify_1d: a tiling of R^2 matched neither cube tiling form");
  out.tiling_form = rec.form;
  if (rec.form == CubeTilingForm::rows) {
    const OrthoReport ortho = check_orthogonality(points, Window::unit_cube(1), eps);
    out.reason = "time offsets vary along the frequency axis (rows form); the system is not orthogonal";
    out.witness = ortho.witness;
    return out;
  }
  out.standard = true;
  out.time_offset = rec.anchor[0];
  IndexedTable<StructuredSet> spectra(make_lattice(1));
  for (const auto& p : points) {
    const IntKey key{integer_part(p[0], eps)};
    const double b = fractional_part(p[1], eps);
    if (b != 0.0 && !out.spectra_offsets.table().contains(key)) {
      out.spectra_offsets.set(key, b);
      spectra.set(key, make_lattice(std::vector<double>{b}));
    }
  }
  out.reconstruction = make_standard(1, make_lattice(std::vector<double>{out.time_offset}), spectra);
  Point diff;
  if (!detail::same_points(enumerate(*out.reconstruction, box), points, eps, &diff)) {
    out.standard = false;
    out.reconstruction.reset();
    out.witness = diff;
    out.reason = "the window data do not fit the standard form; first difference at " + detail::format_point(diff);
  }
  return out;
}

// ---------------------------------------------------------------- 2D

struct Classification2D {
  bool classified = false;
  StripAxis axis = StripAxis::horizontal;
  bool degenerate = false;  // both axes fit
  /// The input equals reconstruction + anchor; only the strip coordinate
  /// is moved.
  Point anchor{0.0, 0.0, 0.0, 0.0};
  std::vector<std::int64_t> overlap_strips;  // J, observed
  std::vector<std::int64_t> tiling_strips;   // J', observed
  std::string t_dependence = "none";         // none | k | n,k
  bool nu_k_dependence = false;
  std::vector<std::string> labels;
  std::optional<StructuredSet> reconstruction;
  Point witness;
  std::string reason;
};

namespace detail {

inline std::vector<double> distinct_residues(std::vector<double> values, double eps) {
  for (auto& v : values) v = fractional_part(v, eps);
  std::sort(values.begin(), values.end());
  std::vector<double> out;
  for (double v : values) {
    if (out.empty() || v - out.back() > eps) out.push_back(v);
  }
  if (out.size() > 1 && congruent_mod_one(out.front(), out.back(), eps)) out.pop_back();
  return out;
}

/// Analysis of horizontally stripped points (t2 ∈ Z after anchoring).
inline Classification2D classify_horizontal(const std::vector<Point>& pts, const BoxRegion& box, double eps) {
  Classification2D out;
  out.classified = true;
  TwoDTheoremSpec spec;
  spec.axis = StripAxis::horizontal;
  std::map<std::int64_t, std::vector<const Point*>> strips;
  for (const auto& p : pts) strips[std::llround(p[1])].push_back(&p);
  const BoxRegion freq_box = box.select(std::vector<std::size_t>{2, 3});
  std::map<std::int64_t, std::map<std::int64_t, double>> t_tables;
  for (const auto& [n, members] : strips) {
    std::vector<double> t1;
    for (const auto* p : members) t1.push_back((*p)[0]);
    if (distinct_residues(t1, eps).size() >= 2) {
      out.overlap_strips.push_back(n);
      spec.overlap_strips.insert(n);
      std::map<std::int64_t, double> t_of_row;
      std::map<IntKey, double> mu_of_cell;
      std::optional<double> nu;
      for (const auto* p : members) {
        const auto k = integer_part((*p)[3], eps);
        const double t = fractional_part((*p)[0], eps);
        const double v = fractional_part((*p)[3], eps);
        const auto [it, fresh] = t_of_row.emplace(k, t);
        if (!fresh && !congruent_mod_one(it->second, t, eps)) {
          throw InvariantViolation("classify_2d: strip " + std::to_string(n) + " row " + std::to_string(k) +
                                   " carries two time offsets");
        }
        if (!nu) nu = v;
        if (!congruent_mod_one(*nu, v, eps)) out.nu_k_dependence = true;
        const auto m = std::llround((*p)[0] - t);
        const double mu = fractional_part((*p)[2], eps);
        const IntKey key{k, m, n};
        const auto [cell, first] = mu_of_cell.emplace(key, mu);
        if (!first && !congruent_mod_one(cell->second, mu, eps)) {
          throw InvariantViolation("classify_2d: cell (k, m, n) = " + format_key(key) + " carries two frequency offsets");
        }
      }
      for (const auto& [key, mu] : mu_of_cell) {
        if (mu != 0.0) spec.mu.set(key, mu);
      }
      if (nu && *nu != 0.0) spec.nu.set({n}, *nu);
      for (const auto& [k, t] : t_of_row) {
        if (t != 0.0) spec.t.set({n, k}, t);
      }
      t_tables[n] = t_of_row;
    } else {
      out.tiling_strips.push_back(n);
      spec.tiling_strips.insert(n);
      const double tn = fractional_part((*members.front())[0], eps);
      if (tn != 0.0) spec.strip_shift.set({n}, tn);
      std::map<std::int64_t, std::vector<Point>> cells;
      for (const auto* p : members) cells[std::llround((*p)[0] - tn)].push_back({(*p)[2], (*p)[3]});
      const StructuredSet z2 = make_lattice(2);
      for (auto& [m, freqs] : cells) {
        const auto rec = recognize_2d_cube_tiling(freqs, freq_box, eps);
        if (!rec.recognized) {
          throw InvariantViolation("classify_2d: frequencies over cell (" + std::to_string(m) + ", " +
                                   std::to_string(n) + ") do not form a cube tiling");
        }
        const StructuredSet tile = recognized_set(rec, eps);
        if (!same_description(tile, z2)) spec.tile_strips.set({m, n}, tile);
      }
    }
  }
  if (!t_tables.empty()) {
    bool same = true;
    for (const auto& [n, table] : t_tables) same = same && table == t_tables.begin()->second;
    out.t_dependence = same ? "k" : "n,k";
  }
  out.labels.push_back("strip-family");
  if (out.overlap_strips.empty()) out.labels.push_back("standard");
  out.reconstruction = make_2d_theorem(std::move(spec));
  return out;
}

inline constexpr std::array<std::size_t, 4> kSwap = {1, 0, 3, 2};

inline std::vector<Point> mirrored(const std::vector<Point>& pts) {
  std::vector<Point> out;
  for (const auto& p : pts) out.push_back({p[1], p[0], p[3], p[2]});
  return out;
}

}  // namespace detail

/// Fits the two-dimensional classification form: strips along one time axis,
/// each either overlap-type (J) or tiling-type (J').
inline Classification2D classify_2d(const StructuredSet& s, const BoxRegion& box, double eps = kIntegerTolerance) {
  detail::require_tf_dimension(s, 2, "classify_2d");
  const auto points = enumerate(s, box);
  if (points.empty()) throw PreconditionError("classify_2d: no points in the box");
  const OrthoReport ortho = check_orthogonality(points, Window::unit_cube(2), eps);
  if (!ortho.verdict) {
    throw PreconditionError("classify_2d: the system is not orthogonal; witness difference " +
                            detail::format_point(ortho.witness));
  }
  const CoverageReport tiling = check_tiling(points, box, eps);
  if (!tiling.tiles()) {
    throw PreconditionError(std::string("classify_2d: Λ + [0,1)^4 does not tile the window (") +
                            to_string(tiling.verdict) + ")");
  }
  auto common_residue = [&](std::size_t c) -> std::optional<double> {
    const double r = fractional_part(points.front()[c], eps);
    for (const auto& p : points) {
      if (!congruent_mod_one(p[c], r, eps)) return std::nullopt;
    }
    return r;
  };
  const auto h = common_residue(1);
  const auto v = common_residue(0);
  if (!h && !v) {
    Classification2D out;
    out.reason = "neither time coordinate takes values in a single coset of Z";
    out.witness = points.front();
    return out;
  }
  const StripAxis axis = h ? StripAxis::horizontal : StripAxis::vertical;
  const double shift = h ? *h : *v;
  const std::size_t strip_coord = h ? 1 : 0;
  Point anchor(4, 0.0);
  anchor[strip_coord] = shift;
  std::vector<Point> shifted(points);
  for (auto& p : shifted) p[strip_coord] -= shift;
  const BoxRegion shifted_box = box.translated(Point{-anchor[0], -anchor[1], -anchor[2], -anchor[3]});
  Classification2D out;
  if (axis == StripAxis::horizontal) {
    out = detail::classify_horizontal(shifted, shifted_box, eps);
  } else {
    out = detail::classify_horizontal(detail::mirrored(shifted), shifted_box.select(detail::kSwap), eps);
    if (!out.classified) return out;
    auto spec = out.reconstruction->as<TwoDTheoremSpec>();
    spec.axis = StripAxis::vertical;
    out.reconstruction = make_2d_theorem(std::move(spec));
  }
  out.axis = axis;
  out.degenerate = h && v;
  out.anchor = anchor;
  if (!out.classified) return out;
  std::vector<Point> rebuilt = enumerate(*out.reconstruction, shifted_box);
  for (auto& p : rebuilt) p[strip_coord] += shift;
  Point diff;
  if (!detail::same_points(rebuilt, points, eps, &diff)) {
    // only possible for window data that are incomplete near the edge
    out.classified = false;
    out.reconstruction.reset();
    out.labels.clear();
    out.witness = diff;
    out.reason = "the window data do not fit the two-dimensional family; first difference at " +
                 detail::format_point(diff);
  }
  return out;
}

// ---------------------------------------------------------------- pseudo-standard

struct PseudoStructure {
  bool pseudo_standard = false;
  std::size_t m = 1, n = 1;
  CoverageReport projection_tiling;
  std::optional<StructuredSet> base;  // Explicit Π₁(Λ) on the window
  IndexedTable<StructuredSet> children;  // Explicit Λ(C), keyed by the cell of the base point
  IntKey failing_child;
  std::string reason;
};

/// Checks whether Π₁(Λ) + [0,1)^{2m} tiles and, if so, extracts the
/// pseudo-standard decomposition and verifies every child.
inline PseudoStructure check_pseudo_structure(const StructuredSet& s, std::size_t m, const BoxRegion& box,
                                              double eps = kIntegerTolerance) {
  const std::size_t d = s.ambient() / 2;
  if (m < 1 || m >= d) throw DomainError("check_pseudo_structure: need 1 <= m < d");
  const auto points = enumerate(s, box);
  const Window w = Window::unit_cube(static_cast<int>(d));
  const OrthoReport ortho = check_orthogonality(points, w, eps);
  const CoverageReport tiling = check_tiling(points, box, eps);
  if (!ortho.verdict || !tiling.tiles()) {
    throw PreconditionError("check_pseudo_structure: the input is not an orthonormal basis on the window");
  }
  PseudoStructure out;
  out.m = m;
  out.n = d - m;
  const auto base_coords = detail::projection_coords(d, m);
  const auto child_coords = detail::complement_coords(d, m);
  const BoxRegion base_box = box.select(base_coords);
  const BoxRegion child_box = box.select(child_coords);
  const auto projected = project_tf(points, m, eps);
  out.projection_tiling = check_tiling(projected, base_box, eps);
  if (!out.projection_tiling.tiles()) {
    out.reason = std::string("the time-frequency projection does not tile (") +
                 to_string(out.projection_tiling.verdict) + ")";
    return out;
  }
  out.base = make_explicit(2 * m, projected);
  const Window child_window = Window::unit_cube(static_cast<int>(out.n));
  for (const auto& b : projected) {
    const IntKey key = cell_key(b, eps);
    auto child = restrict_tf(points, m, b, eps);
    const bool ok = check_orthogonality(child, child_window, eps).verdict && check_tiling(child, child_box, eps).tiles();
    if (!ok) {
      out.failing_child = key;
      out.reason = "child over " + format_key(key) + " is not an orthonormal basis";
      out.children = {};
      out.base.reset();
      return out;
    }
    out.children.set(key, make_explicit(2 * out.n, std::move(child)));
  }
  const StructuredSet rebuilt = make_pseudo_standard(static_cast<int>(m), static_cast<int>(out.n), *out.base, out.children);
  Point diff;
  if (!detail::same_points(enumerate(rebuilt, box), points, eps, &diff)) {
    throw InvariantViolation("check_pseudo_structure: decomposition differs from the input at " +
                             detail::format_point(diff));
  }
  out.pseudo_standard = true;
  return out;
}

}  // namespace gabor_cube

#endif  // GABOR_CUBE_CLASSIFY_HPP
