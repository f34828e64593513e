#ifndef GABOR_CUBE_SETS_HPP
#define GABOR_CUBE_SETS_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "geometry.hpp"
#include "indexed.hpp"
#include "tolerance.hpp"

namespace gabor_cube {

enum class SetKind { explicit_points, lattice, cube_tiling_2d, standard, pseudo_standard, two_d_theorem };

/// rows:    ⋃_k (Z + a_k) × {k}
/// columns: ⋃_k {k} × (Z + a_k)
enum class TilingAxis { rows, columns };

/// horizontal: time strips R × [n, n+1) (first displayed form of the 2D
/// classification); vertical: its coordinate mirror.
enum class StripAxis { horizontal, vertical };

/// overlap strips carry the index set J, tiling strips J'.
enum class StripType { overlap, tiling };

inline const char* to_string(SetKind k) {
  switch (k) {
    case SetKind::explicit_points: return "explicit";
    case SetKind::lattice: return "lattice";
    case SetKind::cube_tiling_2d: return "cube_tiling_2d";
    case SetKind::standard: return "standard";
    case SetKind::pseudo_standard: return "pseudo_standard";
    case SetKind::two_d_theorem: return "two_d_theorem";
  }
  return "?";
}
inline const char* to_string(TilingAxis a) { return a == TilingAxis::rows ? "rows" : "columns"; }
inline const char* to_string(StripAxis a) { return a == StripAxis::horizontal ? "horizontal" : "vertical"; }
inline const char* to_string(StripType t) { return t == StripType::overlap ? "overlap" : "tiling"; }

namespace detail {
struct SetNode;
}

/// Immutable finite description of a (possibly infinite) discrete set in R^n.
/// Cheap to copy; sub-sets are shared.
class StructuredSet {
 public:
  SetKind kind() const;
  /// Number of coordinates n of the ambient space.
  std::size_t ambient() const;

  template <class Spec>
  const Spec& as() const;

  const detail::SetNode& node() const { return *node_; }

  explicit StructuredSet(std::shared_ptr<const detail::SetNode> node) : node_(std::move(node)) {}

 private:
  std::shared_ptr<const detail::SetNode> node_;
};

struct ExplicitSpec {
  std::size_t ambient = 0;
  std::vector<Point> points;
};

/// Z^n + offset.
struct LatticeSpec {
  std::vector<double> offset;
};

/// Translational tiling of R² by unit squares in one of the two forms
/// (rows/columns), translated by `shift`.
struct CubeTiling2DSpec {
  TilingAxis axis = TilingAxis::rows;
  IndexedParam offsets{1};
  std::array<double, 2> shift{0.0, 0.0};
};

/// ⋃_{t∈J} {t} × Λ_t. Spectra are keyed by the integer cell of t.
struct StandardSpec {
  int d = 1;
  std::shared_ptr<const StructuredSet> time_set;
  IndexedTable<StructuredSet> spectra;
};

/// ⋃_{(s,λ)∈Λ1} {(s,t,λ,ν) : (t,ν) ∈ Λ_{(s,λ)}}. Children are keyed by the
/// integer cell of (s,λ).
struct PseudoStandardSpec {
  int m = 1;
  int n = 1;
  std::shared_ptr<const StructuredSet> base;
  IndexedTable<StructuredSet> children;
};

/// The two-dimensional family: strips n ∈ J carry
///   {(m + t_{n,k}, n, j + μ_{k,m,n}, k + ν_n)},
/// strips n ∈ J' carry {(m + t_n, n)} × Λ_{m,n}. The vertical axis is the
/// mirror (t1,t2,λ1,λ2) ↦ (t2,t1,λ2,λ1) of the same tables.
struct TwoDTheoremSpec {
  StripAxis axis = StripAxis::horizontal;
  std::set<std::int64_t> overlap_strips;  // J
  std::set<std::int64_t> tiling_strips;   // J'
  StripType default_membership = StripType::tiling;
  IndexedParam t{2};            // keyed (n, k)
  IndexedParam mu{3};           // keyed (k, m, n)
  IndexedParam nu{1};           // keyed (n)
  IndexedParam strip_shift{1};  // t_n for tiling strips, keyed (n)
  IndexedTable<StructuredSet> tile_strips;  // Λ_{m,n}, keyed (m, n); default Z²

  StripType membership(std::int64_t n) const {
    if (overlap_strips.contains(n)) return StripType::overlap;
    if (tiling_strips.contains(n)) return StripType::tiling;
    return default_membership;
  }
};

namespace detail {
struct SetNode {
  std::size_t ambient = 0;
  std::variant<ExplicitSpec, LatticeSpec, CubeTiling2DSpec, StandardSpec, PseudoStandardSpec,
               TwoDTheoremSpec>
      spec;
};
}  // namespace detail

namespace detail {
inline StructuredSet make_node(SetNode node) {
  return StructuredSet(std::make_shared<const SetNode>(std::move(node)));
}
}  // namespace detail

inline SetKind StructuredSet::kind() const { return static_cast<SetKind>(node_->spec.index()); }
inline std::size_t StructuredSet::ambient() const { return node_->ambient; }

template <class Spec>
const Spec& StructuredSet::as() const {
  const Spec* s = std::get_if<Spec>(&node_->spec);
  if (!s) throw DomainError(std::string("structured set is of kind ") + to_string(kind()));
  return *s;
}

// ---------------------------------------------------------------- constructors

inline StructuredSet make_explicit(std::size_t ambient, std::vector<Point> points) {
  if (ambient == 0) throw DomainError("explicit set needs ambient dimension >= 1");
  for (const auto& p : points) {
    if (p.size() != ambient) {
      throw DomainError("explicit point has " + std::to_string(p.size()) +
                        " coordinates, expected " + std::to_string(ambient));
    }
    for (double c : p) {
      if (!std::isfinite(c)) throw DomainError("explicit point has a non-finite coordinate");
    }
  }
  sort_points(points);
  return detail::make_node({ambient, ExplicitSpec{ambient, std::move(points)}});
}

inline StructuredSet make_lattice(std::vector<double> offset) {
  if (offset.empty()) throw DomainError("lattice needs dimension >= 1");
  for (double c : offset) {
    if (!std::isfinite(c)) throw DomainError("lattice offset must be finite");
    if (c < 0.0 || c >= 1.0) throw ConstructionError("lattice offset entries must lie in [0,1)");
  }
  const std::size_t n = offset.size();
  return detail::make_node({n, LatticeSpec{std::move(offset)}});
}

/// Z^n.
inline StructuredSet make_lattice(std::size_t n) { return make_lattice(std::vector<double>(n, 0.0)); }

inline StructuredSet make_cube_tiling_2d(TilingAxis axis, IndexedParam offsets,
                                         std::array<double, 2> shift = {0.0, 0.0}) {
  if (offsets.arity() != 1 || offsets.range_lo() != 0.0 || offsets.range_hi() != 1.0) {
    throw ConstructionError("cube tiling offsets must be a unary table with values in [0,1)");
  }
  if (!std::isfinite(shift[0]) || !std::isfinite(shift[1])) {
    throw ConstructionError("cube tiling shift must be finite");
  }
  return detail::make_node({2, CubeTiling2DSpec{axis, std::move(offsets), shift}});
}

inline StructuredSet make_standard(int d, const StructuredSet& time_set,
                                   IndexedTable<StructuredSet> spectra) {
  if (d < 1) throw DomainError("standard set needs d >= 1");
  const auto ud = static_cast<std::size_t>(d);
  if (time_set.ambient() != ud) {
    throw DomainError("standard set: time set lives in R^" + std::to_string(time_set.ambient()) +
                      ", expected R^" + std::to_string(d));
  }
  for (const auto& [key, s] : spectra.table()) {
    if (key.size() != ud) throw DomainError("standard set: spectrum key " + format_key(key) + " has wrong arity");
    if (s.ambient() != ud) throw DomainError("standard set: spectrum " + format_key(key) + " has wrong dimension");
  }
  if (spectra.default_value() && spectra.default_value()->ambient() != ud) {
    throw DomainError("standard set: default spectrum has wrong dimension");
  }
  return detail::make_node({2 * ud, StandardSpec{d, std::make_shared<const StructuredSet>(time_set),
                                         std::move(spectra)}});
}

inline StructuredSet make_pseudo_standard(int m, int n, const StructuredSet& base,
                                          IndexedTable<StructuredSet> children) {
  if (m < 1 || n < 1) throw DomainError("pseudo-standard set needs m, n >= 1");
  const auto um = static_cast<std::size_t>(m), un = static_cast<std::size_t>(n);
  if (base.ambient() != 2 * um) {
    throw DomainError("pseudo-standard set: base must live in R^" + std::to_string(2 * m));
  }
  for (const auto& [key, s] : children.table()) {
    if (key.size() != 2 * um) throw DomainError("pseudo-standard set: child key " + format_key(key) + " has wrong arity");
    if (s.ambient() != 2 * un) throw DomainError("pseudo-standard set: child " + format_key(key) + " has wrong dimension");
  }
  if (children.default_value() && children.default_value()->ambient() != 2 * un) {
    throw DomainError("pseudo-standard set: default child has wrong dimension");
  }
  return detail::make_node({2 * (um + un),
                    PseudoStandardSpec{m, n, std::make_shared<const StructuredSet>(base), std::move(children)}});
}

inline StructuredSet make_2d_theorem(TwoDTheoremSpec spec) {
  for (auto n : spec.overlap_strips) {
    if (spec.tiling_strips.contains(n)) {
      throw ConstructionError("strip " + std::to_string(n) + " is listed in both J and J'");
    }
  }
  auto check = [](const IndexedParam& p, std::size_t arity, const char* name) {
    if (p.arity() != arity || p.range_lo() != 0.0 || p.range_hi() != 1.0) {
      throw ConstructionError(std::string("parameter table ") + name + " must have arity " +
                              std::to_string(arity) + " and range [0,1)");
    }
  };
  check(spec.t, 2, "t");
  check(spec.mu, 3, "mu");
  check(spec.nu, 1, "nu");
  check(spec.strip_shift, 1, "strip_shift");
  if (!spec.tile_strips.default_value()) spec.tile_strips.set_default(make_lattice(2));
  for (const auto& [key, s] : spec.tile_strips.table()) {
    if (key.size() != 2) throw ConstructionError("tile strip key " + format_key(key) + " must be (m,n)");
    if (s.ambient() != 2) throw DomainError("tile strip " + format_key(key) + " must be a set in R^2");
  }
  if (spec.tile_strips.default_value()->ambient() != 2) {
    throw DomainError("default tile strip must be a set in R^2");
  }
  return detail::make_node({4, std::move(spec)});
}

// ---------------------------------------------------------------- enumeration

using PointSink = std::function<void(std::span<const double>)>;

namespace detail {

/// Calls fn(k, value) for each integer k with value = k + offset in [lo, hi).
template <class Fn>
void for_each_shifted_integer(double lo, double hi, double offset, Fn&& fn) {
  const auto first = static_cast<std::int64_t>(std::floor(lo - offset)) - 1;
  const auto last = static_cast<std::int64_t>(std::ceil(hi - offset)) + 1;
  for (auto k = first; k <= last; ++k) {
    const double v = static_cast<double>(k) + offset;
    if (v >= lo && v < hi) fn(k, v);
  }
}

inline void require_box(const StructuredSet& s, const BoxRegion& box) {
  if (box.dimension() != s.ambient()) {
    throw DomainError("query box has dimension " + std::to_string(box.dimension()) +
                      " but the set lives in R^" + std::to_string(s.ambient()));
  }
}

void visit_points(const StructuredSet& s, const BoxRegion& box, const PointSink& sink);

inline void visit_lattice(const LatticeSpec& spec, const BoxRegion& box, const PointSink& sink) {
  const std::size_t n = spec.offset.size();
  Point buf(n);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      sink(buf);
      return;
    }
    for_each_shifted_integer(box.lo(i), box.hi(i), spec.offset[i], [&](std::int64_t, double v) {
      buf[i] = v;
      rec(i + 1);
    });
  };
  rec(0);
}

inline void visit_cube_tiling(const CubeTiling2DSpec& spec, const BoxRegion& box,
                              const PointSink& sink) {
  // strip coordinate s, offset coordinate o
  const std::size_t s = spec.axis == TilingAxis::rows ? 1 : 0;
  const std::size_t o = 1 - s;
  Point buf(2);
  for_each_shifted_integer(box.lo(s), box.hi(s), spec.shift[s], [&](std::int64_t k, double sv) {
    buf[s] = sv;
    const double off = spec.offsets.at({k}) + spec.shift[o];
    for_each_shifted_integer(box.lo(o), box.hi(o), off, [&](std::int64_t, double ov) {
      buf[o] = ov;
      sink(buf);
    });
  });
}

inline void visit_standard(const StandardSpec& spec, const BoxRegion& box, const PointSink& sink) {
  const auto d = static_cast<std::size_t>(spec.d);
  const BoxRegion time_box = box.select(coordinate_range(0, d));
  const BoxRegion freq_box = box.select(coordinate_range(d, 2 * d));
  Point buf(2 * d);
  visit_points(*spec.time_set, time_box, [&](std::span<const double> t) {
    const IntKey key = cell_key(t);
    const StructuredSet* spectrum = spec.spectra.find(key);
    if (!spectrum) throw ConstructionError("standard set: no spectrum for time cell " + format_key(key));
    std::copy(t.begin(), t.end(), buf.begin());
    visit_points(*spectrum, freq_box, [&](std::span<const double> lam) {
      std::copy(lam.begin(), lam.end(), buf.begin() + static_cast<std::ptrdiff_t>(d));
      sink(buf);
    });
  });
}

inline void visit_pseudo_standard(const PseudoStandardSpec& spec, const BoxRegion& box,
                                  const PointSink& sink) {
  const auto m = static_cast<std::size_t>(spec.m), n = static_cast<std::size_t>(spec.n);
  const std::size_t d = m + n;
  // (s, t, λ, ν) with s,λ ∈ R^m and t,ν ∈ R^n
  std::vector<std::size_t> base_coords = coordinate_range(0, m);
  for (std::size_t i = d; i < d + m; ++i) base_coords.push_back(i);
  std::vector<std::size_t> child_coords = coordinate_range(m, d);
  for (std::size_t i = d + m; i < 2 * d; ++i) child_coords.push_back(i);
  const BoxRegion base_box = box.select(base_coords);
  const BoxRegion child_box = box.select(child_coords);
  Point buf(2 * d);
  visit_points(*spec.base, base_box, [&](std::span<const double> b) {
    const IntKey key = cell_key(b);
    const StructuredSet* child = spec.children.find(key);
    if (!child) throw ConstructionError("pseudo-standard set: no child for base cell " + format_key(key));
    for (std::size_t i = 0; i < 2 * m; ++i) buf[base_coords[i]] = b[i];
    visit_points(*child, child_box, [&](std::span<const double> c) {
      for (std::size_t i = 0; i < 2 * n; ++i) buf[child_coords[i]] = c[i];
      sink(buf);
    });
  });
}

inline void visit_two_d_horizontal(const TwoDTheoremSpec& spec, const BoxRegion& box,
                                   const PointSink& sink) {
  Point buf(4);
  const BoxRegion freq_box = box.select(std::vector<std::size_t>{2, 3});
  for_each_shifted_integer(box.lo(1), box.hi(1), 0.0, [&](std::int64_t n, double nv) {
    buf[1] = nv;
    if (spec.membership(n) == StripType::overlap) {
      const double nu = spec.nu.at({n});
      for_each_shifted_integer(box.lo(3), box.hi(3), nu, [&](std::int64_t k, double l2) {
        buf[3] = l2;
        const double tk = spec.t.at({n, k});
        for_each_shifted_integer(box.lo(0), box.hi(0), tk, [&](std::int64_t m, double t1) {
          buf[0] = t1;
          const double mu = spec.mu.at({k, m, n});
          for_each_shifted_integer(box.lo(2), box.hi(2), mu, [&](std::int64_t, double l1) {
            buf[2] = l1;
            sink(buf);
          });
        });
      });
    } else {
      const double ts = spec.strip_shift.at({n});
      for_each_shifted_integer(box.lo(0), box.hi(0), ts, [&](std::int64_t m, double t1) {
        buf[0] = t1;
        const StructuredSet* tile = spec.tile_strips.find({m, n});
        visit_points(*tile, freq_box, [&](std::span<const double> lam) {
          buf[2] = lam[0];
          buf[3] = lam[1];
          sink(buf);
        });
      });
    }
  });
}

/// (t1, t2, λ1, λ2) -> (t2, t1, λ2, λ1)
inline constexpr std::array<std::size_t, 4> kMirror4 = {1, 0, 3, 2};

inline void visit_two_d(const TwoDTheoremSpec& spec, const BoxRegion& box, const PointSink& sink) {
  if (spec.axis == StripAxis::horizontal) {
    visit_two_d_horizontal(spec, box, sink);
    return;
  }
  const BoxRegion mirrored = box.select(kMirror4);
  Point buf(4);
  visit_two_d_horizontal(spec, mirrored, [&](std::span<const double> p) {
    for (std::size_t i = 0; i < 4; ++i) buf[i] = p[kMirror4[i]];
    sink(buf);
  });
}

inline void visit_points(const StructuredSet& s, const BoxRegion& box, const PointSink& sink) {
  require_box(s, box);
  std::visit(
      [&](const auto& spec) {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, ExplicitSpec>) {
          for (const auto& p : spec.points) {
            if (box.contains(p)) sink(p);
          }
        } else if constexpr (std::is_same_v<T, LatticeSpec>) {
          visit_lattice(spec, box, sink);
        } else if constexpr (std::is_same_v<T, CubeTiling2DSpec>) {
          visit_cube_tiling(spec, box, sink);
        } else if constexpr (std::is_same_v<T, StandardSpec>) {
          visit_standard(spec, box, sink);
        } else if constexpr (std::is_same_v<T, PseudoStandardSpec>) {
          visit_pseudo_standard(spec, box, sink);
        } else {
          visit_two_d(spec, box, sink);
        }
      },
      s.node().spec);
}

}  // namespace detail

/// Streams the points of S inside the half-open box, in generation order.
inline void for_each_point(const StructuredSet& s, const BoxRegion& box, const PointSink& sink) {
  detail::visit_points(s, box, sink);
}

/// The points of S inside the half-open box, sorted lexicographically.
inline std::vector<Point> enumerate(const StructuredSet& s, const BoxRegion& box) {
  std::vector<Point> out;
  detail::visit_points(s, box, [&](std::span<const double> p) { out.emplace_back(p.begin(), p.end()); });
  sort_points(out);
  return out;
}

/// Pairwise differences p - q (p ≠ q) of the enumerated points, deduplicated
/// to eps.
inline std::vector<Point> difference_samples(const std::vector<Point>& points,
                                             double eps = kIntegerTolerance) {
  std::vector<Point> diffs;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (i == j) continue;
      Point d(points[i].size());
      for (std::size_t c = 0; c < d.size(); ++c) d[c] = points[i][c] - points[j][c];
      diffs.push_back(std::move(d));
    }
  }
  sort_dedupe(diffs, eps);
  return diffs;
}

inline std::vector<Point> difference_samples(const StructuredSet& s, const BoxRegion& box,
                                             double eps = kIntegerTolerance) {
  return difference_samples(enumerate(s, box), eps);
}

}  // namespace gabor_cube

#endif  // GABOR_CUBE_SETS_HPP
