#ifndef GABOR_CUBE_ORTHO_HPP
#define GABOR_CUBE_ORTHO_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "geometry.hpp"
#include "parallel.hpp"
#include "sets.hpp"
#include "stft.hpp"
#include "tolerance.hpp"

namespace gabor_cube {

struct OrthoViolation {
  Point p, q;
  Point difference;      // q − p, time block then frequency block
  double inner_product;  // |⟨π(p)g, π(q)g⟩| by quadrature
};

struct OrthoReport {
  bool verdict = true;
  std::vector<OrthoViolation> violations;  // lexicographically smallest (p, q) first
  /// Shortest violating difference over all pairs (see shorter_difference).
  Point witness;
  std::size_t points = 0;
  std::size_t pairs_tested = 0;  // pairs not pruned by support disjointness
  bool truncated = false;        // more violations than reported
};

inline constexpr double kDefaultQuadratureTolerance = 1e-10;
inline constexpr std::size_t kMaxReportedViolations = 100;

/// |⟨π(p)g, π(q)g⟩| = |V_g g(q_t − p_t, q_λ − p_λ)|, evaluated by quadrature.
inline double verify_pair_quadrature(std::span<const double> p, std::span<const double> q, const Window& w,
                                     double tol = kDefaultQuadratureTolerance) {
  const auto d = static_cast<std::size_t>(w.dimension());
  if (p.size() != 2 * d || q.size() != 2 * d) {
    throw DomainError("verify_pair_quadrature: points must have 2d = " + std::to_string(2 * d) + " coordinates");
  }
  std::vector<double> dt(d), dl(d);
  for (std::size_t i = 0; i < d; ++i) {
    dt[i] = q[i] - p[i];
    dl[i] = q[d + i] - p[d + i];
  }
  return std::abs(stft_quadrature(w, dt, dl, tol).value);
}

/// Order on differences: max norm, then absolute values lexicographically,
/// then non-negative entries before negative ones.
inline bool shorter_difference(std::span<const double> a, std::span<const double> b) {
  double na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    na = std::max(na, std::abs(a[i]));
    nb = std::max(nb, std::abs(b[i]));
  }
  if (na != nb) return na < nb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i]) != std::abs(b[i])) return std::abs(a[i]) < std::abs(b[i]);
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] < 0) != (b[i] < 0)) return b[i] < 0;
  }
  return false;
}

namespace detail {
struct PairScan {
  std::vector<std::pair<std::size_t, std::size_t>> bad;
  std::size_t tested = 0;
  bool overflow = false;
  Point shortest;
};
}  // namespace detail

/// Every pair of distinct points must differ by a zero of V_g g. `points`
/// are time-frequency points of R^{2d}.
inline OrthoReport check_orthogonality(std::vector<Point> points, const Window& w,
                                       double eps = kIntegerTolerance,
                                       double quad_tol = kDefaultQuadratureTolerance) {
  const auto d = static_cast<std::size_t>(w.dimension());
  for (const auto& p : points) {
    if (p.size() != 2 * d) throw DomainError("check_orthogonality: point dimension does not match the window");
  }
  sort_points(points);
  const bool cube = w.is_cube();
  const std::size_t n = points.size();
  std::vector<detail::PairScan> scans(std::min<std::size_t>(64, std::max<std::size_t>(1, n)));
  parallel_chunks(n, scans.size(), [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    auto& scan = scans[chunk];
    std::vector<double> t(d), l(d);
    Point diff(2 * d);
    for (std::size_t i = begin; i < end; ++i) {
      const Point& p = points[i];
      for (std::size_t j = i + 1; j < n; ++j) {
        const Point& q = points[j];
        if (cube && q[0] - p[0] >= 1.0 - eps) break;
        bool disjoint = false;
        for (std::size_t c = 0; c < d; ++c) {
          t[c] = q[c] - p[c];
          l[c] = q[d + c] - p[d + c];
          disjoint = disjoint || (cube && std::abs(t[c]) >= 1.0 - eps);
        }
        if (disjoint) continue;
        ++scan.tested;
        if (!in_zero_set(w, t, l, eps)) {
          if (scan.bad.size() < kMaxReportedViolations) {
            scan.bad.emplace_back(i, j);
          } else {
            scan.overflow = true;
          }
          std::copy(t.begin(), t.end(), diff.begin());
          std::copy(l.begin(), l.end(), diff.begin() + static_cast<std::ptrdiff_t>(d));
          if (scan.shortest.empty() || shorter_difference(diff, scan.shortest)) scan.shortest = diff;
        }
      }
    }
  });
  OrthoReport r;
  r.points = n;
  for (const auto& scan : scans) {
    r.pairs_tested += scan.tested;
    if (!scan.shortest.empty() && (r.witness.empty() || shorter_difference(scan.shortest, r.witness))) {
      r.witness = scan.shortest;
    }
    if (r.truncated) continue;
    for (const auto& [i, j] : scan.bad) {
      if (r.violations.size() >= kMaxReportedViolations) {
        r.truncated = true;
        break;
      }
      OrthoViolation v{points[i], points[j], Point(2 * d), 0.0};
      for (std::size_t c = 0; c < 2 * d; ++c) v.difference[c] = points[j][c] - points[i][c];
      r.violations.push_back(std::move(v));
    }
    r.truncated = r.truncated || scan.overflow;
  }
  for (auto& v : r.violations) v.inner_product = verify_pair_quadrature(v.p, v.q, w, quad_tol);
  r.verdict = r.violations.empty();
  return r;
}

inline OrthoReport check_orthogonality(const StructuredSet& s, const Window& w, const BoxRegion& box,
                                       double eps = kIntegerTolerance,
                                       double quad_tol = kDefaultQuadratureTolerance) {
  if (s.ambient() != 2 * static_cast<std::size_t>(w.dimension())) {
    throw DomainError("check_orthogonality: window " + w.name() + " does not match a set in R^" +
                      std::to_string(s.ambient()));
  }
  return check_orthogonality(enumerate(s, box), w, eps, quad_tol);
}

}  // namespace gabor_cube

#endif  // GABOR_CUBE_ORTHO_HPP
