#ifndef GABOR_CUBE_GENERATORS_HPP
#define GABOR_CUBE_GENERATORS_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "geometry.hpp"
#include "indexed.hpp"
#include "sets.hpp"
#include "stft.hpp"
#include "tiling.hpp"

namespace gabor_cube {

// Seeded random parameter draws for sweeps and round-trip tests. All offsets
// are multiples of 1/denominator in [0,1).

using Rng = std::mt19937_64;

inline double random_offset(Rng& rng, int denominator = 64) {
  return static_cast<double>(std::uniform_int_distribution<int>(0, denominator - 1)(rng)) / denominator;
}

inline bool coin(Rng& rng) { return std::uniform_int_distribution<int>(0, 1)(rng) == 1; }

/// Unary offset table over lo..hi with at least one non-zero entry.
inline IndexedParam random_offsets(Rng& rng, std::int64_t lo, std::int64_t hi, int denominator = 64) {
  IndexedParam p(1);
  bool any = false;
  for (auto k = lo; k <= hi; ++k) {
    const double a = random_offset(rng, denominator);
    if (a != 0.0) {
      p.set({k}, a);
      any = true;
    }
  }
  if (!any) p.set({lo}, 0.5);
  return p;
}

/// A random rows/columns cube tiling of R² with offsets on strips |k| ≤ strips.
inline StructuredSet random_cube_tiling_2d(Rng& rng, std::int64_t strips = 6, int denominator = 64) {
  const TilingAxis axis = coin(rng) ? TilingAxis::rows : TilingAxis::columns;
  return make_cube_tiling_2d(axis, random_offsets(rng, -strips, strips, denominator));
}

/// Deletes one point or shifts one coordinate of one point by 0.25; the
/// affected cube sits inside the interior-safe region of `box`.
inline std::vector<Point> perturb_tiling(std::vector<Point> points, const BoxRegion& box, Rng& rng) {
  std::vector<std::size_t> inner;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool ok = true;
    for (std::size_t c = 0; c < box.dimension() && ok; ++c) {
      ok = points[i][c] >= box.lo(c) + 1.0 && points[i][c] <= box.hi(c) - 2.0;
    }
    if (ok) inner.push_back(i);
  }
  if (inner.empty()) throw DomainError("perturb_tiling: box too small");
  const std::size_t victim = inner[std::uniform_int_distribution<std::size_t>(0, inner.size() - 1)(rng)];
  if (coin(rng)) {
    points.erase(points.begin() + static_cast<std::ptrdiff_t>(victim));
  } else {
    const auto c = std::uniform_int_distribution<std::size_t>(0, box.dimension() - 1)(rng);
    points[victim][c] += coin(rng) ? 0.25 : -0.25;
  }
  return points;
}

/// Standard set in R² over J = Z + c with spectra Z + b_k on the time cells
/// lo..hi.
inline StructuredSet random_standard_1d(Rng& rng, std::int64_t lo = -3, std::int64_t hi = 2, int denominator = 64) {
  const double c = random_offset(rng, denominator);
  IndexedTable<StructuredSet> spectra(make_lattice(1));
  for (auto k = lo; k <= hi; ++k) {
    const double b = random_offset(rng, denominator);
    if (b != 0.0) spectra.set({k}, make_lattice(std::vector<double>{b}));
  }
  return make_standard(1, make_lattice(std::vector<double>{c}), std::move(spectra));
}

/// Two-dimensional family with every table entry inside lo..hi, at least one
/// overlap strip, and at least two time offsets in each overlap strip.
inline StructuredSet random_theorem_2d(Rng& rng, std::int64_t lo = -3, std::int64_t hi = 2, int denominator = 64) {
  TwoDTheoremSpec spec;
  spec.axis = coin(rng) ? StripAxis::horizontal : StripAxis::vertical;
  const auto forced = std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  for (auto n = lo; n <= hi; ++n) {
    if (n == forced || coin(rng)) {
      spec.overlap_strips.insert(n);
      for (auto k = lo; k <= hi; ++k) {
        double t = random_offset(rng, denominator);
        if (k == lo + 1 && t == spec.t.at({n, lo})) t = std::fmod(t + 0.5, 1.0);
        if (t != 0.0) spec.t.set({n, k}, t);
        for (auto m = lo; m <= hi; ++m) {
          const double mu = random_offset(rng, denominator);
          if (mu != 0.0) spec.mu.set({k, m, n}, mu);
        }
      }
      const double nu = random_offset(rng, denominator);
      if (nu != 0.0) spec.nu.set({n}, nu);
    } else {
      spec.tiling_strips.insert(n);
      const double shift = random_offset(rng, denominator);
      if (shift != 0.0) spec.strip_shift.set({n}, shift);
      for (auto m = lo; m <= hi; ++m) {
        if (coin(rng)) continue;  // Z²
        const TilingAxis axis = coin(rng) ? TilingAxis::rows : TilingAxis::columns;
        spec.tile_strips.set({m, n}, make_cube_tiling_2d(axis, random_offsets(rng, lo, hi, denominator)));
      }
    }
  }
  return make_2d_theorem(std::move(spec));
}

// ---------------------------------------------------------------- sweeps

/// Distance-like separation of (t, ν) from the zero variety of the 1D cube
/// STFT: the boundary |t| = 1 and the curves ν(1 − |t|) = n ≠ 0
/// (linearized).
inline double zero_variety_distance(double t, double nu) {
  const double s = 1.0 - std::abs(t);
  if (s <= 0.0) return -s;
  const double f = nu * s;
  double d = s;
  const double n = std::round(f);
  for (double cand : {n - 1.0, n, n + 1.0}) {
    if (cand == 0.0) continue;
    d = std::min(d, std::abs(f - cand) / std::hypot(nu, s));
  }
  return d;
}

struct StftSweepResult {
  std::size_t samples = 0;
  double max_error = 0.0;
  std::size_t value_failures = 0;  // |closed − quadrature| > 1e-8
  std::size_t zero_set_disagreements = 0;
};

/// Closed form against quadrature on random (t, ν) ∈ [−2,2] × [−20,20] at
/// separation ≥ 1e-4 from the zero variety.
inline StftSweepResult stft_sweep(std::size_t count, std::uint64_t seed, double tol = 1e-10) {
  Rng rng(seed);
  std::uniform_real_distribution<double> ut(-2.0, 2.0), un(-20.0, 20.0);
  const Window w = Window::unit_cube(1);
  StftSweepResult r;
  while (r.samples < count) {
    const double t = ut(rng), nu = un(rng);
    if (zero_variety_distance(t, nu) < 1e-4) continue;
    ++r.samples;
    const Complex closed = stft_1d(t, nu);
    const Complex quad = stft_quadrature(w, t, nu, tol).value;
    const double err = std::abs(closed - quad);
    r.max_error = std::max(r.max_error, err);
    if (err > 1e-8) ++r.value_failures;
    if (in_zero_set(w, t, nu) != (std::abs(quad) <= 1e-8)) ++r.zero_set_disagreements;
  }
  return r;
}

struct TilingSweepResult {
  std::size_t families = 0;
  std::size_t perturbations = 0;
  std::size_t sweep_failures = 0;   // exact sweep wrong on a family or perturbation
  std::size_t oracle_failures = 0;  // grid oracle wrong
  std::size_t disagreements = 0;    // sweep and oracle differ
};

/// Random rows/columns families must tile; random single-point perturbations
/// must not. Both detectors are run on every case.
inline TilingSweepResult tiling_sweep(std::size_t count, std::uint64_t seed, double radius = 4.0,
                                      double resolution = 1.0 / 64.0) {
  Rng rng(seed);
  const BoxRegion box = BoxRegion::centered(2, radius);
  TilingSweepResult r;
  for (std::size_t i = 0; i < count; ++i) {
    const auto points = enumerate(random_cube_tiling_2d(rng), box);
    const bool sweep = check_tiling(points, box).tiles();
    const bool oracle = oracle_tiles(points, box, resolution);
    ++r.families;
    r.sweep_failures += sweep ? 0 : 1;
    r.oracle_failures += oracle ? 0 : 1;
    r.disagreements += sweep == oracle ? 0 : 1;
    const auto bad = perturb_tiling(points, box, rng);
    const bool bad_sweep = check_tiling(bad, box).tiles();
    const bool bad_oracle = oracle_tiles(bad, box, resolution);
    ++r.perturbations;
    r.sweep_failures += bad_sweep ? 1 : 0;
    r.oracle_failures += bad_oracle ? 1 : 0;
    r.disagreements += bad_sweep == bad_oracle ? 0 : 1;
  }
  return r;
}

}  // namespace gabor_cube

#endif  // GABOR_CUBE_GENERATORS_HPP
