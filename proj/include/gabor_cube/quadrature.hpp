#ifndef GABOR_CUBE_QUADRATURE_HPP
#define GABOR_CUBE_QUADRATURE_HPP

#include <algorithm>
#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace gabor_cube {

using Complex = std::complex<double>;

struct QuadResult {
  Complex value{};
  double abs_error = 0.0;  // estimated
  std::size_t intervals = 0;
};

namespace detail {

// 15-point Kronrod abscissae on [-1, 1] (non-negative half, descending);
// odd indices are the 7-point Gauss nodes.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b;
  Complex value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gauss_kronrod_15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const Complex fc = f(c);
  Complex kronrod = fc * kKronrodWeights[7];
  Complex gauss = fc * kGaussWeights[3];
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = h * kKronrodNodes[i];
    const Complex sum = f(c - dx) + f(c + dx);
    kronrod += sum * kKronrodWeights[i];
    if (i % 2 == 1) gauss += sum * kGaussWeights[i / 2];
  }
  return {a, b, kronrod * h, std::abs((kronrod - gauss) * h)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) integration of a complex integrand
/// over [a, b]. Bisects the segment with the largest error estimate until the
/// summed estimate is at most `tol`. Throws NumericError once `max_intervals`
/// segments are in play without convergence.
template <class F>
QuadResult integrate_adaptive(const F& f, double a, double b, double tol,
                              std::size_t max_intervals = 4000) {
  if (!(tol > 0.0)) throw DomainError("integrate_adaptive: tol must be positive");
  if (b == a) return {};
  if (b < a) {
    QuadResult r = integrate_adaptive(f, b, a, tol, max_intervals);
    r.value = -r.value;
    return r;
  }
  std::priority_queue<detail::Segment> heap;
  heap.push(detail::gauss_kronrod_15(f, a, b));
  Complex total = heap.top().value;
  double error = heap.top().error;
  while (error > tol) {
    if (heap.size() >= max_intervals) {
      throw NumericError("adaptive quadrature did not converge: estimated error " +
                             std::to_string(error) + " > tol " + std::to_string(tol),
                         error);
    }
    const detail::Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      throw NumericError("adaptive quadrature: segment below double resolution", error);
    }
    const auto left = detail::gauss_kronrod_15(f, worst.a, mid);
    const auto right = detail::gauss_kronrod_15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Recompute from the segments; the running sums drift.
  Complex value{};
  double err = 0.0;
  std::vector<detail::Segment> segs;
  segs.reserve(heap.size());
  while (!heap.empty()) {
    segs.push_back(heap.top());
    heap.pop();
  }
  std::sort(segs.begin(), segs.end(),
            [](const detail::Segment& l, const detail::Segment& r) { return l.a < r.a; });
  for (const auto& s : segs) {
    value += s.value;
    err += s.error;
  }
  return {value, err, segs.size()};
}

/// Iterated adaptive integration over the box [lo, hi] (same length vectors).
/// The innermost coordinate is the last one. Inner tolerances are scaled so the
/// total estimated error stays below `tol`.
inline QuadResult integrate_box(const std::function<Complex(std::span<const double>)>& f,
                                std::span<const double> lo, std::span<const double> hi,
                                double tol) {
  if (lo.size() != hi.size() || lo.empty()) {
    throw DomainError("integrate_box: bounds must be non-empty and of equal length");
  }
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (hi[i] <= lo[i]) return {};
  }
  std::vector<double> x(lo.size());
  std::size_t total_intervals = 0;
  std::function<QuadResult(std::size_t, double)> level = [&](std::size_t dim,
                                                             double level_tol) -> QuadResult {
    if (dim + 1 == lo.size()) {
      auto r = integrate_adaptive(
          [&](double xi) {
            x[dim] = xi;
            return f(x);
          },
          lo[dim], hi[dim], level_tol);
      total_intervals += r.intervals;
      return r;
    }
    const double length = hi[dim] - lo[dim];
    const double inner_tol = 0.5 * level_tol / length;
    double inner_error = 0.0;
    auto r = integrate_adaptive(
        [&](double xi) {
          x[dim] = xi;
          const QuadResult inner = level(dim + 1, inner_tol);
          x[dim] = xi;
          inner_error = std::max(inner_error, inner.abs_error);
          return inner.value;
        },
        lo[dim], hi[dim], 0.5 * level_tol);
    r.abs_error += length * inner_error;
    return r;
  };
  QuadResult out = level(0, tol);
  out.intervals = total_intervals;
  return out;
}

}  // namespace gabor_cube

#endif  // GABOR_CUBE_QUADRATURE_HPP
