#ifndef GABOR_CUBE_FRAME_HPP
#define GABOR_CUBE_FRAME_HPP

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <span>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "geometry.hpp"
#include "ortho.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "sets.hpp"
#include "stft.hpp"
#include "tiling.hpp"

namespace gabor_cube {

/// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  void add(const CompensatedSum& o) {
    add(o.sum_);
    add(o.carry_);
  }
  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// Real test function f for Parseval sums: the indicator of a box, or a
/// separable Gaussian exp(−|x−c|²/(2w²)) cut off at |x_i − c_i| ≤ r·w.
class TestFunction {
 public:
  enum class Kind { cube_indicator, gaussian_like };

  static TestFunction cube_indicator(std::vector<double> lo, std::vector<double> hi) {
    TestFunction f(Kind::cube_indicator, BoxRegion(lo, hi));
    std::ostringstream id;
    id << "chi";
    for (std::size_t i = 0; i < lo.size(); ++i) id << (i ? "x" : "") << "[" << lo[i] << "," << hi[i] << "]";
    f.id_ = id.str();
    f.norm2_ = f.support_.volume();
    return f;
  }

  /// χ_[lo,hi]^d.
  static TestFunction cube_indicator(std::size_t d, double lo, double hi) {
    return cube_indicator(std::vector<double>(d, lo), std::vector<double>(d, hi));
  }

  static TestFunction gaussian_like(std::vector<double> center, double width, double radius) {
    if (!(width > 0.0) || !(radius > 0.0)) throw DomainError("gaussian test function needs width, radius > 0");
    std::vector<double> lo(center), hi(center);
    for (std::size_t i = 0; i < center.size(); ++i) {
      lo[i] -= radius * width;
      hi[i] += radius * width;
    }
    TestFunction f(Kind::gaussian_like, BoxRegion(lo, hi));
    f.center_ = std::move(center);
    f.width_ = width;
    std::ostringstream id;
    id << "gaussian(c=" << f.center_[0] << ",w=" << width << ",r=" << radius << ")";
    f.id_ = id.str();
    // ∫_{-rw}^{rw} e^{-x²/w²} dx = w √π erf(r) per coordinate
    f.norm2_ = std::pow(width * std::sqrt(std::numbers::pi) * std::erf(radius),
                        static_cast<double>(f.center_.size()));
    return f;
  }

  Kind kind() const noexcept { return kind_; }
  std::size_t dimension() const noexcept { return support_.dimension(); }
  const std::string& id() const noexcept { return id_; }
  double norm2() const noexcept { return norm2_; }
  /// Closed support box.
  const BoxRegion& support() const noexcept { return support_; }

  /// ⟨f, e^{2πi⟨λ,·⟩} χ_[0,1]^d(· − t)⟩.
  Complex coefficient(std::span<const double> t, std::span<const double> lambda,
                      double tol = kDefaultQuadratureTolerance) const {
    Complex c{1.0, 0.0};
    for (std::size_t i = 0; i < t.size() && c != Complex{}; ++i) c *= factor(i, t[i], lambda[i], tol);
    return c;
  }

 private:
  TestFunction(Kind kind, BoxRegion support) : kind_(kind), support_(std::move(support)) {}

  Complex factor(std::size_t i, double t, double lambda, double tol) const {
    const double a = std::max(support_.lo(i), t);
    const double b = std::min(support_.hi(i), t + 1.0);
    if (!(b > a)) return {};
    if (kind_ == Kind::cube_indicator) return interval_exponential_integral(a, b, lambda);
    const auto key = std::make_tuple(i, t, lambda);
    {
      std::lock_guard lock(cache_->mutex);
      if (auto it = cache_->values.find(key); it != cache_->values.end()) return it->second;
    }
    const double c = center_[i], w = width_;
    const double omega = 2.0 * std::numbers::pi * lambda;
    const Complex v = integrate_adaptive(
                          [&](double x) {
                            const double u = (x - c) / w;
                            return std::polar(std::exp(-0.5 * u * u), -omega * x);
                          },
                          a, b, tol, 20000)
                          .value;
    std::lock_guard lock(cache_->mutex);
    cache_->values.emplace(key, v);
    return v;
  }

  struct Cache {
    std::mutex mutex;
    std::map<std::tuple<std::size_t, double, double>, Complex> values;
  };

  Kind kind_;
  BoxRegion support_;
  std::vector<double> center_;
  double width_ = 0.0;
  std::string id_;
  double norm2_ = 0.0;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// χ_[0,1]^d, χ_[0.3,0.8]^d and a Gaussian centred at (0.5,…) of width 0.2
/// cut off at radius 3.
inline std::vector<TestFunction> default_test_functions(std::size_t d) {
  return {TestFunction::cube_indicator(d, 0.0, 1.0), TestFunction::cube_indicator(d, 0.3, 0.8),
          TestFunction::gaussian_like(std::vector<double>(d, 0.5), 0.2, 3.0)};
}

struct ParsevalResult {
  double sum = 0.0;
  double norm2 = 0.0;
  double ratio = 0.0;
  std::size_t terms = 0;
  /// (r, partial sum over |λ|_max ≤ r) for integer shells r, when requested.
  std::vector<std::pair<double, double>> shells;
};

/// Truncation box for Parseval sums: time range covering the support of f
/// inflated by 1, frequencies with |λ_i| ≤ cutoff.
inline BoxRegion parseval_box(const TestFunction& f, double cutoff) {
  const std::size_t d = f.dimension();
  std::vector<double> lo(2 * d), hi(2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    lo[i] = std::floor(f.support().lo(i)) - 1.0;
    hi[i] = std::ceil(f.support().hi(i)) + 1.0;
    lo[d + i] = -cutoff;
    hi[d + i] = cutoff + 1e-7;
  }
  return BoxRegion(lo, hi);
}

/// Σ_{(t,λ) ∈ Λ ∩ trunc} |⟨f, π(t,λ) g⟩|² with compensated summation. The
/// box is split into fixed slabs along the first frequency coordinate, so
/// the result does not depend on the worker count.
inline ParsevalResult parseval_sum(const TestFunction& f, const StructuredSet& s, const Window& w,
                                   const BoxRegion& trunc, bool want_shells = false,
                                   double tol = kDefaultQuadratureTolerance) {
  if (!w.is_cube()) throw UnsupportedWindow("parseval_sum: only the unit cube window is supported");
  const auto d = static_cast<std::size_t>(w.dimension());
  if (f.dimension() != d || s.ambient() != 2 * d || trunc.dimension() != 2 * d) {
    throw DomainError("parseval_sum: dimensions of test function, set, window and box disagree");
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (trunc.lo(i) > f.support().lo(i) - 1.0 + kIntegerTolerance ||
        trunc.hi(i) < f.support().hi(i) + 1.0 - kIntegerTolerance) {
      throw PreconditionError("parseval_sum: truncation does not cover the support of f inflated by 1 in time");
    }
  }
  const double flo = trunc.lo(d), fhi = trunc.hi(d);
  const std::size_t slabs = std::max<std::size_t>(1, std::min<std::size_t>(64, static_cast<std::size_t>(fhi - flo)));
  struct Part {
    CompensatedSum sum;
    std::size_t terms = 0;
    std::map<std::int64_t, CompensatedSum> shells;
  };
  std::vector<Part> parts(slabs);
  parallel_chunks(slabs, slabs, [&](std::size_t chunk, std::size_t, std::size_t) {
    std::vector<double> lo = trunc.lo(), hi = trunc.hi();
    lo[d] = flo + (fhi - flo) * static_cast<double>(chunk) / static_cast<double>(slabs);
    hi[d] = chunk + 1 == slabs ? fhi : flo + (fhi - flo) * static_cast<double>(chunk + 1) / static_cast<double>(slabs);
    if (!(lo[d] < hi[d])) return;
    Part& part = parts[chunk];
    for_each_point(s, BoxRegion(lo, hi), [&](std::span<const double> p) {
      const double v = std::norm(f.coefficient(p.first(d), p.subspan(d), tol));
      part.sum.add(v);
      ++part.terms;
      if (want_shells) {
        double r = 0.0;
        for (std::size_t i = d; i < 2 * d; ++i) r = std::max(r, std::abs(p[i]));
        part.shells[static_cast<std::int64_t>(std::ceil(r - kIntegerTolerance))].add(v);
      }
    });
  });
  ParsevalResult out;
  CompensatedSum total;
  std::map<std::int64_t, CompensatedSum> shells;
  for (const auto& part : parts) {
    total.add(part.sum);
    out.terms += part.terms;
    for (const auto& [r, v] : part.shells) shells[r].add(v);
  }
  out.sum = total.value();
  out.norm2 = f.norm2();
  out.ratio = out.sum / out.norm2;
  CompensatedSum running;
  for (const auto& [r, v] : shells) {
    running.add(v);
    out.shells.emplace_back(static_cast<double>(r), running.value());
  }
  return out;
}

struct ParsevalRatio {
  std::string id;
  double sum = 0.0;
  double norm2 = 0.0;
  double ratio = 0.0;
};

struct OnbVerdict {
  bool ortho = false;
  OrthoReport ortho_report;
  CoverageReport tiling;
  std::vector<ParsevalRatio> parseval_ratios;  // evidence only
  BoxRegion box;
  bool verdict = false;
};

/// Orthogonality plus windowed tiling of Λ + [0,1)^{2d}; Parseval ratios
/// of the tests over the same box are attached as evidence.
inline OnbVerdict check_onb(const StructuredSet& s, const Window& w, const std::vector<TestFunction>& tests,
                            const BoxRegion& box, double tol = kDefaultQuadratureTolerance,
                            double eps = kIntegerTolerance) {
  if (!w.is_cube()) throw UnsupportedWindow("check_onb: only the unit cube window has a known tight packing region");
  const auto points = enumerate(s, box);
  OnbVerdict v;
  v.box = box;
  v.ortho_report = check_orthogonality(points, w, eps, tol);
  v.ortho = v.ortho_report.verdict;
  v.tiling = check_tiling(points, box, eps);
  for (const auto& f : tests) {
    const auto r = parseval_sum(f, s, w, box, false, tol);
    v.parseval_ratios.push_back({f.id(), r.sum, r.norm2, r.ratio});
  }
  v.verdict = v.ortho && v.tiling.tiles();
  return v;
}

inline OnbVerdict check_onb(const StructuredSet& s, const Window& w, const BoxRegion& box,
                            double tol = kDefaultQuadratureTolerance, double eps = kIntegerTolerance) {
  return check_onb(s, w, default_test_functions(static_cast<std::size_t>(w.dimension())), box, tol, eps);
}

}  // namespace gabor_cube

#endif  // GABOR_CUBE_FRAME_HPP
