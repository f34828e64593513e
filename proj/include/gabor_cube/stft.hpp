#ifndef GABOR_CUBE_STFT_HPP
#define GABOR_CUBE_STFT_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "quadrature.hpp"
#include "tolerance.hpp"

namespace gabor_cube {

/// Analysis window: the indicator of [0,1]^d, or the one-dimensional
/// hyperbolic secant 2/(e^{2x}+e^{-2x}).
class Window {
 public:
  enum class Kind { unit_cube, hyperbolic_secant };

  static Window unit_cube(int dimension) {
    if (dimension < 1) throw DomainError("unit cube window needs dimension >= 1");
    return Window(Kind::unit_cube, dimension);
  }
  static Window hyperbolic_secant() { return Window(Kind::hyperbolic_secant, 1); }

  Kind kind() const noexcept { return kind_; }
  int dimension() const noexcept { return dimension_; }
  bool is_cube() const noexcept { return kind_ == Kind::unit_cube; }

  std::string name() const {
    return is_cube() ? "unit_cube(" + std::to_string(dimension_) + ")" : "hyperbolic_secant";
  }

  friend bool operator==(const Window&, const Window&) = default;

 private:
  Window(Kind kind, int dimension) : kind_(kind), dimension_(dimension) {}
  Kind kind_;
  int dimension_;
};

/// Below this |ν| the exponential integral switches to its Taylor series.
inline constexpr double kSmallFrequency = 1e-6;

/// ∫_a^b e^{-2πiνx} dx (zero when b <= a).
inline Complex interval_exponential_integral(double a, double b, double nu) {
  if (!(b > a)) return {0.0, 0.0};
  const double omega = 2.0 * std::numbers::pi * nu;
  if (std::abs(nu) < kSmallFrequency) {
    // Σ_{k<6} (-iω)^k/k! · (b^{k+1} - a^{k+1})/(k+1)
    Complex sum{};
    Complex coeff{1.0, 0.0};
    double apow = a, bpow = b;
    for (int k = 0; k < 6; ++k) {
      sum += coeff * ((bpow - apow) / (k + 1));
      coeff *= Complex{0.0, -omega} / static_cast<double>(k + 1);
      apow *= a;
      bpow *= b;
    }
    return sum;
  }
  const double length = b - a;
  const double mid = 0.5 * (a + b);
  const double half_phase = 0.5 * omega * length;
  return std::polar(length * std::sin(half_phase) / half_phase, -omega * mid);
}

namespace detail {
inline void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw DomainError(std::string(what) + ": non-finite input");
}
}  // namespace detail

/// Closed-form V_g g for g = χ_[0,1]: the integral of e^{-2πiνx} over
/// [0,1] ∩ [t, t+1].
inline Complex stft_1d(double t, double nu) {
  detail::require_finite(t, "stft_1d");
  detail::require_finite(nu, "stft_1d");
  if (std::abs(t) >= 1.0) return {0.0, 0.0};
  return interval_exponential_integral(std::max(0.0, t), std::min(1.0, 1.0 + t), nu);
}

/// Tensor-product STFT of χ_[0,1]^d.
inline Complex stft_nd(std::span<const double> t, std::span<const double> nu) {
  if (t.size() != nu.size() || t.empty()) {
    throw DomainError("stft_nd: time and frequency vectors must have equal length >= 1");
  }
  Complex value{1.0, 0.0};
  for (std::size_t i = 0; i < t.size(); ++i) value *= stft_1d(t[i], nu[i]);
  return value;
}

inline Complex stft_nd(int d, std::span<const double> t, std::span<const double> nu) {
  if (d < 1 || t.size() != static_cast<std::size_t>(d)) {
    throw DomainError("stft_nd: vector length does not match d");
  }
  return stft_nd(t, nu);
}

namespace detail {
inline double sinhc(double x) { return std::abs(x) < 1e-8 ? 1.0 : std::sinh(x) / x; }
inline double sinc(double x) { return std::abs(x) < 1e-8 ? 1.0 : std::sin(x) / x; }
}  // namespace detail

/// |V_g g(t, ν)| for the hyperbolic secant window,
/// |π sin(πνt)| / |sinh(2t) sinh(π²ν/2)| with its removable singularities filled.
inline double secant_stft_magnitude(double t, double nu) {
  detail::require_finite(t, "secant_stft_magnitude");
  detail::require_finite(nu, "secant_stft_magnitude");
  constexpr double pi = std::numbers::pi;
  return std::abs(detail::sinc(pi * nu * t)) /
         (detail::sinhc(2.0 * t) * detail::sinhc(0.5 * pi * pi * nu));
}

namespace detail {
inline void require_window_dims(const Window& w, std::size_t nt, std::size_t nnu,
                                const char* what) {
  if (nt != nnu || nt != static_cast<std::size_t>(w.dimension())) {
    throw DomainError(std::string(what) + ": vector length does not match window dimension " +
                      std::to_string(w.dimension()));
  }
}
}  // namespace detail

/// Exact zero-set membership of V_g g. Points within eps of the zero variety
/// count as members.
inline bool in_zero_set(const Window& w, std::span<const double> t, std::span<const double> nu,
                        double eps = kIntegerTolerance) {
  detail::require_window_dims(w, t.size(), nu.size(), "in_zero_set");
  if (w.kind() == Window::Kind::hyperbolic_secant) {
    return is_nonzero_integer(t[0] * nu[0], eps);
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (std::abs(t[i]) >= 1.0 - eps) return true;
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (is_nonzero_integer(nu[i] * (1.0 - std::abs(t[i])), eps)) return true;
  }
  return false;
}

inline bool in_zero_set(const Window& w, double t, double nu, double eps = kIntegerTolerance) {
  return in_zero_set(w, std::span<const double>(&t, 1), std::span<const double>(&nu, 1), eps);
}

/// Numerical V_g g(t, ν) = ∫ g(x) g(x-t) e^{-2πi⟨ν,x⟩} dx by adaptive quadrature.
/// Serves as the independent check on the closed forms.
inline QuadResult stft_quadrature(const Window& w, std::span<const double> t,
                                  std::span<const double> nu, double tol) {
  detail::require_window_dims(w, t.size(), nu.size(), "stft_quadrature");
  if (!(tol > 0.0)) throw DomainError("stft_quadrature: tol must be positive");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (w.kind() == Window::Kind::hyperbolic_secant) {
    const double shift = t[0];
    const double freq = nu[0];
    auto g = [](double x) { return 2.0 / (std::exp(2.0 * x) + std::exp(-2.0 * x)); };
    // g(x) g(x-t) < 4 e^{-2·24} beyond 24 of either centre.
    const double lo = std::min(0.0, shift) - 24.0;
    const double hi = std::max(0.0, shift) + 24.0;
    return integrate_adaptive(
        [&](double x) { return std::polar(g(x) * g(x - shift), -two_pi * freq * x); }, lo, hi,
        tol, 20000);
  }
  const std::size_t d = t.size();
  std::vector<double> lo(d), hi(d);
  for (std::size_t i = 0; i < d; ++i) {
    lo[i] = std::max(0.0, t[i]);
    hi[i] = std::min(1.0, 1.0 + t[i]);
    if (hi[i] <= lo[i]) return {};
  }
  const std::vector<double> freq(nu.begin(), nu.end());
  return integrate_box(
      [&](std::span<const double> x) {
        double phase = 0.0;
        for (std::size_t i = 0; i < d; ++i) phase += freq[i] * x[i];
        return std::polar(1.0, -two_pi * phase);
      },
      lo, hi, tol);
}

inline QuadResult stft_quadrature(const Window& w, double t, double nu, double tol) {
  return stft_quadrature(w, std::span<const double>(&t, 1), std::span<const double>(&nu, 1), tol);
}

}  // namespace gabor_cube

#endif  // GABOR_CUBE_STFT_HPP
