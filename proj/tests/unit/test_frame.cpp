#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "gabor_cube/frame.hpp"

using namespace gabor_cube;

TEST(TestFunction, IndicatorCoefficient) {
  const auto f = TestFunction::cube_indicator(1, 0.3, 0.8);
  EXPECT_DOUBLE_EQ(f.norm2(), 0.5);
  const std::vector<double> t{0.0}, l{0.0};
  EXPECT_NEAR(std::abs(f.coefficient(t, l)), 0.5, 1e-15);
  const std::vector<double> far{2.0};
  EXPECT_EQ(f.coefficient(far, l), Complex{});
}

TEST(TestFunction, GaussianNorm) {
  const auto g = TestFunction::gaussian_like({0.5}, 0.2, 3.0);
  const double expected = 0.2 * std::sqrt(std::numbers::pi) * std::erf(3.0);
  EXPECT_NEAR(g.norm2(), expected, 1e-15);
  EXPECT_THROW(TestFunction::gaussian_like({0.5}, 0.0, 3.0), DomainError);
}

TEST(Parseval, IntegerLatticeOneDimension) {
  const auto f = TestFunction::cube_indicator(1, 0.3, 0.8);
  const auto r = parseval_sum(f, make_lattice(2), Window::unit_cube(1), parseval_box(f, 1000.0));
  EXPECT_NEAR(r.sum, 0.49989867885, 1e-9);
  EXPECT_LE(r.sum, 0.5 + 1e-8);
  EXPECT_EQ(r.norm2, 0.5);
}

TEST(Parseval, ShellsIncrease) {
  const auto f = TestFunction::cube_indicator(1, 0.3, 0.8);
  const auto r = parseval_sum(f, make_lattice(2), Window::unit_cube(1), parseval_box(f, 50.0), true);
  ASSERT_FALSE(r.shells.empty());
  for (std::size_t i = 1; i < r.shells.size(); ++i) EXPECT_GE(r.shells[i].second, r.shells[i - 1].second);
  EXPECT_NEAR(r.shells.back().second, r.sum, 1e-15);
}

TEST(Parseval, WholeCellIsExact) {
  // χ_[0,1] is itself an element of the system
  const auto f = TestFunction::cube_indicator(1, 0.0, 1.0);
  const auto r = parseval_sum(f, make_lattice(2), Window::unit_cube(1), parseval_box(f, 10.0));
  EXPECT_NEAR(r.ratio, 1.0, 1e-14);
}

TEST(Parseval, TruncationMustCoverSupport) {
  const auto f = TestFunction::cube_indicator(1, 0.3, 0.8);
  EXPECT_THROW(parseval_sum(f, make_lattice(2), Window::unit_cube(1), BoxRegion({0.0, -5.0}, {1.0, 5.0})),
               PreconditionError);
}

TEST(Parseval, SecantUnsupported) {
  const auto f = TestFunction::cube_indicator(1, 0.3, 0.8);
  EXPECT_THROW(parseval_sum(f, make_lattice(2), Window::hyperbolic_secant(), parseval_box(f, 5.0)),
               UnsupportedWindow);
}

TEST(Parseval, ResultIndependentOfThreadCount) {
  const auto f = TestFunction::gaussian_like({0.5}, 0.2, 3.0);
  const auto s = make_lattice(std::vector<double>{0.5, 0.25});
  const auto a = parseval_sum(f, s, Window::unit_cube(1), parseval_box(f, 200.0));
  const auto b = parseval_sum(f, s, Window::unit_cube(1), parseval_box(f, 200.0));
  EXPECT_EQ(a.sum, b.sum);
  // cell boundaries cut f where it is large, so the tail decays like 1/cutoff
  EXPECT_NEAR(a.ratio, 1.0, 3e-3);
}

TEST(Onb, LatticeVerdict) {
  const auto v = check_onb(make_lattice(2), Window::unit_cube(1), BoxRegion::centered(2, 3.0));
  EXPECT_TRUE(v.verdict);
  EXPECT_EQ(v.parseval_ratios.size(), 3u);
}

TEST(Onb, RowsCounterexampleFails) {
  IndexedParam a(1);
  a.set({1}, 0.5);
  const auto v = check_onb(make_cube_tiling_2d(TilingAxis::rows, a), Window::unit_cube(1), BoxRegion::centered(2, 3.0));
  EXPECT_FALSE(v.verdict);
  EXPECT_FALSE(v.ortho);
  EXPECT_TRUE(v.tiling.tiles());
}

TEST(Onb, SecantUnsupported) {
  EXPECT_THROW(check_onb(make_lattice(2), Window::hyperbolic_secant(), BoxRegion::centered(2, 3.0)),
               UnsupportedWindow);
}
