#include <vector>

#include <gtest/gtest.h>

#include "gabor_cube/ortho.hpp"
#include "gabor_cube/sets.hpp"

using namespace gabor_cube;

namespace {
StructuredSet bad_rows() {
  IndexedParam a(1);
  a.set({1}, 0.5);
  return make_cube_tiling_2d(TilingAxis::rows, a);
}
}  // namespace

TEST(Ortho, LatticeIsOrthogonal) {
  const auto r = check_orthogonality(make_lattice(2), Window::unit_cube(1), BoxRegion::centered(2, 4.0));
  EXPECT_TRUE(r.verdict);
  EXPECT_TRUE(r.witness.empty());
  EXPECT_EQ(r.points, 64u);
  EXPECT_GT(r.pairs_tested, 0u);
}

TEST(Ortho, ColumnsFormIsOrthogonal) {
  IndexedParam a(1);
  a.set({0}, 0.3);
  a.set({1}, 0.7);
  const auto s = make_cube_tiling_2d(TilingAxis::columns, a);
  EXPECT_TRUE(check_orthogonality(s, Window::unit_cube(1), BoxRegion::centered(2, 4.0)).verdict);
}

TEST(Ortho, RowsFormCounterexample) {
  const auto r = check_orthogonality(bad_rows(), Window::unit_cube(1), BoxRegion::centered(2, 3.0));
  EXPECT_FALSE(r.verdict);
  EXPECT_EQ(r.witness, (Point{0.5, 1.0}));
  ASSERT_FALSE(r.violations.empty());
  for (const auto& v : r.violations) EXPECT_GT(v.inner_product, 1e-3);
}

TEST(Ortho, ViolationsAreOrderedAndDeterministic) {
  const BoxRegion box = BoxRegion::centered(2, 3.0);
  const auto a = check_orthogonality(bad_rows(), Window::unit_cube(1), box);
  const auto b = check_orthogonality(bad_rows(), Window::unit_cube(1), box);
  ASSERT_EQ(a.violations.size(), b.violations.size());
  for (std::size_t i = 0; i < a.violations.size(); ++i) {
    EXPECT_EQ(a.violations[i].p, b.violations[i].p);
    EXPECT_EQ(a.violations[i].q, b.violations[i].q);
    if (i > 0) {
      const auto& x = a.violations[i - 1];
      const auto& y = a.violations[i];
      EXPECT_TRUE(std::tie(x.p, x.q) < std::tie(y.p, y.q));
    }
  }
}

TEST(Ortho, ReportsAreCapped) {
  std::vector<Point> pts;
  for (int i = 0; i < 30; ++i) pts.push_back({0.01 * i, 0.013 * i});
  const auto r = check_orthogonality(pts, Window::unit_cube(1));
  EXPECT_EQ(r.violations.size(), kMaxReportedViolations);
  EXPECT_TRUE(r.truncated);
}

TEST(Ortho, SecantWindowRejectsLattice) {
  const auto r = check_orthogonality(make_lattice(2), Window::hyperbolic_secant(), BoxRegion::centered(2, 2.0));
  EXPECT_FALSE(r.verdict);
}

TEST(Ortho, QuadratureConfirmsZeroSetPairs) {
  EXPECT_LT(verify_pair_quadrature(std::vector<double>{0.0, 0.0}, std::vector<double>{0.5, 2.0},
                                   Window::unit_cube(1)),
            1e-9);
  EXPECT_GT(verify_pair_quadrature(std::vector<double>{0.0, 0.0}, std::vector<double>{0.5, 1.0},
                                   Window::unit_cube(1)),
            0.1);
}

TEST(Ortho, WindowMismatch) {
  EXPECT_THROW(check_orthogonality(make_lattice(4), Window::unit_cube(1), BoxRegion::centered(4, 2.0)), DomainError);
}

TEST(ShorterDifference, Ordering) {
  EXPECT_TRUE(shorter_difference(std::vector<double>{0.5, 1.0}, std::vector<double>{0.5, 3.0}));
  EXPECT_TRUE(shorter_difference(std::vector<double>{0.5, 1.0}, std::vector<double>{-0.5, 1.0}));
  EXPECT_FALSE(shorter_difference(std::vector<double>{0.5, 1.0}, std::vector<double>{0.5, 1.0}));
}
