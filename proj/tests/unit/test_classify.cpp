#include <fstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "gabor_cube/classify.hpp"
#include "gabor_cube/generators.hpp"
#include "gabor_cube/sets_json.hpp"

using namespace gabor_cube;

namespace {
const BoxRegion kBox2 = BoxRegion::centered(2, 3.0);
const BoxRegion kBox4 = BoxRegion::centered(4, 3.0);

StructuredSet load(const std::string& name) {
  std::ifstream in(std::string(GABOR_CUBE_FIXTURES) + "/" + name);
  return set_from_json(Json::parse(in));
}
}  // namespace

TEST(Classify1D, StandardRoundTrip) {
  Rng rng(8);
  for (int i = 0; i < 10; ++i) {
    const auto s = random_standard_1d(rng);
    const auto c = classify_1d(s, kBox2);
    ASSERT_TRUE(c.standard);
    EXPECT_TRUE(same_description(*c.reconstruction, s)) << canonical_json(*c.reconstruction).dump();
  }
}

TEST(Classify1D, RowsFormIsNotStandard) {
  const auto c = classify_1d(load("bad-rows.json"), kBox2);
  EXPECT_FALSE(c.standard);
  EXPECT_EQ(c.tiling_form, CubeTilingForm::rows);
  EXPECT_EQ(c.witness, (Point{0.5, 1.0}));
}

TEST(Classify1D, RequiresTiling) {
  EXPECT_THROW(classify_1d(load("perturbed-lattice.json"), kBox2), PreconditionError);
}

TEST(Classify1D, Columns) {
  const auto c = classify_1d(load("cube-tiling-columns.json"), kBox2);
  ASSERT_TRUE(c.standard);
  EXPECT_EQ(c.spectra_offsets.at({-1}), 0.25);
  EXPECT_EQ(c.spectra_offsets.at({2}), 0.875);
}

TEST(Classify2D, FamilyRoundTrips) {
  Rng rng(9);
  for (int i = 0; i < 10; ++i) {
    const auto s = random_theorem_2d(rng);
    const auto c = classify_2d(s, kBox4);
    ASSERT_TRUE(c.classified) << c.reason;
    EXPECT_TRUE(same_description(*c.reconstruction, s));
    EXPECT_EQ(c.axis, s.as<TwoDTheoremSpec>().axis);
  }
}

TEST(Classify2D, Fixtures) {
  for (const char* name : {"theorem-2d-horizontal.json", "theorem-2d-vertical.json"}) {
    const auto s = load(name);
    const auto c = classify_2d(s, kBox4);
    ASSERT_TRUE(c.classified) << name;
    EXPECT_EQ(c.overlap_strips, (std::vector<std::int64_t>{-3, -1, 0, 2}));
    EXPECT_EQ(c.tiling_strips, (std::vector<std::int64_t>{-2, 1}));
    EXPECT_TRUE(same_description(*c.reconstruction, s)) << name;
  }
}

TEST(Classify2D, MixedStrips) {
  const auto c = classify_2d(load("mixed-strips.json"), kBox4);
  ASSERT_TRUE(c.classified);
  EXPECT_EQ(c.tiling_strips, std::vector<std::int64_t>{1});
  EXPECT_EQ(c.overlap_strips, (std::vector<std::int64_t>{-3, -2, -1, 0, 2}));
  EXPECT_EQ(c.t_dependence, "n,k");
}

TEST(Classify2D, LatticeIsDegenerate) {
  const auto c = classify_2d(make_lattice(4), kBox4);
  ASSERT_TRUE(c.classified);
  EXPECT_TRUE(c.degenerate);
  EXPECT_TRUE(c.overlap_strips.empty());
}

TEST(Classify2D, RequiresOrthonormalBasis) {
  auto pts = enumerate(make_lattice(4), kBox4);
  std::erase(pts, Point{0.0, 0.0, 0.0, 0.0});
  EXPECT_THROW(classify_2d(make_explicit(4, pts), kBox4), PreconditionError);
  EXPECT_THROW(classify_2d(make_lattice(2), kBox2), DomainError);
}

TEST(Classify2D, IncompleteWindowDataAreReported) {
  auto pts = enumerate(make_lattice(4), kBox4);
  pts.pop_back();  // (2,2,2,2): outside the interior-safe region
  const auto c = classify_2d(make_explicit(4, pts), kBox4);
  EXPECT_FALSE(c.classified);
  EXPECT_EQ(c.witness, (Point{2.0, 2.0, 2.0, 2.0}));
}

TEST(Gamma, TilesForEveryAnchor) {
  const auto s = load("theorem-2d-horizontal.json");
  const BoxRegion freq = BoxRegion::centered(2, 3.0);
  for (double a : {-0.75, 0.0, 0.4}) {
    const BoxRegion c({a, -a}, {a + 1.0, 1.0 - a});
    const auto lambdas = gamma(s, c, freq);
    EXPECT_TRUE(check_tiling(lambdas, freq).tiles());
    for (const auto& l : lambdas) EXPECT_LE(t_slice(s, c, l).size(), 1u);
  }
}

TEST(Projection, PiAndRestriction) {
  const std::vector<Point> pts{{0.0, 0.5, 1.0, 0.25}, {0.0, 1.5, 1.0, 0.75}, {1.0, 0.0, 0.0, 0.0}};
  const auto proj = project_tf(pts, 1);
  EXPECT_EQ(proj, (std::vector<Point>{{0.0, 1.0}, {1.0, 0.0}}));
  const auto child = restrict_tf(pts, 1, std::vector<double>{0.0, 1.0});
  EXPECT_EQ(child, (std::vector<Point>{{0.5, 0.25}, {1.5, 0.75}}));
}

TEST(Pseudo, FixtureDecomposes) {
  const auto s = load("pseudo-standard-example.json");
  const auto p = check_pseudo_structure(s, 1, kBox4);
  ASSERT_TRUE(p.pseudo_standard) << p.reason;
  const auto rebuilt = make_pseudo_standard(1, 1, *p.base, p.children);
  EXPECT_EQ(enumerate(rebuilt, kBox4), enumerate(s, kBox4));
}

TEST(Pseudo, FixtureIsNotStandard) {
  // the time projection {(m, n + s_mj)} overlaps itself
  const auto s = load("pseudo-standard-example.json");
  std::vector<Point> times;
  for (const auto& p : enumerate(s, kBox4)) times.push_back({p[0], p[1]});
  sort_dedupe(times, kIntegerTolerance);
  EXPECT_FALSE(check_tiling(times, BoxRegion::centered(2, 3.0)).packs());
}

TEST(Pseudo, MixedFails) {
  const auto p = check_pseudo_structure(load("mixed-strips.json"), 1, kBox4);
  EXPECT_FALSE(p.pseudo_standard);
  EXPECT_FALSE(p.projection_tiling.tiles());
}

TEST(Pseudo, RangeOfM) {
  EXPECT_THROW(check_pseudo_structure(make_lattice(4), 2, kBox4), DomainError);
  EXPECT_THROW(check_pseudo_structure(make_lattice(2), 1, kBox2), DomainError);
}
