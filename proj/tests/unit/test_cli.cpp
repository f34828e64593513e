#include <sstream>
#include <utility>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "gabor_cube/cli.hpp"

using namespace gabor_cube;

namespace {
struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "gabor_cube");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(GABOR_CUBE_FIXTURES) + "/" + name + ".json"; }
}  // namespace

TEST(Cli, CheckOnbLattice) {
  const auto r = run({"check", "onb", "--input", fixture("lattice-z4"), "--radius", "3"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(Json::parse(r.out)["verdict"].get<bool>());
}

TEST(Cli, CheckOrthoBadRows) {
  const auto r = run({"check", "ortho", "--input", fixture("bad-rows")});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(Json::parse(r.out)["witness"], Json::parse("[0.5, 1.0]"));
}

TEST(Cli, CheckTilingPerturbed) {
  const auto r = run({"check", "tiling", "--input", fixture("perturbed-lattice")});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(Json::parse(r.out)["verdict"], "not_packing");
}

TEST(Cli, CoverageCsv) {
  const auto r = run({"check", "tiling", "--input", fixture("bad-rows"), "--format", "csv", "--resolution", "0.5"});
  EXPECT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "x,y,count");
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    EXPECT_EQ(line.substr(line.rfind(',') + 1), "1");
  }
  EXPECT_EQ(rows, 8u * 8u);  // [-2,2)^2 at spacing 1/2
}

TEST(Cli, ParsevalCsv) {
  const auto r = run({"check", "onb", "--input", fixture("cube-tiling-columns"), "--format", "csv", "--cutoff", "20"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, 13), "radius,value\n");
}

TEST(Cli, ClassifyMixed) {
  const auto r = run({"classify", "--input", fixture("mixed-strips")});
  EXPECT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["J_prime"], Json::parse("[1]"));
  EXPECT_EQ(j["J"].size(), 5u);
}

TEST(Cli, ClassifyPseudo) {
  EXPECT_EQ(run({"classify", "--pseudo-m", "1", "--input", fixture("pseudo-standard-example")}).code, 0);
  EXPECT_EQ(run({"classify", "--pseudo-m", "1", "--input", fixture("mixed-strips")}).code, 1);
}

TEST(Cli, ClassifyNonBasisIsFailVerdict) {
  const auto r = run({"classify", "--input", fixture("perturbed-lattice")});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(Json::parse(r.out)["classified"].get<bool>());
}

TEST(Cli, ConstructClassifyConstructIsIdempotent) {
  auto cycle = [](const std::string& json, const std::string& radius = "3") {
    const auto cls = run({"classify", "--json", json, "--radius", radius});
    EXPECT_EQ(cls.code, 0) << cls.err;
    return run({"construct", "--json", Json::parse(cls.out)["reconstruction"].dump()}).out;
  };
  // the window must cover every table entry
  for (const auto& [name, radius] : {std::pair{"theorem-2d-horizontal", "3"}, std::pair{"theorem-2d-vertical", "3"},
                                     std::pair{"standard-1d-varying", "12"}}) {
    const auto first = run({"construct", "--input", fixture(name)});
    ASSERT_EQ(first.code, 0) << first.err;
    EXPECT_EQ(cycle(first.out, radius), first.out) << name;
  }
  // a cube tiling comes back in standard form, which is then a fixed point
  const auto tiling = run({"construct", "--input", fixture("cube-tiling-columns")}).out;
  const auto standard = cycle(tiling);
  EXPECT_EQ(Json::parse(standard)["type"], "standard");
  EXPECT_EQ(cycle(standard), standard);
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args{"check", "onb", "--input", fixture("standard-2d"), "--radius", "2"};
  EXPECT_EQ(run(args).out, run(args).out);
  const std::vector<std::string> sweep{"sweep", "tiling", "--count", "5", "--seed", "3"};
  const auto a = run(sweep);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, run(sweep).out);
}

TEST(Cli, SweepStft) {
  const auto r = run({"sweep", "stft", "--count", "200", "--seed", "7"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["samples"], 200);
}

TEST(Cli, EvalStft) {
  const auto r = run({"eval-stft", "--t", "0.5", "--nu", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(Json::parse(r.out)["in_zero_set"].get<bool>());
  const auto s = run({"eval-stft", "--window", "secant", "--t", "2", "--nu", "0.5"});
  EXPECT_TRUE(Json::parse(s.out)["in_zero_set"].get<bool>());
}

TEST(Cli, Density) {
  const auto r = run({"density", "--input", fixture("standard-2d"), "--T", "4,8"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["estimates"][1]["density"], 1.0);
}

TEST(Cli, MalformedJsonIsUsageError) {
  const auto r = run({"construct", "--json", "{\"type\": \"lattice\", \"dimension\": }"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("byte"), std::string::npos) << r.err;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"check"}).code, 2);
  EXPECT_EQ(run({"check", "onb"}).code, 2);  // no input
  EXPECT_EQ(run({"check", "tiling", "--input", fixture("bad-rows"), "--radius", "1.5"}).code, 2);
  EXPECT_EQ(run({"check", "ortho", "--input", fixture("bad-rows"), "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"check", "onb", "--input", fixture("bad-rows"), "--window", "secant"}).code, 2);
  EXPECT_EQ(run({"construct", "--input", "/nonexistent.json"}).code, 2);
}

TEST(Cli, Help) { EXPECT_EQ(run({"--help"}).code, 0); }
