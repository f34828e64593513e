// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gabor_cube/gabor_cube.hpp"

namespace fs = std::filesystem;
using namespace gabor_cube;

namespace {

struct Fixture {
  std::string name;
  Json json;
  StructuredSet set;
  std::size_t d() const { return set.ambient() / 2; }
  bool verified_onb() const { return json.value("/meta/verified_onb"_json_pointer, false); }
  std::string generator() const { return json.value("/meta/generator"_json_pointer, std::string{}); }
};

std::vector<Fixture> load_fixtures() {
  std::vector<fs::path> paths;
  for (const auto& e : fs::directory_iterator(GABOR_CUBE_FIXTURES)) {
    if (e.path().extension() == ".json") paths.push_back(e.path());
  }
  std::sort(paths.begin(), paths.end());
  std::vector<Fixture> out;
  for (const auto& p : paths) {
    std::ifstream in(p);
    Json j = Json::parse(in);
    out.push_back({p.stem().string(), j, set_from_json(j)});
  }
  return out;
}

const Fixture& fixture(const std::vector<Fixture>& all, const std::string& name) {
  for (const auto& f : all) {
    if (f.name == name) return f;
  }
  throw std::runtime_error("missing fixture " + name);
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

// ---------------------------------------------------------------- criteria

Outcome stft_closed_form() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = stft_sweep(10000, 20240601);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {r.samples == 10000 && r.value_failures == 0 && r.zero_set_disagreements == 0 && secs <= 10.0,
          std::to_string(r.samples) + " samples, max |closed - quadrature| = " + fmt(r.max_error) + ", " +
              std::to_string(r.value_failures) + " value failures, " + std::to_string(r.zero_set_disagreements) +
              " zero-set disagreements, " + fmt(secs) + " s"};
}

Outcome tiling_oracle() {
  const auto r = tiling_sweep(100, 77, 4.0, 1.0 / 64.0);
  return {r.families == 100 && r.perturbations == 100 && r.sweep_failures == 0 && r.oracle_failures == 0 &&
              r.disagreements == 0,
          std::to_string(r.families) + " families + " + std::to_string(r.perturbations) + " perturbations, " +
              std::to_string(r.sweep_failures) + " sweep errors, " + std::to_string(r.oracle_failures) +
              " oracle errors, " + std::to_string(r.disagreements) + " disagreements"};
}

Outcome counterexample(const std::vector<Fixture>& all) {
  const auto& f = fixture(all, "bad-rows");
  const BoxRegion box = BoxRegion::centered(2, 3.0);
  const bool tiles = check_tiling(f.set, box).tiles();
  const std::string path = std::string(GABOR_CUBE_FIXTURES) + "/bad-rows.json";
  const char* argv[] = {"gabor_cube", "check", "ortho", "--input", path.c_str()};
  std::ostringstream out, err;
  const int code = cli::run(5, argv, out, err);
  const Json report = Json::parse(out.str());
  const Point witness = report.at("witness").get<Point>();
  const bool ok = tiles && code == 1 && witness == Point{0.5, 1.0};
  return {ok, std::string("tiling ") + (tiles ? "passes" : "fails") + ", check ortho exit " + std::to_string(code) +
                  ", witness " + report.at("witness").dump()};
}

Outcome generator_soundness(const std::vector<Fixture>& all) {
  std::size_t checked = 0;
  std::string bad;
  std::ostringstream ratios;
  for (const auto& f : all) {
    const auto g = f.generator();
    if (g != "standard" && g != "pseudo_standard" && g != "two_d_theorem") continue;
    ++checked;
    const std::size_t d = f.d();
    const Window w = Window::unit_cube(static_cast<int>(d));
    const OnbVerdict v = check_onb(f.set, w, BoxRegion::centered(2 * d, 3.0));
    const auto& meta = f.json.at("meta").at("parseval");
    const double cutoff = meta.at("cutoff").get<double>();
    const double tail = meta.at("tail_bound").get<double>();
    const auto test = TestFunction::cube_indicator(d, 0.3, 0.8);
    const auto r = parseval_sum(test, f.set, w, parseval_box(test, cutoff));
    const double full = std::pow(0.5, static_cast<double>(d));
    const double lo = std::max(std::pow(0.49, static_cast<double>(d)), full - tail);
    const bool in_range = r.sum >= lo && r.sum <= full + 1e-8;
    ratios << " " << f.name << "=" << fmt(r.sum);
    if (!v.verdict || !in_range) bad += " " + f.name + (v.verdict ? "(parseval)" : "(onb)");
  }
  return {bad.empty() && checked > 0,
          std::to_string(checked) + " fixtures; sums at |lambda| <= 1000:" + ratios.str() +
              (bad.empty() ? "" : "; failing:" + bad)};
}

Outcome classifier_round_trips(const std::vector<Fixture>& all) {
  Rng rng(4242);
  std::size_t ok1 = 0, ok2 = 0;
  const BoxRegion box2 = BoxRegion::centered(2, 3.0), box4 = BoxRegion::centered(4, 3.0);
  for (int i = 0; i < 50; ++i) {
    const StructuredSet s = random_standard_1d(rng);
    const auto c = classify_1d(s, box2);
    ok1 += c.standard && same_description(*c.reconstruction, s) ? 1 : 0;
  }
  for (int i = 0; i < 50; ++i) {
    const StructuredSet s = random_theorem_2d(rng);
    const auto c = classify_2d(s, box4);
    ok2 += c.classified && same_description(*c.reconstruction, s) ? 1 : 0;
  }
  const auto mixed = classify_2d(fixture(all, "mixed-strips").set, box4);
  const bool mixed_ok = mixed.classified && mixed.tiling_strips == std::vector<std::int64_t>{1} &&
                        mixed.overlap_strips.size() == 5;  // rows -3..2 without 1 inside the window
  return {ok1 == 50 && ok2 == 50 && mixed_ok,
          std::to_string(ok1) + "/50 one-dimensional, " + std::to_string(ok2) +
              "/50 two-dimensional exact; mixed fixture: " + std::to_string(mixed.tiling_strips.size()) +
              " tiling strip, " + std::to_string(mixed.overlap_strips.size()) + " overlap strips"};
}

Outcome gamma_lemmas(const std::vector<Fixture>& all) {
  const BoxRegion freq = BoxRegion::centered(2, 3.0);
  std::size_t fixtures = 0, squares = 0, violations = 0, slices = 0;
  for (const auto& f : all) {
    if (f.d() != 2 || !f.verified_onb()) continue;
    ++fixtures;
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        const double a1 = -1.0 + 0.5 * i, a2 = -1.0 + 0.5 * j;
        const BoxRegion c({a1, a2}, {a1 + 1.0, a2 + 1.0});
        ++squares;
        const auto lambdas = gamma(f.set, c, freq);
        if (!check_tiling(lambdas, freq).tiles()) ++violations;
        for (const auto& l : lambdas) {
          ++slices;
          try {
            if (t_slice(f.set, c, l).size() > 1) ++violations;
          } catch (const InvariantViolation&) {
            ++violations;
          }
        }
      }
    }
  }
  return {violations == 0 && fixtures > 0,
          std::to_string(fixtures) + " fixtures, " + std::to_string(squares) + " squares, " + std::to_string(slices) +
              " slices, " + std::to_string(violations) + " violations"};
}

Outcome pseudo_detection(const std::vector<Fixture>& all) {
  const BoxRegion box = BoxRegion::centered(4, 3.0);
  std::size_t checked = 0, found = 0;
  for (const auto& f : all) {
    if (f.generator() != "pseudo_standard") continue;
    ++checked;
    const auto p = check_pseudo_structure(f.set, 1, box);
    if (p.pseudo_standard) {
      const auto rebuilt = make_pseudo_standard(1, 1, *p.base, p.children);
      if (detail::same_points(enumerate(rebuilt, box), enumerate(f.set, box), kIntegerTolerance, nullptr)) ++found;
    }
  }
  const auto mixed = check_pseudo_structure(fixture(all, "mixed-strips").set, 1, box);
  return {checked > 0 && found == checked && !mixed.pseudo_standard,
          std::to_string(found) + "/" + std::to_string(checked) + " pseudo-standard fixtures decomposed; mixed: " +
              (mixed.pseudo_standard ? "true" : "false (" + mixed.reason + ")")};
}

Outcome secant_desk_check() {
  const Window w = Window::hyperbolic_secant();
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> mag(std::log(1e-3), std::log(10.0));
  std::size_t axis_hits = 0;
  for (int i = 0; i < 2000; ++i) {
    const double x = std::exp(mag(rng)) * (rng() % 2 ? 1.0 : -1.0);
    const bool on_t_axis = i % 2 == 0;
    if (in_zero_set(w, on_t_axis ? x : 0.0, on_t_axis ? 0.0 : x)) ++axis_hits;
  }
  std::size_t grid_mismatches = 0, zeros = 0, magnitude_mismatches = 0;
  for (int i = 0; i < 200; ++i) {
    for (int j = 0; j < 200; ++j) {
      const double t = -10.0 + 0.1 * i, nu = -10.0 + 0.1 * j;
      const double p = t * nu;
      const bool expected = std::abs(p - std::round(p)) <= 1e-9 && std::round(p) != 0.0;
      const bool got = in_zero_set(w, t, nu);
      if (got != expected) ++grid_mismatches;
      if (got) {
        ++zeros;
        if (secant_stft_magnitude(t, nu) > 1e-6) ++magnitude_mismatches;
      }
    }
  }
  return {axis_hits == 0 && grid_mismatches == 0 && magnitude_mismatches == 0 && zeros > 0,
          "axis samples in the zero set: " + std::to_string(axis_hits) + "/2000; grid mismatches " +
              std::to_string(grid_mismatches) + "/40000 (" + std::to_string(zeros) + " zeros, " +
              std::to_string(magnitude_mismatches) + " with non-vanishing magnitude)"};
}

Outcome density(const std::vector<Fixture>& all) {
  std::size_t checked = 0;
  double worst = 0.0;
  std::string bad;
  for (const auto& f : all) {
    if (!f.verified_onb()) continue;
    ++checked;
    for (double T : {4.0, 8.0}) {
      const double est = estimate_density(f.set, T);
      const double bound = 2.0 * static_cast<double>(2 * f.d()) / T;
      worst = std::max(worst, std::abs(est - 1.0) / bound);
      if (std::abs(est - 1.0) > bound) bad += " " + f.name + "@T=" + fmt(T);
    }
  }
  return {bad.empty() && checked > 0, std::to_string(checked) + " fixtures, worst |D - 1| / bound = " + fmt(worst) +
                                          (bad.empty() ? "" : "; failing:" + bad)};
}

}  // namespace

int main() {
  std::vector<Fixture> fixtures;
  try {
    fixtures = load_fixtures();
  } catch (const std::exception& e) {
    std::cout << "FAIL fixtures: " << e.what() << "\n";
    return 1;
  }
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"STFT closed form vs quadrature", stft_closed_form},
      {"tiling oracle equivalence", tiling_oracle},
      {"rows-form counterexample", [&] { return counterexample(fixtures); }},
      {"generator soundness", [&] { return generator_soundness(fixtures); }},
      {"classifier round trips", [&] { return classifier_round_trips(fixtures); }},
      {"gamma / t-slice lemmas", [&] { return gamma_lemmas(fixtures); }},
      {"pseudo-structure detection", [&] { return pseudo_detection(fixtures); }},
      {"hyperbolic secant desk check", secant_desk_check},
      {"density", [&] { return density(fixtures); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS " : "FAIL ") << i + 1 << " " << criteria[i].first << ": " << o.detail << " ["
              << fmt(secs) << " s]" << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
