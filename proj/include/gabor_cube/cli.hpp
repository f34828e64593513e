#ifndef GABOR_CUBE_CLI_HPP
#define GABOR_CUBE_CLI_HPP

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "classify.hpp"
#include "errors.hpp"
#include "frame.hpp"
#include "generators.hpp"
#include "ortho.hpp"
#include "report_json.hpp"
#include "sets.hpp"
#include "sets_json.hpp"
#include "stft.hpp"
#include "tiling.hpp"

namespace gabor_cube::cli {

enum ExitCode : int { pass = 0, fail = 1, usage = 2 };

struct RunConfig {
  std::string subcommand;  // e.g. "check onb", "sweep tiling"
  std::string input_path;
  std::string inline_json;
  double radius = 3.0;
  double eps_int = kIntegerTolerance;
  double quad_tol = kDefaultQuadratureTolerance;
  std::string format = "json";
  std::string window = "cube";
  std::uint64_t seed = 1;
  std::size_t count = 100;
  double cutoff = 0.0;
  double resolution = 1.0 / 16.0;        // csv coverage grid
  double sweep_resolution = 1.0 / 64.0;  // grid oracle in tiling sweeps
  std::size_t pseudo_m = 0;
  std::vector<double> density_T{4.0, 8.0};
  std::vector<double> t, nu;
};

namespace detail {

inline std::string read_input(const RunConfig& c) {
  if (!c.inline_json.empty() && !c.input_path.empty()) throw DomainError("give either --input or --json, not both");
  if (!c.inline_json.empty()) return c.inline_json;
  if (c.input_path.empty()) throw DomainError("an input set is required (--input FILE or --json TEXT)");
  if (c.input_path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(c.input_path);
  if (!in) throw DomainError("cannot read " + c.input_path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline StructuredSet load_set(const RunConfig& c) { return set_from_text(read_input(c)); }

inline Window window_for(const RunConfig& c, std::size_t ambient) {
  if (ambient % 2 != 0) throw DomainError("a time-frequency set needs an even ambient dimension");
  if (c.window == "secant") {
    if (ambient != 2) throw DomainError("the hyperbolic secant window is one-dimensional");
    return Window::hyperbolic_secant();
  }
  return Window::unit_cube(static_cast<int>(ambient / 2));
}

inline void require_tiling_radius(const RunConfig& c) {
  if (c.radius < 2.0) throw DomainError("--radius must be at least 2 for tiling-dependent commands");
}

inline void print(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

inline void require_json_format(const RunConfig& c) {
  if (c.format != "json") throw DomainError("csv output is not available for '" + c.subcommand + "'");
}

inline int eval_stft(const RunConfig& c, std::ostream& out) {
  require_json_format(c);
  if (c.t.empty() || c.t.size() != c.nu.size()) throw DomainError("--t and --nu need the same non-zero length");
  const Window w = c.window == "secant" ? Window::hyperbolic_secant() : Window::unit_cube(static_cast<int>(c.t.size()));
  const auto quad = stft_quadrature(w, c.t, c.nu, c.quad_tol);
  Json j = {{"window", w.name()}, {"t", c.t}, {"nu", c.nu}, {"in_zero_set", in_zero_set(w, c.t, c.nu, c.eps_int)},
            {"quadrature", {{"value", {quad.value.real(), quad.value.imag()}}, {"error_estimate", quad.abs_error}}}};
  if (w.is_cube()) {
    const Complex v = stft_nd(c.t, c.nu);
    j["value"] = {v.real(), v.imag()};
    j["magnitude"] = std::abs(v);
  } else {
    j["magnitude"] = secant_stft_magnitude(c.t[0], c.nu[0]);
  }
  print(out, j);
  return pass;
}

inline int check_ortho(const RunConfig& c, std::ostream& out) {
  require_json_format(c);
  const StructuredSet s = load_set(c);
  const Window w = window_for(c, s.ambient());
  const BoxRegion box = BoxRegion::centered(s.ambient(), c.radius);
  const OrthoReport r = check_orthogonality(enumerate(s, box), w, c.eps_int, c.quad_tol);
  Json j = to_json(r);
  j["window"] = w.name();
  j["box"] = to_json(box);
  print(out, j);
  return r.verdict ? pass : fail;
}

inline int check_tiling_cmd(const RunConfig& c, std::ostream& out) {
  require_tiling_radius(c);
  const StructuredSet s = load_set(c);
  const BoxRegion box = BoxRegion::centered(s.ambient(), c.radius);
  const auto points = enumerate(s, box);
  const CoverageReport r = check_tiling(points, box, c.eps_int);
  if (c.format == "csv") {
    if (s.ambient() != 2) throw DomainError("coverage grids are emitted for sets in R^2 only");
    const GridFunction g = convolution_oracle(unit_cube_grid(2, c.resolution), points, r.region, c.resolution);
    out << "x,y,count\n";
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Point x = g.node(i);
      out << x[0] << ',' << x[1] << ',' << g.values[i] << '\n';
    }
  } else {
    print(out, to_json(r));
  }
  return r.tiles() ? pass : fail;
}

inline int check_onb_cmd(const RunConfig& c, std::ostream& out) {
  require_tiling_radius(c);
  const StructuredSet s = load_set(c);
  const Window w = window_for(c, s.ambient());
  const std::size_t d = s.ambient() / 2;
  const BoxRegion box = BoxRegion::centered(s.ambient(), c.radius);
  if (c.format == "csv") {
    if (!(c.cutoff > 0.0)) throw DomainError("csv Parseval convergence needs --cutoff > 0");
    const OnbVerdict v = check_onb(s, w, {}, box, c.quad_tol, c.eps_int);
    const auto f = TestFunction::cube_indicator(d, 0.3, 0.8);
    const auto r = parseval_sum(f, s, w, parseval_box(f, c.cutoff), true, c.quad_tol);
    out << "radius,value\n" << std::setprecision(17);
    for (const auto& [radius, value] : r.shells) out << radius << ',' << value << '\n';
    return v.verdict ? pass : fail;
  }
  const OnbVerdict v = check_onb(s, w, box, c.quad_tol, c.eps_int);
  Json j = to_json(v);
  if (c.cutoff > 0.0) {
    const auto f = TestFunction::cube_indicator(d, 0.3, 0.8);
    const auto r = parseval_sum(f, s, w, parseval_box(f, c.cutoff), false, c.quad_tol);
    j["parseval_truncated"] = {{"test", f.id()},   {"cutoff", c.cutoff}, {"sum", r.sum},
                               {"norm2", r.norm2}, {"ratio", r.ratio},   {"terms", r.terms}};
  }
  print(out, j);
  return v.verdict ? pass : fail;
}

inline int classify_cmd(const RunConfig& c, std::ostream& out) {
  require_json_format(c);
  require_tiling_radius(c);
  const StructuredSet s = load_set(c);
  const BoxRegion box = BoxRegion::centered(s.ambient(), c.radius);
  try {
    if (c.pseudo_m > 0) {
      const PseudoStructure p = check_pseudo_structure(s, c.pseudo_m, box, c.eps_int);
      print(out, to_json(p));
      return p.pseudo_standard ? pass : fail;
    }
    if (s.ambient() == 2) {
      const Classification1D r = classify_1d(s, box, c.eps_int);
      print(out, to_json(r));
      return r.standard ? pass : fail;
    }
    if (s.ambient() == 4) {
      const Classification2D r = classify_2d(s, box, c.eps_int);
      print(out, to_json(r));
      return r.classified ? pass : fail;
    }
  } catch (const PreconditionError& e) {
    print(out, {{"classified", false}, {"reason", e.what()}});
    return fail;
  }
  throw DomainError("classify handles sets in R^2 and R^4; use --pseudo-m for higher dimensions");
}

inline int construct_cmd(const RunConfig& c, std::ostream& out) {
  require_json_format(c);
  print(out, canonical_json(load_set(c)));
  return pass;
}

inline int density_cmd(const RunConfig& c, std::ostream& out) {
  require_json_format(c);
  const StructuredSet s = load_set(c);
  Json rows = Json::array();
  for (double T : c.density_T) {
    if (!(T > 0.0)) throw DomainError("--T values must be positive");
    rows.push_back({{"T", T}, {"density", estimate_density(s, T)}});
  }
  print(out, {{"ambient", s.ambient()}, {"estimates", std::move(rows)}});
  return pass;
}

inline int sweep_stft_cmd(const RunConfig& c, std::ostream& out) {
  require_json_format(c);
  const auto r = stft_sweep(c.count, c.seed, c.quad_tol);
  print(out, {{"samples", r.samples},
              {"seed", c.seed},
              {"max_error", r.max_error},
              {"value_failures", r.value_failures},
              {"zero_set_disagreements", r.zero_set_disagreements}});
  return r.value_failures == 0 && r.zero_set_disagreements == 0 ? pass : fail;
}

inline int sweep_tiling_cmd(const RunConfig& c, std::ostream& out) {
  require_json_format(c);
  require_tiling_radius(c);
  const auto r = tiling_sweep(c.count, c.seed, c.radius, c.sweep_resolution);
  print(out, {{"families", r.families},
              {"perturbations", r.perturbations},
              {"seed", c.seed},
              {"sweep_failures", r.sweep_failures},
              {"oracle_failures", r.oracle_failures},
              {"disagreements", r.disagreements}});
  return r.sweep_failures == 0 && r.oracle_failures == 0 && r.disagreements == 0 ? pass : fail;
}

}  // namespace detail

/// Executes a parsed configuration. Library exceptions propagate.
inline int execute(const RunConfig& c, std::ostream& out) {
  using namespace detail;
  if (c.subcommand == "eval-stft") return eval_stft(c, out);
  if (c.subcommand == "check ortho") return check_ortho(c, out);
  if (c.subcommand == "check tiling") return check_tiling_cmd(c, out);
  if (c.subcommand == "check onb") return check_onb_cmd(c, out);
  if (c.subcommand == "classify") return classify_cmd(c, out);
  if (c.subcommand == "construct") return construct_cmd(c, out);
  if (c.subcommand == "density") return density_cmd(c, out);
  if (c.subcommand == "sweep stft") return sweep_stft_cmd(c, out);
  if (c.subcommand == "sweep tiling") return sweep_tiling_cmd(c, out);
  throw DomainError("unknown subcommand '" + c.subcommand + "'");
}

/// Parses argv, runs, and maps errors to exit code 2 with a message on `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Gabor orthonormal bases for the unit-cube window", "gabor_cube"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub, bool needs_input) {
    if (needs_input) {
      sub->add_option("-i,--input", c.input_path, "set description JSON file ('-' for stdin)");
      sub->add_option("--json", c.inline_json, "inline set description JSON");
    }
    sub->add_option("-r,--radius", c.radius, "enumeration box [-R,R)^n")->capture_default_str();
    sub->add_option("--eps-int", c.eps_int, "integer-membership tolerance")->capture_default_str();
    sub->add_option("--quad-tol", c.quad_tol, "quadrature tolerance")->capture_default_str();
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    sub->add_option("--window", c.window, "analysis window")
        ->check(CLI::IsMember({"cube", "secant"}))
        ->capture_default_str();
    sub->add_option("--seed", c.seed, "seed for randomized sweeps")->capture_default_str();
  };
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& full, const std::string& help,
                  bool needs_input) {
    CLI::App* sub = parent->add_subcommand(name, help);
    add_common(sub, needs_input);
    sub->callback([&c, full] { c.subcommand = full; });
    return sub;
  };

  auto* stft = leaf(&app, "eval-stft", "eval-stft", "evaluate V_g g(t, nu) in closed form and by quadrature", false);
  stft->add_option("--t", c.t, "time shift (one value per dimension)")->required()->delimiter(',');
  stft->add_option("--nu", c.nu, "frequency shift (one value per dimension)")->required()->delimiter(',');

  auto* check = app.add_subcommand("check", "verification of a time-frequency set");
  check->require_subcommand(1);
  leaf(check, "ortho", "check ortho", "mutual orthogonality via the zero set", true);
  auto* tiling = leaf(check, "tiling", "check tiling", "packing and tiling of the window by unit cubes", true);
  tiling->add_option("--resolution", c.resolution, "grid spacing for csv coverage output")->capture_default_str();
  auto* onb = leaf(check, "onb", "check onb", "orthonormal basis verdict with Parseval evidence", true);
  onb->add_option("--cutoff", c.cutoff, "frequency cutoff for a truncated Parseval sum (0: off)")
      ->capture_default_str();

  auto* cls = leaf(&app, "classify", "classify", "recover the structure of an orthonormal basis", true);
  cls->add_option("--pseudo-m", c.pseudo_m, "test the pseudo-standard split with this m instead")
      ->capture_default_str();
  leaf(&app, "construct", "construct", "validate a description and print its canonical JSON", true);
  auto* dens = leaf(&app, "density", "density", "point density of the set on [-T,T)^n", true);
  dens->add_option("--T", c.density_T, "half-widths")->delimiter(',')->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "seeded randomized property sweeps");
  sweep->require_subcommand(1);
  leaf(sweep, "stft", "sweep stft", "closed form against quadrature", false)
      ->add_option("--count", c.count, "samples")
      ->capture_default_str();
  auto* st = leaf(sweep, "tiling", "sweep tiling", "exact sweep against the grid oracle", false);
  st->add_option("--count", c.count, "families")->capture_default_str();
  st->add_option("--resolution", c.sweep_resolution, "oracle grid spacing")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return pass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return pass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return usage;
  }
  try {
    return execute(c, out);
  } catch (const nlohmann::json::parse_error& e) {
    err << "error: malformed JSON at byte " << e.byte << ": " << e.what() << "\n";
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return usage;
}

}  // namespace gabor_cube::cli

#endif  // GABOR_CUBE_CLI_HPP
