#ifndef GABOR_CUBE_REPORT_JSON_HPP
#define GABOR_CUBE_REPORT_JSON_HPP

#include <string>
#include <vector>

#include "classify.hpp"
#include "frame.hpp"
#include "ortho.hpp"
#include "sets_json.hpp"
#include "tiling.hpp"

namespace gabor_cube {

inline Json to_json(const BoxRegion& b) { return {{"lo", b.lo()}, {"hi", b.hi()}}; }

inline Json to_json(const CoverageReport& r) {
  Json witnesses = Json::array();
  for (const auto& w : r.witnesses) {
    Json item = {{"kind", w.kind == CoverageWitness::Kind::overlap ? "overlap" : "uncovered"},
                 {"location", w.location}};
    if (w.kind == CoverageWitness::Kind::overlap) item["pair"] = w.points;
    witnesses.push_back(std::move(item));
  }
  return {{"verdict", to_string(r.verdict)}, {"region", to_json(r.region)}, {"margin", r.margin},
          {"witnesses", std::move(witnesses)}};
}

inline Json to_json(const OrthoReport& r) {
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"p", v.p}, {"q", v.q}, {"difference", v.difference}, {"inner_product", v.inner_product}});
  }
  Json out = {{"verdict", r.verdict},         {"points", r.points},     {"pairs_tested", r.pairs_tested},
              {"violations", std::move(violations)}, {"truncated", r.truncated}};
  out["witness"] = r.witness.empty() ? Json(nullptr) : Json(r.witness);
  return out;
}

inline Json to_json(const OnbVerdict& v) {
  Json ratios = Json::array();
  for (const auto& r : v.parseval_ratios) {
    ratios.push_back({{"test", r.id}, {"sum", r.sum}, {"norm2", r.norm2}, {"ratio", r.ratio}});
  }
  return {{"verdict", v.verdict},        {"ortho", v.ortho},
          {"ortho_report", to_json(v.ortho_report)}, {"tiling", to_json(v.tiling)},
          {"parseval", std::move(ratios)}, {"box", to_json(v.box)}};
}

inline Json to_json(const Classification1D& c) {
  Json out = {{"dimension", 1}, {"standard", c.standard}, {"tiling_form", to_string(c.tiling_form)}};
  if (c.standard) {
    out["time_offset"] = c.time_offset;
    out["spectra_offsets"] = detail::param_to_json(c.spectra_offsets, true);
    out["reconstruction"] = canonical_json(*c.reconstruction);
  } else {
    out["reason"] = c.reason;
    out["witness"] = c.witness;
  }
  return out;
}

inline Json to_json(const Classification2D& c) {
  Json out = {{"dimension", 2}, {"classified", c.classified}};
  if (!c.classified) {
    out["reason"] = c.reason;
    out["witness"] = c.witness;
    return out;
  }
  out["axis"] = to_string(c.axis);
  out["degenerate"] = c.degenerate;
  out["anchor"] = c.anchor;
  out["J"] = c.overlap_strips;
  out["J_prime"] = c.tiling_strips;
  out["t_dependence"] = c.t_dependence;
  out["nu_k_dependence"] = c.nu_k_dependence;
  out["labels"] = c.labels;
  out["scope"] = "observed strips of the window";
  out["reconstruction"] = canonical_json(*c.reconstruction);
  return out;
}

inline Json to_json(const PseudoStructure& p) {
  Json out = {{"pseudo_standard", p.pseudo_standard}, {"m", p.m}, {"n", p.n},
              {"projection_tiling", to_json(p.projection_tiling)}};
  if (p.pseudo_standard) {
    out["decomposition"] = canonical_json(
        make_pseudo_standard(static_cast<int>(p.m), static_cast<int>(p.n), *p.base, p.children));
  } else {
    out["reason"] = p.reason;
    if (!p.failing_child.empty()) out["failing_child"] = p.failing_child;
  }
  return out;
}

}  // namespace gabor_cube

#endif  // GABOR_CUBE_REPORT_JSON_HPP
