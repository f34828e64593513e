#ifndef GABOR_CUBE_SETS_JSON_HPP
#define GABOR_CUBE_SETS_JSON_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "sets.hpp"

namespace gabor_cube {

using Json = nlohmann::json;

// Schema (all maps keyed by "[k,...]" strings):
//   {"type": "explicit", "ambient": n, "points": [[...], ...]}
//   {"type": "lattice", "dimension": n, "offset": [...]}
//   {"type": "cube_tiling_2d", "axis": "rows"|"columns", "offsets": P, "shift": [s1, s2]}
//   {"type": "standard", "d": d, "time_set": S, "spectra": T}
//   {"type": "pseudo_standard", "m": m, "n": n, "base": S, "children": T}
//   {"type": "two_d_theorem", "axis": "horizontal"|"vertical", "J": [...], "J_prime": [...],
//    "default_membership": "tiling"|"overlap", "t": P, "mu": P, "nu": P,
//    "strip_shift": P, "tile_strips": T}
// with P = {"table": {key: real}, "default": real} and
//      T = {"table": {key: S}, "default": S}.
// Unknown keys (e.g. "meta", "description") are ignored.

namespace detail {

inline const Json& require_key(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw ConstructionError(path + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw ConstructionError(path + ": missing key \"" + key + "\"");
  return *it;
}

template <class T>
T get_as(const Json& j, const std::string& path) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConstructionError(path + ": " + e.what());
  }
}

inline double get_finite(const Json& j, const std::string& path) {
  if (!j.is_number()) throw ConstructionError(path + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConstructionError(path + ": non-finite number");
  return v;
}

inline std::vector<double> get_vector(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ConstructionError(path + ": expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_finite(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline Json param_to_json(const IndexedParam& p, bool canonical) {
  const IndexedParam q = canonical ? p.canonical() : p;
  Json table = Json::object();
  for (const auto& [key, v] : q.table()) table[format_key(key)] = v;
  Json out = {{"table", table}};
  if (!canonical || q.default_value() != 0.0) out["default"] = q.default_value();
  return out;
}

inline IndexedParam param_from_json(const Json* j, std::size_t arity, const std::string& path) {
  if (!j) return IndexedParam(arity);
  if (!j->is_object()) throw ConstructionError(path + ": expected {\"table\": ..., \"default\": ...}");
  double def = 0.0;
  if (auto it = j->find("default"); it != j->end()) def = get_finite(*it, path + ".default");
  IndexedParam p(arity, def);
  if (auto it = j->find("table"); it != j->end()) {
    if (!it->is_object()) throw ConstructionError(path + ".table: expected an object");
    for (const auto& [k, v] : it->items()) p.set(parse_key(k), get_finite(v, path + ".table." + k));
  }
  return p;
}

inline const Json* optional_key(const Json& j, const char* key) {
  const auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

}  // namespace detail

Json to_json(const StructuredSet& s, bool canonical = false);
StructuredSet set_from_json(const Json& j, const std::string& path = "$");

namespace detail {

inline Json table_to_json(const IndexedTable<StructuredSet>& t, bool canonical,
                          const std::function<bool(const IntKey&)>& keep = nullptr,
                          const std::optional<Json>& implicit_default = std::nullopt) {
  Json def;
  if (t.default_value()) def = to_json(*t.default_value(), canonical);
  Json table = Json::object();
  for (const auto& [key, s] : t.table()) {
    if (keep && !keep(key)) continue;
    Json v = to_json(s, canonical);
    if (canonical && !def.is_null() && v == def) continue;
    table[format_key(key)] = std::move(v);
  }
  Json out = {{"table", table}};
  if (!def.is_null() && !(canonical && implicit_default && def == *implicit_default)) {
    out["default"] = std::move(def);
  }
  return out;
}

inline IndexedTable<StructuredSet> table_from_json(const Json* j, const std::string& path) {
  IndexedTable<StructuredSet> t;
  if (!j) return t;
  if (!j->is_object()) throw ConstructionError(path + ": expected {\"table\": ..., \"default\": ...}");
  if (auto it = j->find("default"); it != j->end() && !it->is_null()) {
    t.set_default(set_from_json(*it, path + ".default"));
  }
  if (auto it = j->find("table"); it != j->end()) {
    if (!it->is_object()) throw ConstructionError(path + ".table: expected an object");
    for (const auto& [k, v] : it->items()) t.set(parse_key(k), set_from_json(v, path + ".table." + k));
  }
  return t;
}

}  // namespace detail

/// JSON form of a set. The canonical form drops every entry that equals its
/// default (and, for the 2D family, parameters unused by a strip's type), so
/// equal sets built from equal data serialize identically.
inline Json to_json(const StructuredSet& s, bool canonical) {
  Json out;
  out["type"] = to_string(s.kind());
  std::visit(
      [&](const auto& spec) {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, ExplicitSpec>) {
          out["ambient"] = spec.ambient;
          out["points"] = spec.points;
        } else if constexpr (std::is_same_v<T, LatticeSpec>) {
          out["dimension"] = spec.offset.size();
          bool zero = true;
          for (double c : spec.offset) zero = zero && c == 0.0;
          if (!canonical || !zero) out["offset"] = spec.offset;
        } else if constexpr (std::is_same_v<T, CubeTiling2DSpec>) {
          out["axis"] = to_string(spec.axis);
          out["offsets"] = detail::param_to_json(spec.offsets, canonical);
          if (!canonical || spec.shift[0] != 0.0 || spec.shift[1] != 0.0) out["shift"] = spec.shift;
        } else if constexpr (std::is_same_v<T, StandardSpec>) {
          out["d"] = spec.d;
          out["time_set"] = to_json(*spec.time_set, canonical);
          out["spectra"] = detail::table_to_json(spec.spectra, canonical);
        } else if constexpr (std::is_same_v<T, PseudoStandardSpec>) {
          out["m"] = spec.m;
          out["n"] = spec.n;
          out["base"] = to_json(*spec.base, canonical);
          out["children"] = detail::table_to_json(spec.children, canonical);
        } else {
          out["axis"] = to_string(spec.axis);
          out["default_membership"] = to_string(spec.default_membership);
          std::vector<std::int64_t> overlap(spec.overlap_strips.begin(), spec.overlap_strips.end());
          std::vector<std::int64_t> tiling(spec.tiling_strips.begin(), spec.tiling_strips.end());
          if (canonical) {
            // membership equal to the default is implicit
            (spec.default_membership == StripType::overlap ? overlap : tiling).clear();
          }
          out["J"] = overlap;
          out["J_prime"] = tiling;
          if (!canonical) {
            out["t"] = detail::param_to_json(spec.t, false);
            out["mu"] = detail::param_to_json(spec.mu, false);
            out["nu"] = detail::param_to_json(spec.nu, false);
            out["strip_shift"] = detail::param_to_json(spec.strip_shift, false);
            out["tile_strips"] = detail::table_to_json(spec.tile_strips, false);
            return;
          }
          auto overlap_key = [&](std::int64_t n) { return spec.membership(n) == StripType::overlap; };
          auto filtered = [&](const IndexedParam& p, std::size_t strip_pos, bool want_overlap) {
            IndexedParam q(p.arity(), p.default_value());
            for (const auto& [key, v] : p.table()) {
              if (overlap_key(key[strip_pos]) == want_overlap) q.set(key, v);
            }
            return detail::param_to_json(q, true);
          };
          out["t"] = filtered(spec.t, 0, true);
          out["mu"] = filtered(spec.mu, 2, true);
          out["nu"] = filtered(spec.nu, 0, true);
          out["strip_shift"] = filtered(spec.strip_shift, 0, false);
          out["tile_strips"] = detail::table_to_json(
              spec.tile_strips, true, [&](const IntKey& key) { return !overlap_key(key[1]); },
              to_json(make_lattice(2), true));
        }
      },
      s.node().spec);
  return out;
}

inline Json canonical_json(const StructuredSet& s) { return to_json(s, true); }

/// Equality of the canonical descriptions (not of the point sets).
inline bool same_description(const StructuredSet& a, const StructuredSet& b) {
  return canonical_json(a) == canonical_json(b);
}

inline TilingAxis tiling_axis_from_string(const std::string& s, const std::string& path) {
  if (s == "rows") return TilingAxis::rows;
  if (s == "columns") return TilingAxis::columns;
  throw ConstructionError(path + ": axis must be \"rows\" or \"columns\", got \"" + s + "\"");
}

inline StripAxis strip_axis_from_string(const std::string& s, const std::string& path) {
  if (s == "horizontal") return StripAxis::horizontal;
  if (s == "vertical") return StripAxis::vertical;
  throw ConstructionError(path + ": axis must be \"horizontal\" or \"vertical\", got \"" + s + "\"");
}

inline StripType strip_type_from_string(const std::string& s, const std::string& path) {
  if (s == "overlap") return StripType::overlap;
  if (s == "tiling") return StripType::tiling;
  throw ConstructionError(path + ": membership must be \"overlap\" or \"tiling\", got \"" + s + "\"");
}

inline StructuredSet set_from_json(const Json& j, const std::string& path) {
  using namespace detail;
  const auto type = get_as<std::string>(require_key(j, "type", path), path + ".type");
  auto int_of = [&](const char* key) {
    return get_as<int>(require_key(j, key, path), path + "." + key);
  };
  if (type == "explicit") {
    const auto ambient = get_as<std::size_t>(require_key(j, "ambient", path), path + ".ambient");
    const Json& pts = require_key(j, "points", path);
    if (!pts.is_array()) throw ConstructionError(path + ".points: expected an array");
    std::vector<Point> points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      points.push_back(get_vector(pts[i], path + ".points[" + std::to_string(i) + "]"));
    }
    return make_explicit(ambient, std::move(points));
  }
  if (type == "lattice") {
    if (const Json* off = optional_key(j, "offset")) {
      auto offset = get_vector(*off, path + ".offset");
      if (const Json* dim = optional_key(j, "dimension");
          dim && get_as<std::size_t>(*dim, path + ".dimension") != offset.size()) {
        throw DomainError(path + ": lattice offset length does not match dimension");
      }
      return make_lattice(std::move(offset));
    }
    return make_lattice(get_as<std::size_t>(require_key(j, "dimension", path), path + ".dimension"));
  }
  if (type == "cube_tiling_2d") {
    const auto axis = tiling_axis_from_string(get_as<std::string>(require_key(j, "axis", path), path + ".axis"),
                                              path + ".axis");
    std::array<double, 2> shift{0.0, 0.0};
    if (const Json* sh = optional_key(j, "shift")) {
      const auto v = get_vector(*sh, path + ".shift");
      if (v.size() != 2) throw ConstructionError(path + ".shift: expected two numbers");
      shift = {v[0], v[1]};
    }
    return make_cube_tiling_2d(axis, param_from_json(optional_key(j, "offsets"), 1, path + ".offsets"), shift);
  }
  if (type == "standard") {
    return make_standard(int_of("d"), set_from_json(require_key(j, "time_set", path), path + ".time_set"),
                         table_from_json(&require_key(j, "spectra", path), path + ".spectra"));
  }
  if (type == "pseudo_standard") {
    return make_pseudo_standard(int_of("m"), int_of("n"),
                                set_from_json(require_key(j, "base", path), path + ".base"),
                                table_from_json(&require_key(j, "children", path), path + ".children"));
  }
  if (type == "two_d_theorem") {
    TwoDTheoremSpec spec;
    spec.axis = strip_axis_from_string(get_as<std::string>(require_key(j, "axis", path), path + ".axis"),
                                       path + ".axis");
    if (const Json* dm = optional_key(j, "default_membership")) {
      spec.default_membership = strip_type_from_string(get_as<std::string>(*dm, path + ".default_membership"),
                                                       path + ".default_membership");
    }
    if (const Json* js = optional_key(j, "J")) {
      for (auto n : get_as<std::vector<std::int64_t>>(*js, path + ".J")) spec.overlap_strips.insert(n);
    }
    if (const Json* js = optional_key(j, "J_prime")) {
      for (auto n : get_as<std::vector<std::int64_t>>(*js, path + ".J_prime")) spec.tiling_strips.insert(n);
    }
    spec.t = param_from_json(optional_key(j, "t"), 2, path + ".t");
    spec.mu = param_from_json(optional_key(j, "mu"), 3, path + ".mu");
    spec.nu = param_from_json(optional_key(j, "nu"), 1, path + ".nu");
    spec.strip_shift = param_from_json(optional_key(j, "strip_shift"), 1, path + ".strip_shift");
    spec.tile_strips = table_from_json(optional_key(j, "tile_strips"), path + ".tile_strips");
    return make_2d_theorem(std::move(spec));
  }
  throw ConstructionError(path + ".type: unknown set type \"" + type + "\"");
}

/// Parses JSON text; syntax errors surface as nlohmann::json::parse_error
/// (which carries the byte position).
inline StructuredSet set_from_text(const std::string& text) { return set_from_json(Json::parse(text)); }

}  // namespace gabor_cube

#endif  // GABOR_CUBE_SETS_JSON_HPP
