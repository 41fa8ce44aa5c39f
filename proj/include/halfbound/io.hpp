#pragma once
/**
 * @file io.hpp
 * @brief JSON descriptors for potentials and families, and JSON encodings of
 * results.
 *
 * Descriptor: {"kind": "exponential_well", "params": {"a": 1, "q": 2.4}}.
 * A family descriptor is the same object with the strength (q/V0, or nu for
 * the soliton well) left out.
 */

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "halfbound/critical.hpp"
#include "halfbound/error.hpp"
#include "halfbound/potentials.hpp"
#include "halfbound/scatter.hpp"

namespace halfbound {

using json = nlohmann::json;

/// Parses inline JSON when the text starts with '{', otherwise reads a file.
inline json load_descriptor(std::string_view text_or_path) {
  std::string text(text_or_path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw InputError("empty potential descriptor");
  if (text[first] != '{') {
    std::ifstream in(text);
    if (!in) throw InputError("cannot open descriptor file '" + text + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed descriptor: ") + e.what());
  }
}

namespace detail {

inline std::pair<Kind, Params> parse_descriptor(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw InputError("descriptor needs a string 'kind'");
  const Kind kind = parse_kind(j["kind"].get<std::string>());
  Params params;
  if (j.contains("params")) {
    if (!j["params"].is_object()) throw InputError("descriptor 'params' must be an object");
    for (const auto& [key, value] : j["params"].items()) {
      if (!value.is_number()) throw InputError("parameter '" + key + "' must be a number");
      params[key] = value.get<double>();
    }
  }
  return {kind, std::move(params)};
}

}  // namespace detail

inline Potential potential_from_json(const json& j, double tail_tol = kDefaultTailTol) {
  auto [kind, params] = detail::parse_descriptor(j);
  return make_potential(kind, std::move(params), tail_tol);
}

inline Family family_from_json(const json& j, double tail_tol = kDefaultTailTol) {
  auto [kind, params] = detail::parse_descriptor(j);
  if (kind == Kind::DeltaWell) throw InputError("the delta well has no numeric family");
  for (std::string_view fixed : {"q", "V0", "nu"})
    if (params.contains(fixed))
      throw InputError("family descriptor must leave the strength free (drop '" + std::string(fixed) + "')");
  Family f{kind, std::move(params), tail_tol};
  // Validate the remaining parameters once with a representative strength.
  (void)f.at(f.strength_floor() + 1.0);
  return f;
}

inline json to_json(const Potential& p) {
  json params = json::object();
  for (const auto& [k, v] : p.params()) params[k] = v;
  return {{"kind", kind_name(p.kind())}, {"params", params}};
}

inline json to_json(const Family& f) {
  json params = json::object();
  for (const auto& [k, v] : f.fixed) params[k] = v;
  return {{"kind", kind_name(f.kind)}, {"params", params}, {"strength", f.strength()}};
}

inline json to_json(const GridConfig& g) {
  return {{"step", g.step}, {"slices", g.slices}, {"extrapolate", g.extrapolate}, {"tail_tol", g.tail_tol}};
}

inline json to_json(const ScatterResult& r) {
  json j{{"r", {{"re", r.r.real()}, {"im", r.r.imag()}}},
         {"R", r.R},
         {"T", r.T},
         {"unitarity_residual", r.unitarity_residual},
         {"method", method_name(r.method)},
         {"transmission_derived", r.transmission_derived}};
  if (r.t) j["t"] = {{"re", r.t->real()}, {"im", r.t->imag()}};
  return j;
}

inline json to_json(const HbsResult& h, bool with_profile) {
  json j{{"q_c", h.q_c},
         {"node_count", h.node_count},
         {"parity", parity_name(h.parity)},
         {"left_residual", h.left_residual},
         {"right_residual", h.right_residual},
         {"psi_origin", h.psi_origin},
         {"dpsi_origin", h.dpsi_origin}};
  if (with_profile) {
    json prof = json::array();
    for (const auto& pt : h.profile) prof.push_back({pt.x, pt.psi, pt.V});
    j["profile_columns"] = {"x", "psi", "V"};
    j["profile"] = std::move(prof);
  }
  return j;
}

/// Scientific notation with 10 significant digits.
inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9e", v);
  return buf;
}

}  // namespace halfbound
