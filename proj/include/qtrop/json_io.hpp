#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qtrop/lattice.hpp"
#include "qtrop/numeric.hpp"
#include "qtrop/qindex.hpp"
#include "qtrop/qlaurent.hpp"

namespace qtrop {

using Json = nlohmann::json;

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Rationals travel as strings "n" or "n/d" so nothing is rounded.
inline Json rat_to_json(const Rat& r) { return rat_to_string(r); }

inline Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (!j.is_string()) throw ParseError("expected a rational as \"n\" or \"n/d\"");
  try {
    return rat_from_string(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

// [[coeff, exponent], ...] with ascending exponents.
inline Json qlaurent_to_json(const QLaurent& p) {
  Json out = Json::array();
  for (const auto& [e, c] : p.terms()) out.push_back({rat_to_json(c), rat_to_json(e)});
  return out;
}

inline QLaurent qlaurent_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of [coeff, exponent] pairs");
  QLaurent p;
  for (const Json& t : j) {
    if (!t.is_array() || t.size() != 2) throw ParseError("expected a [coeff, exponent] pair");
    p.add_term(rat_from_json(t[1]), rat_from_json(t[0]));
  }
  return p;
}

// Human form: "q^(-1) + 2 + 3*q^(3/2)", ascending exponents.
inline std::string qlaurent_to_text(const QLaurent& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    Rat mag = c < 0 ? Rat(-c) : c;
    if (first)
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    first = false;
    std::string power;
    if (e != 0) {
      if (e == 1)
        power = "q";
      else if (rat_den(e) == 1 && e > 0)
        power = "q^" + rat_to_string(e);
      else
        power = "q^(" + rat_to_string(e) + ")";
    }
    if (power.empty())
      out += rat_to_string(mag);
    else if (mag == 1)
      out += power;
    else
      out += rat_to_string(mag) + "*" + power;
  }
  return out;
}

inline Json vec2_to_json(const Vec2& v) { return Json::array({v.x, v.y}); }

inline Vec2 vec2_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw ParseError("expected an integer vector [x, y]");
  return Vec2{j[0].get<std::int64_t>(), j[1].get<std::int64_t>()};
}

// {"vectors": [[x, y], ...]}
inline Json degree_to_json(const Degree& d) {
  Json vs = Json::array();
  for (const Vec2& v : d.vectors()) vs.push_back(vec2_to_json(v));
  return Json{{"vectors", vs}};
}

inline Degree degree_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("vectors") || !j["vectors"].is_array())
    throw ParseError("expected {\"vectors\": [[x, y], ...]}");
  std::vector<Vec2> vs;
  for (const Json& v : j["vectors"]) vs.push_back(vec2_from_json(v));
  try {
    return Degree(std::move(vs));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

// {"real_points": [{"alpha": "n/d" | "inf", "slope": [x, y]}, ...],
//  "complex_pairs": [{"re": ..., "im": ..., "slope": [x, y]}, ...]}
// The last real point must have alpha "inf".
inline Json real_param_to_json(const RealParam& p) {
  Json reals = Json::array();
  for (const RealPoint& r : p.real_points)
    reals.push_back({{"alpha", r.alpha ? rat_to_json(*r.alpha) : Json("inf")},
                     {"slope", vec2_to_json(r.slope)}});
  Json pairs = Json::array();
  for (const ComplexPair& c : p.complex_pairs)
    pairs.push_back({{"re", rat_to_json(c.re)},
                     {"im", rat_to_json(c.im)},
                     {"slope", vec2_to_json(c.slope)}});
  return Json{{"real_points", reals}, {"complex_pairs", pairs}};
}

inline RealParam real_param_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("expected a parametrized-curve object");
  RealParam p;
  for (const Json& r : j.value("real_points", Json::array())) {
    if (!r.is_object() || !r.contains("alpha") || !r.contains("slope"))
      throw ParseError("real point needs \"alpha\" and \"slope\"");
    std::optional<Rat> alpha;
    if (!(r["alpha"].is_null() || (r["alpha"].is_string() && r["alpha"] == "inf")))
      alpha = rat_from_json(r["alpha"]);
    p.real_points.push_back({alpha, vec2_from_json(r["slope"])});
  }
  for (const Json& c : j.value("complex_pairs", Json::array())) {
    if (!c.is_object() || !c.contains("re") || !c.contains("im") || !c.contains("slope"))
      throw ParseError("complex pair needs \"re\", \"im\" and \"slope\"");
    p.complex_pairs.push_back(
        {rat_from_json(c["re"]), rat_from_json(c["im"]), vec2_from_json(c["slope"])});
  }
  return p;
}

}  // namespace qtrop
