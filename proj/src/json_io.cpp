#include "chowkit/json_io.hpp"

#include <fstream>

#include "chowkit/errors.hpp"

namespace chowkit::io {

namespace {

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::int64_t int_from_json(const json& j, const char* what) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_string()) return Rational::parse(j.get<std::string>()).to_int64();
  throw InputError(std::string("expected an integer for '") + what + "'");
}

IntVector int_vector(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string("expected an array for '") + what + "'");
  IntVector v;
  for (const auto& x : j) v.push_back(int_from_json(x, what));
  return v;
}

}  // namespace

Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw InputError("expected a rational as a \"p/q\" string, got " + j.dump());
}

json to_json(const Rational& r) { return r.str(); }

NodalCurve curve_from_json(const json& j) {
  if (j.contains("schema") && j.at("schema") != "curve/v1")
    throw InputError("unsupported curve schema " + j.at("schema").dump());
  CurveDescription d;
  for (const auto& c : require(j, "components")) {
    d.components.push_back({require(c, "id").get<std::string>(),
                            static_cast<int>(int_from_json(require(c, "genus"), "genus"))});
  }
  if (j.contains("nodes")) {
    for (const auto& n : j.at("nodes")) {
      if (!n.is_array() || n.size() != 2) throw InputError("a node is a pair of component ids");
      d.nodes.emplace_back(n[0].get<std::string>(), n[1].get<std::string>());
    }
  }
  if (j.contains("points")) {
    for (const auto& p : j.at("points")) {
      const json& on = require(p, "on");
      if (!on.is_string()) throw InputError("marked points must lie on a single component, not on a node");
      CurveDescription::Point pt{on.get<std::string>(), p.value("label", std::string()),
                                 rational_from_json(require(p, "weight")), std::nullopt};
      if (pt.label.empty()) pt.label = "x" + std::to_string(d.points.size() + 1);
      if (p.contains("group") && !p.at("group").is_null()) pt.group = p.at("group").get<std::string>();
      d.points.push_back(std::move(pt));
    }
  }
  return NodalCurve::make(d);
}

json curve_to_json(const NodalCurve& curve) {
  json j;
  j["schema"] = "curve/v1";
  j["components"] = json::array();
  for (const auto& c : curve.components()) j["components"].push_back({{"id", c.id}, {"genus", c.genus}});
  j["nodes"] = json::array();
  for (const auto& n : curve.nodes())
    j["nodes"].push_back({curve.components()[n.first].id, curve.components()[n.second].id});
  j["points"] = json::array();
  for (const auto& p : curve.points()) {
    json pt{{"on", curve.components()[p.component].id}, {"label", p.label}, {"weight", to_json(p.weight)}};
    if (p.group) pt["group"] = *p.group;
    j["points"].push_back(pt);
  }
  return j;
}

json multidegree_to_json(const NodalCurve& curve, const Multidegree& m) {
  json j = json::object();
  for (std::size_t i = 0; i < m.degrees.size(); ++i) j[curve.components()[i].id] = to_json(m.degrees[i]);
  return j;
}

json verdict_to_json(const NodalCurve& curve, const StabilityVerdict& v) {
  json j;
  j["status"] = to_string(v.status);
  j["semistable"] = v.semistable();
  j["worst_margin"] = v.worst_margin ? json(to_json(*v.worst_margin)) : json(nullptr);
  j["caveat_low_degree"] = v.caveat_low_degree;
  j["witnesses"] = json::array();
  for (const auto& w : v.witnesses)
    j["witnesses"].push_back({{"subcurve", w.subcurve.member_ids(curve)}, {"margin", to_json(w.margin)}});
  return j;
}

FamilyIntersections family_from_json(const json& j) {
  FamilyIntersections f;
  f.n = static_cast<int>(int_from_json(require(j, "n"), "n"));
  f.Lnp1 = rational_from_json(require(j, "Lnp1"));
  f.LnK = rational_from_json(require(j, "LnK"));
  f.fiber_Ln = rational_from_json(require(j, "fiber_Ln"));
  f.fiber_Ln1K = rational_from_json(require(j, "fiber_Ln1K"));
  if (j.contains("boundary")) {
    for (const auto& b : j.at("boundary"))
      f.boundary.push_back({rational_from_json(require(b, "a")), rational_from_json(require(b, "LDi_n")),
                            rational_from_json(require(b, "fiber_di"))});
  }
  f.validate();
  return f;
}

TorusProblem torus_from_json(const json& j) {
  std::vector<IntVector> chars;
  for (const auto& c : require(j, "characters")) chars.push_back(int_vector(c, "characters"));
  return TorusProblem::make(std::move(chars));
}

FamilySection section_from_json(const json& j) {
  FamilySection s;
  s.gamma = int_vector(require(j, "gamma"), "gamma");
  s.degree = int_from_json(require(j, "degree"), "degree");
  for (const auto& f : require(j, "coordinates")) {
    if (!f.is_array()) throw InputError("each coordinate is an array of coefficients, ascending powers");
    std::vector<Rational> c;
    for (const auto& x : f) c.push_back(rational_from_json(x));
    s.coordinates.emplace_back(std::move(c));
  }
  return s;
}

json polynomial_to_json(const Polynomial& p) {
  json j = json::array();
  for (const auto& c : p.coefficients()) j.push_back(to_json(c));
  return j;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("invalid JSON in '" + path + "': " + e.what());
  }
}

}  // namespace chowkit::io
