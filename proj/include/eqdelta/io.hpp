#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "eqdelta/applications.hpp"
#include "json.hpp"

namespace eqdelta::io {

using Json = nlohmann::ordered_json;

inline Error parse_error(const std::string& where, const std::string& what) { return make_error("ParseError", where + ": " + what); }

inline Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw make_error("ParseError", path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw make_error("ParseError", path + ": " + e.what());
  }
}

inline const Json& field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw parse_error(where, "missing field '" + key + "'");
  return j.at(key);
}

inline Rat rat_of(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_string()) {
    try {
      return parse_rat(j.get<std::string>());
    } catch (const Error&) {
      throw parse_error(where, "not a rational number: " + j.get<std::string>());
    }
  }
  throw parse_error(where, "expected an integer or a \"p/q\" string");
}

inline Int int_of(const Json& j, const std::string& where) {
  Rat r = rat_of(j, where);
  if (!is_integer(r)) throw parse_error(where, "expected an integer");
  return num(r);
}

inline bool bool_or(const Json& j, const std::string& key, bool dflt) { return j.contains(key) ? j.at(key).get<bool>() : dflt; }

inline std::string str(const Rat& r) { return to_string(r); }

// ---------------------------------------------------------------- objects

inline PlumbingGraph graph_of(const Json& j, const std::string& where) {
  std::vector<Vertex> vs;
  if (j.contains("degrees")) {
    std::size_t k = 0;
    for (const auto& d : j.at("degrees")) {
      vs.push_back({"v" + std::to_string(k), int_of(d, where + "/degrees/" + std::to_string(k))});
      ++k;
    }
  } else {
    const Json& arr = field(j, "vertices", where);
    for (std::size_t k = 0; k < arr.size(); ++k) {
      const std::string w = where + "/vertices/" + std::to_string(k);
      if (arr[k].is_object()) vs.push_back({arr[k].value("id", "v" + std::to_string(k)), int_of(field(arr[k], "degree", w), w)});
      else vs.push_back({"v" + std::to_string(k), int_of(arr[k], w)});
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> es;
  if (j.contains("edges")) {
    std::size_t k = 0;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw parse_error(where + "/edges/" + std::to_string(k), "an edge is a pair of vertex indices");
      es.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
      ++k;
    }
  }
  try {
    return PlumbingGraph(std::move(vs), std::move(es));
  } catch (const Error& e) {
    throw parse_error(where, e.what());
  }
}

inline SeifertData seifert_of(const Json& j, const std::string& where) {
  std::vector<std::pair<Int, Int>> ps;
  const Json& arr = field(j, "pairs", where);
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string w = where + "/pairs/" + std::to_string(k);
    if (!arr[k].is_array() || arr[k].size() != 2) throw parse_error(w, "a Seifert pair is [a, b]");
    ps.emplace_back(int_of(arr[k][0], w), int_of(arr[k][1], w));
  }
  try {
    return SeifertData(int_of(field(j, "b", where), where + "/b"), std::move(ps));
  } catch (const Error& e) {
    throw parse_error(where, e.what());
  }
}

inline BrieskornData brieskorn_of(const Json& j, const std::string& where) {
  std::vector<Int> e;
  for (const auto& x : field(j, "exponents", where)) e.push_back(int_of(x, where + "/exponents"));
  try {
    return BrieskornData(std::move(e));
  } catch (const Error& err) {
    throw parse_error(where, err.what());
  }
}

inline KnotModel knot_of(const Json& j, const std::string& where) {
  const std::string type = field(j, "type", where).get<std::string>();
  try {
    if (type == "torus") return KnotModel::torus(int_of(field(j, "p", where), where + "/p"), int_of(field(j, "q", where), where + "/q"));
    if (type == "montesinos") return KnotModel::montesinos(seifert_of(j, where));
    if (type == "quasi-alternating") return KnotModel::quasi_alternating(field(j, "key", where).get<std::string>());
    if (type == "mirror") return KnotModel::mirror(knot_of(field(j, "knot", where), where + "/knot"));
    if (type == "sum") {
      std::vector<KnotModel> parts;
      std::size_t k = 0;
      for (const auto& x : field(j, "knots", where)) parts.push_back(knot_of(x, where + "/knots/" + std::to_string(k++)));
      return KnotModel::sum(std::move(parts));
    }
    if (type == "opaque") return KnotModel::opaque(field(j, "key", where).get<std::string>());
  } catch (const Error& e) {
    if (e.kind() == "ParseError") throw;
    throw parse_error(where, e.what());
  }
  throw parse_error(where, "unknown knot type '" + type + "'");
}

inline FramedLink link_of(const Json& j, const std::string& where) {
  FramedLink l;
  for (const auto& row : field(j, "linking", where)) {
    IntVec r;
    for (const auto& x : row) r.push_back(int_of(x, where + "/linking"));
    l.linking.push_back(std::move(r));
  }
  for (const auto& s : field(j, "symmetry", where)) {
    std::string v = s.get<std::string>();
    if (v == "2-periodic") l.symmetry.push_back(ComponentSymmetry::TwoPeriodic);
    else if (v == "strongly-invertible") l.symmetry.push_back(ComponentSymmetry::StronglyInvertible);
    else throw parse_error(where + "/symmetry", "expected \"2-periodic\" or \"strongly-invertible\"");
  }
  if (l.symmetry.size() != l.linking.size()) throw parse_error(where, "one symmetry tag per component");
  if (j.contains("swapped"))
    for (const auto& p : j.at("swapped")) l.swapped_pairs.emplace_back(p[0].get<std::size_t>(), p[1].get<std::size_t>());
  try {
    l.validate();
  } catch (const Error& e) {
    throw parse_error(where, e.what());
  }
  return l;
}

inline SpaceDescription space_of(const Json& j, const std::string& where) {
  const std::string kind = field(j, "kind", where).get<std::string>();
  SpaceDescription d;
  if (kind == "brieskorn") {
    std::string inv = j.value("involution", "c");
    if (inv != "c" && inv != "m") throw parse_error(where + "/involution", "expected \"c\" or \"m\"");
    d.v = BrieskornSpace{brieskorn_of(j, where), inv == "m" ? BrieskornInvolution::M : BrieskornInvolution::C};
  } else if (kind == "plumbing") {
    std::string inv = j.value("involution", "c");
    if (inv != "c" && inv != "m") throw parse_error(where + "/involution", "expected \"c\" or \"m\"");
    d.v = EvenPlumbingSpace{graph_of(j, where), inv == "m" ? PlumbingInvolution::M : PlumbingInvolution::C, j.value("name", "")};
  } else if (kind == "montesinos-cover") {
    d.v = MontesinosCoverSpace{seifert_of(j, where)};
  } else if (kind == "surgery-link") {
    d.v = SurgeryLinkSpace{link_of(j, where), j.value("name", "")};
  } else if (kind == "rational-surgery") {
    Rat r = rat_of(field(j, "slope", where), where + "/slope");
    d.v = RationalSurgerySpace{field(j, "knot", where).get<std::string>(), Slope(num(r), den(r))};
  } else if (kind == "knot-cover") {
    d.v = KnotCoverSpace{knot_of(field(j, "knot", where), where + "/knot")};
  } else if (kind == "connected-sum") {
    ConnectedSumSpace c;
    std::size_t k = 0;
    for (const auto& x : field(j, "summands", where)) c.parts.push_back(space_of(x, where + "/summands/" + std::to_string(k++)));
    if (c.parts.empty()) throw parse_error(where, "empty connected sum");
    d.v = std::move(c);
  } else if (kind == "lspace") {
    d.v = LSpaceSpace{field(j, "key", where).get<std::string>(), rat_of(field(j, "delta", where), where + "/delta")};
  } else {
    throw parse_error(where, "unknown space kind '" + kind + "'");
  }
  if (bool_or(j, "reversed", false)) d.orientation = Side::Neg;
  return d;
}

inline void registry_into(const Json& j, InvariantRegistry& reg, const std::string& where) {
  const Json& arr = j.is_array() ? j : field(j, "entries", where);
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string w = where + "/entries/" + std::to_string(k);
    const Json& e = arr[k];
    try {
      reg.put(field(e, "name", w).get<std::string>(), field(e, "key", w).get<std::string>(), rat_of(field(e, "value", w), w + "/value"),
              parse_source(e.value("source", "user")));
    } catch (const Error& err) {
      if (err.kind() == "ParseError") throw;
      throw parse_error(w, err.what());
    }
  }
}

inline ExtensionProblem extension_of(const Json& j, const std::string& where, ExtensionAction action) {
  ExtensionProblem x;
  x.boundary = space_of(field(j, "boundary", where), where + "/boundary");
  const Json& f = field(j, "filling", where);
  const std::string w = where + "/filling";
  x.label = f.value("label", "X");
  x.b2 = int_of(field(f, "b2", w), w + "/b2");
  x.b_plus = int_of(field(f, "b_plus", w), w + "/b_plus");
  x.b_minus = int_of(field(f, "b_minus", w), w + "/b_minus");
  x.sigma = f.contains("sigma") ? int_of(f.at("sigma"), w + "/sigma") : Int(x.b_plus - x.b_minus);
  x.spin = bool_or(f, "spin", false);
  x.h1_z2_zero = bool_or(f, "h1_z2_zero", true);
  x.nonisolated_fixed_points = bool_or(f, "nonisolated_fixed_points", true);
  x.odd = bool_or(f, "odd", true);
  x.c_squared = f.contains("c_squared") ? rat_of(f.at("c_squared"), w + "/c_squared") : Rat(0);
  x.action = action;
  try {
    x.validate();
  } catch (const Error& e) {
    throw parse_error(w, e.what());
  }
  return x;
}

inline std::vector<ExtensionAction> actions_of(const Json& j, const std::string& where) {
  std::vector<ExtensionAction> out;
  const Json& a = field(j, "actions", where);
  for (const auto& x : a) out.push_back(parse_action(x.get<std::string>()));
  if (out.empty()) throw parse_error(where + "/actions", "no action given");
  return out;
}

inline SurfaceData surface_of(const Json& j, const std::string& where) {
  SurfaceData s{knot_of(field(j, "knot", where), where + "/knot"), int_of(field(j, "euler", where), where + "/euler"),
                int_of(field(j, "b1", where), where + "/b1")};
  try {
    s.validate();
  } catch (const Error& e) {
    throw parse_error(where, e.what());
  }
  return s;
}

// ---------------------------------------------------------------- reports

inline Json to_json(const ExtRat& v) { return to_string(v); }

inline Json to_json(const Interval& iv) { return Json{{"lo", to_json(iv.lo)}, {"hi", to_json(iv.hi)}}; }

inline Json to_json(const Provenance& p) { return Json{{"rule", p.rule}, {"anchors", p.anchors}, {"inputs", p.inputs}}; }

inline Json to_json(const Fact& f) {
  return Json{{"fact", to_string(f)}, {"provenance", to_json(f.prov)}};
}

inline Json to_json(const EpsBound& b) {
  return Json{{"lo", b.lo.str()}, {"hi", b.hi ? b.hi->str() : std::string("inf")}, {"lo_provenance", b.lo_why}, {"hi_provenance", b.hi_why}};
}

inline Json to_json(const EmbeddingBounds& b) {
  return Json{{"eps_sigma", to_json(b.eps_sigma)},
              {"eps_plus", to_json(b.eps_plus)},
              {"eps_minus", to_json(b.eps_minus)},
              {"eps_y", to_json(b.eps_y)},
              {"notes", b.notes}};
}

inline Json to_json(const VerdictReport& r) {
  Json facts = Json::array();
  for (const auto& f : r.emitted) facts.push_back(to_json(f));
  return Json{{"verdict", to_string(r.verdict)}, {"chain", r.chain}, {"notes", r.notes}, {"emitted", facts}};
}

}  // namespace eqdelta::io
