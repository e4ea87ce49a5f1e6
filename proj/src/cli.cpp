#include "eqdelta/cli.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "eqdelta/eqdelta.hpp"
#include "eqdelta/io.hpp"

#ifndef EQDELTA_CORPUS_DIR
#define EQDELTA_CORPUS_DIR "corpus"
#endif

namespace eqdelta::cli {
namespace {

using io::Json;

struct Output {
  Json json;
  std::string text;
  int code = 0;
};

struct Globals {
  std::string format = "text";
  std::vector<std::string> registries;
  bool strict = false;
};

struct SpaceArgs {
  std::string brieskorn;
  std::string involution = "c";
  std::string input;
  std::string example;
  bool reversed = false;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    cur.erase(0, cur.find_first_not_of(" \t"));
    cur.erase(cur.find_last_not_of(" \t") + 1);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

std::vector<Int> int_list(const std::string& s) {
  std::vector<Int> out;
  for (const auto& x : split(s, ',')) {
    Rat r = parse_rat(x);
    if (!is_integer(r)) throw make_error("ParseError", "expected an integer, got '" + x + "'");
    out.push_back(num(r));
  }
  return out;
}

long long index_of(const std::string& s) {
  if (s == "inf") return kInfIndex;
  Int v = int_list(s).at(0);
  if (v < 0) throw make_error("ParseError", "indices are non-negative");
  return static_cast<long long>(v);
}

std::string example_path(const std::string& name) { return std::string(EQDELTA_CORPUS_DIR) + "/" + name + ".json"; }

Json input_json(const SpaceArgs& a) {
  if (!a.example.empty()) return io::load_json(example_path(a.example));
  return io::load_json(a.input);
}

InvariantRegistry load_registry(const Globals& g, const Json* doc) {
  InvariantRegistry reg;
  for (const auto& path : g.registries) io::registry_into(io::load_json(path), reg, path);
  if (doc && doc->is_object() && doc->contains("registry")) io::registry_into(doc->at("registry"), reg, "/registry");
  reg.seal();
  return reg;
}

// Space from flags or from a document: a bare space, {"space": ...}, or an
// extension problem (its boundary).
SpaceDescription space_from(const SpaceArgs& a, Json& doc) {
  SpaceDescription d;
  if (!a.brieskorn.empty()) {
    if (a.involution != "c" && a.involution != "m") throw make_error("ParseError", "--involution must be c or m");
    d = {BrieskornSpace{BrieskornData(int_list(a.brieskorn)), a.involution == "m" ? BrieskornInvolution::M : BrieskornInvolution::C},
         Side::Pos};
  } else if (!a.input.empty() || !a.example.empty()) {
    doc = input_json(a);
    if (doc.contains("boundary")) d = io::space_of(doc.at("boundary"), "/boundary");
    else if (doc.contains("space")) d = io::space_of(doc.at("space"), "/space");
    else d = io::space_of(doc, "");
  } else {
    throw make_error("ParseError", "give --brieskorn, --input or --example");
  }
  if (a.reversed) d = d.reversed();
  return d;
}

PlumbingGraph graph_from(const std::string& input, const std::string& chain) {
  if (!chain.empty()) return PlumbingGraph::chain(int_list(chain));
  if (input.empty()) throw make_error("ParseError", "give --input or --chain");
  Json j = io::load_json(input);
  return io::graph_of(j.contains("graph") ? j.at("graph") : j, input);
}

void add_space_options(CLI::App* c, SpaceArgs& a) {
  c->add_option("--brieskorn", a.brieskorn, "Brieskorn exponents, e.g. 2,3,5");
  c->add_option("--involution", a.involution, "c or m")->check(CLI::IsMember({"c", "m"}));
  c->add_option("--input", a.input, "JSON description file");
  c->add_option("--example", a.example, "named fixture from the corpus");
  c->add_flag("--reverse", a.reversed, "reverse the orientation");
}

std::vector<std::string> anchors_of(const DeltaProfile& p, const std::vector<std::size_t>& ids) {
  std::vector<std::string> out;
  for (auto k : ids)
    for (const auto& a : p.facts[k].prov.anchors)
      if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  return out;
}

// ---------------------------------------------------------------- commands

Output cmd_contfrac(const std::string& value, const std::string& mode, const std::string& eval) {
  Output o;
  if (!eval.empty()) {
    Ncf e = int_list(eval);
    NcfValue v = eval_ncf(e);
    std::string s = v.infinite ? "inf" : to_string(v.value);
    o.json = {{"coefficients", split(eval, ',')}, {"value", s}};
    o.text = "[" + eval + "] = " + s + "\n";
    return o;
  }
  Rat r = parse_rat(value);
  Slope sl(r);
  Ncf c = mode == "standard" ? expand_standard(sl) : expand_even(sl);
  NcfValue back = eval_ncf(c);
  if (back.infinite || back.value != r) throw make_error("InternalError", "expansion does not evaluate back");
  std::vector<std::string> cs;
  for (const auto& x : c) cs.push_back(x.str());
  o.json = {{"value", to_string(r)}, {"mode", mode}, {"coefficients", cs}};
  std::string line;
  for (std::size_t i = 0; i < cs.size(); ++i) line += (i ? ", " : "") + cs[i];
  o.text = to_string(r) + " = [" + line + "] (" + mode + ")\n";
  return o;
}

Output cmd_form(const std::string& matrix, const std::string& input) {
  IntMat m;
  if (!matrix.empty()) {
    for (const auto& row : split(matrix, ';')) m.push_back(int_list(row));
  } else {
    Json j = io::load_json(input);
    for (const auto& row : io::field(j, "matrix", input)) {
      IntVec r;
      for (const auto& x : row) r.push_back(io::int_of(x, input + "/matrix"));
      m.push_back(r);
    }
  }
  SymForm f(m);
  SignatureProfile sp = signature_profile(f);
  Int det = determinant(f);
  bool even = true;
  for (std::size_t i = 0; i < f.rank(); ++i) even = even && f(i, i) % 2 == 0;
  Output o;
  o.json = {{"rank", f.rank()}, {"b_plus", sp.b_plus}, {"b_minus", sp.b_minus}, {"b_zero", sp.b_zero}, {"sigma", std::to_string(sp.sigma())},
            {"det", det.str()}, {"even", even}};
  std::ostringstream t;
  t << "rank " << f.rank() << ", b+ " << sp.b_plus << ", b- " << sp.b_minus << ", b0 " << sp.b_zero << ", sigma " << sp.sigma()
    << ", det " << det << (even ? ", even" : ", odd") << "\n";
  if (det % 2 != 0 && sp.b_plus == 0 && sp.b_zero == 0 && f.rank() <= kMaxCharRank) {
    auto mc = max_char_square(f);
    o.json["max_char_square"] = mc.max_square.str();
    t << "max characteristic square " << mc.max_square << "\n";
  }
  o.text = t.str();
  return o;
}

Output cmd_plumbing(const PlumbingGraph& g) {
  SymForm a = linking_matrix(g);
  SignatureProfile sp = signature_profile(a);
  Int det = determinant(a);
  Output o;
  std::vector<std::string> deg;
  for (const auto& v : g.vertices()) deg.push_back(v.degree.str());
  o.json = {{"vertices", g.size()}, {"degrees", deg}, {"edges", g.edges().size()}, {"sigma", std::to_string(sp.sigma())},
            {"det", det.str()}, {"all_degrees_even", g.all_degrees_even()}};
  std::ostringstream t;
  t << g.size() << " vertices, sigma " << sp.sigma() << ", det " << det << (g.all_degrees_even() ? ", all degrees even" : "") << "\n";
  if (det % 2 != 0) {
    Rat mb = mu_bar(g);
    o.json["mu_bar"] = to_string(mb);
    t << "mu_bar " << to_string(mb) << "\n";
  }
  if (g.all_degrees_even() && det != 0) {
    std::size_t j = j_gamma(g);
    o.json["j_gamma"] = j;
    t << "j(Gamma) " << j << "\n";
  }
  o.text = t.str();
  return o;
}

SeifertData seifert_from(const std::string& brieskorn, const std::string& data, const std::string& input) {
  if (!brieskorn.empty()) return brieskorn_seifert(BrieskornData(int_list(brieskorn)));
  if (!data.empty()) {
    auto parts = split(data, ';');
    if (parts.empty()) throw make_error("ParseError", "Seifert data is 'b;a1,b1;a2,b2;...'");
    std::vector<std::pair<Int, Int>> ps;
    for (std::size_t k = 1; k < parts.size(); ++k) {
      auto ab = int_list(parts[k]);
      if (ab.size() != 2) throw make_error("ParseError", "Seifert pair '" + parts[k] + "' is not a,b");
      ps.emplace_back(ab[0], ab[1]);
    }
    return SeifertData(int_list(parts[0]).at(0), std::move(ps));
  }
  if (input.empty()) throw make_error("ParseError", "give --brieskorn, --data or --input");
  return io::seifert_of(io::load_json(input), input);
}

Output cmd_seifert(const SeifertData& s) {
  Output o;
  Rat e = euler_number(s);
  o.json = {{"data", to_string(s)}, {"euler_number", to_string(e)}};
  std::ostringstream t;
  t << to_string(s) << ", e = " << to_string(e) << "\n";
  try {
    StarPlumbing star = smallest_even_star(s);
    std::vector<std::string> deg;
    for (const auto& v : star.graph.vertices()) deg.push_back(v.degree.str());
    Rat mb = mu_bar(star.graph);
    o.json["even_star"] = {{"data", to_string(star.data)}, {"vertices", star.graph.size()}, {"degrees", deg}, {"mu_bar", to_string(mb)}};
    t << "even star " << to_string(star.data) << ": " << star.graph.size() << " vertices, mu_bar " << to_string(mb) << "\n";
  } catch (const Error& err) {
    o.json["even_star"] = nullptr;
    t << "no even star: " << err.what() << "\n";
  }
  o.text = t.str();
  return o;
}

Output cmd_lens(const Int& p, const Int& q, std::size_t spin) {
  LensD l = lens_d(p, q, spin);
  Output o;
  o.json = {{"p", p.str()}, {"q", q.str()}, {"spin_index", l.spin_index.str()}, {"d", to_string(l.d)}, {"delta", to_string(l.delta)}};
  std::ostringstream t;
  t << "L(" << p << "," << q << ") spin index " << l.spin_index << ": d = " << to_string(l.d) << ", delta = " << to_string(l.delta) << "\n";
  if (p % 2 != 0 && p > 1) {
    Rat mb = mu_bar(lens_even_chain(p, q));
    o.json["minus_mu_bar_even_chain"] = to_string(-mb);
    t << "-mu_bar of the even linear plumbing = " << to_string(-mb) << "\n";
  }
  o.text = t.str();
  return o;
}

Output cmd_delta(const SpaceDescription& d, const InvariantRegistry& reg, bool strict, const std::string& type, const std::string& j,
                 const std::string& index) {
  DeltaProfile p = derive_profile(d, reg, strict);
  if (!check(p).consistent) throw make_error("Contradiction", "derived profile of " + p.key + " is contradictory");
  Output o;
  o.json = {{"space", space_key(d)}, {"involution", involution_of(d)}};
  std::ostringstream t;
  if (!type.empty()) {
    SpincType ty = parse_type(type);
    DeltaIndex x;
    if (ty == SpincType::S) {
      auto ij = split(index.empty() ? j : index, ',');
      if (ij.size() != 2) throw make_error("ParseError", "type S needs --index i,j");
      x = DeltaIndex::s(index_of(ij[0]), index_of(ij[1]));
      if (!valid_s_index(x.i, x.j)) throw make_error("InvalidIndex", "S-index (" + ij[0] + "," + ij[1] + ") is not valid");
    } else {
      x = DeltaIndex::t(ty, index_of(j.empty() ? "inf" : j));
    }
    Bound b = query(p, Side::Pos, x);
    std::vector<std::size_t> ids = b.lo_support;
    for (auto k : b.hi_support)
      if (std::find(ids.begin(), ids.end(), k) == ids.end()) ids.push_back(k);
    std::string value = b.value.pinned() ? to_string(b.value.lo.value) : to_string(b.value);
    Json prov = Json::array();
    for (auto k : ids) prov.push_back(io::to_json(p.facts[k]));
    o.json["index"] = to_string(x, Side::Pos);
    o.json["value"] = value;
    o.json["interval"] = io::to_json(b.value);
    o.json["anchors"] = anchors_of(p, ids);
    o.json["provenance"] = prov;
    t << value << "\n" << to_string(x, Side::Pos) << " = " << value << " for " << space_key(d) << " with " << involution_of(d) << "\n";
    for (const auto& a : anchors_of(p, ids)) t << "  anchor " << a << "\n";
    for (auto k : ids) t << "  " << describe(p.facts[k]) << "\n";
  } else {
    Json rows = Json::array();
    t << p.key << "\n";
    for (Side s : {Side::Pos, Side::Neg})
      for (SpincType ty : {SpincType::E, SpincType::R, SpincType::S}) {
        if (!p.types.count(ty)) continue;
        TailQuery q = query_tail(p, s, ty);
        DeltaIndex zero = ty == SpincType::S ? DeltaIndex::s(0, 0) : DeltaIndex::t(ty, 0);
        Interval z = query(p, s, zero).value;
        std::string y = s == Side::Pos ? "Y" : "-Y";
        rows.push_back({{"side", y}, {"type", std::string(1, type_letter(ty))}, {"tail", io::to_json(q.tail)},
                        {"j", {{"lo", std::to_string(q.j_lo)}, {"hi", index_str(q.j_hi)}}}, {"at_zero", io::to_json(z)}});
        t << "  " << y << " " << type_letter(ty) << ": tail " << to_string(q.tail) << ", j in [" << q.j_lo << ", " << index_str(q.j_hi)
          << "], at 0 " << to_string(z) << "\n";
      }
    o.json["profile"] = rows;
    Json facts = Json::array();
    for (const auto& f : p.facts) facts.push_back(io::to_json(f));
    o.json["facts"] = facts;
  }
  o.json["skipped"] = p.skipped;
  for (const auto& s : p.skipped) t << "  skipped: " << s << "\n";
  o.text = t.str();
  return o;
}

Output cmd_extend(const Json& doc, const InvariantRegistry& reg, bool strict, const std::string& action) {
  std::vector<ExtensionAction> acts = action.empty() ? io::actions_of(doc, "") : std::vector<ExtensionAction>{parse_action(action)};
  std::vector<VerdictReport> reports;
  Output o;
  std::ostringstream t;
  Json branches = Json::array();
  for (auto a : acts) {
    ExtensionProblem x = io::extension_of(doc, "", a);
    VerdictReport r = check_extension(x, reg, strict);
    Json b = io::to_json(r);
    b["action"] = to_string(a);
    branches.push_back(b);
    t << "branch " << to_string(a) << ": " << to_string(r.verdict) << "\n";
    for (const auto& c : r.chain) t << "  " << c << "\n";
    for (const auto& n : r.notes) t << "  note: " << n << "\n";
    reports.push_back(std::move(r));
  }
  Verdict v = combine_branches(reports);
  o.json = {{"verdict", to_string(v)}, {"branches", branches}};
  t << "verdict: " << to_string(v) << "\n";
  o.text = t.str();
  o.code = exit_code(v);
  return o;
}

Output cmd_embed(const SpaceDescription& d, const InvariantRegistry& reg) {
  EmbeddingBounds b = embedding_bounds(d, reg);
  Output o;
  o.json = io::to_json(b);
  o.json["space"] = space_key(d);
  o.json["involution"] = involution_of(d);
  std::ostringstream t;
  t << space_key(d) << " with " << involution_of(d) << "\n";
  auto line = [&](const char* name, const EpsBound& e) {
    t << "  " << name << " in " << to_string(e) << "\n";
    for (const auto& w : e.lo_why) t << "    lower: " << w << "\n";
    for (const auto& w : e.hi_why) t << "    upper: " << w << "\n";
  };
  line("eps(Y,sigma)", b.eps_sigma);
  line("eps_+(Y,sigma)", b.eps_plus);
  line("eps_-(Y,sigma)", b.eps_minus);
  line("eps(Y)", b.eps_y);
  for (const auto& n : b.notes) t << "  note: " << n << "\n";
  o.text = t.str();
  return o;
}

Output cmd_surface(const SurfaceData& s, const InvariantRegistry& reg, bool strict) {
  VerdictReport r = surface_constraints(s, reg, strict);
  Output o;
  o.json = io::to_json(r);
  o.json["knot"] = knot_key(s.knot);
  std::ostringstream t;
  t << knot_key(s.knot) << ", e(S) = " << s.euler << ", b1(S) = " << s.b1 << ": " << to_string(r.verdict) << "\n";
  for (const auto& c : r.chain) t << "  " << c << "\n";
  for (const auto& n : r.notes) t << "  note: " << n << "\n";
  o.text = t.str();
  o.code = exit_code(r.verdict);
  return o;
}

Output cmd_registry(const InvariantRegistry& reg, const std::string& name, const std::string& key) {
  Output o;
  std::ostringstream t;
  Json rows = Json::array();
  for (const auto& [k, e] : reg.entries()) {
    if (!name.empty() && k.first != name) continue;
    if (!key.empty() && k.second != key) continue;
    rows.push_back({{"name", k.first}, {"key", k.second}, {"value", to_string(e.value)}, {"source", to_string(e.source)}});
    t << k.first << "(" << k.second << ") = " << to_string(e.value) << " [" << to_string(e.source) << "]\n";
  }
  if ((!name.empty() || !key.empty()) && rows.empty()) o.code = 3;
  o.json = {{"entries", rows}};
  o.text = t.str();
  return o;
}

const std::map<std::string, std::string> kModule = {
    {"contfrac", "contfrac"}, {"form", "forms"},           {"plumbing", "plumbing"}, {"seifert", "seifert"},
    {"mubar", "classical"},   {"jgamma", "classical"},     {"lens-d", "classical"},  {"delta", "delta-engine"},
    {"extend", "applications"}, {"embed", "applications"}, {"surface", "applications"}, {"stabilize", "applications"}, {"registry", "classical"}};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equivariant delta-invariant calculator"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--registry", g.registries, "registry JSON file (repeatable)");
  app.add_flag("--strict", g.strict, "fail when a rule needs a missing registry value");

  std::string value, mode = "even", eval;
  auto* c_cf = app.add_subcommand("contfrac", "negative continued fractions");
  c_cf->add_option("--value", value, "rational p/q");
  c_cf->add_option("--mode", mode, "even or standard")->check(CLI::IsMember({"even", "standard"}));
  c_cf->add_option("--eval", eval, "evaluate a1,a2,...");

  std::string matrix, input, chain;
  auto* c_form = app.add_subcommand("form", "signature and determinant of a symmetric form");
  c_form->add_option("--matrix", matrix, "rows separated by ';', entries by ','");
  c_form->add_option("--input", input, "JSON file with a \"matrix\" field");

  auto* c_pl = app.add_subcommand("plumbing", "invariants of a plumbing graph");
  c_pl->add_option("--input", input, "graph JSON");
  c_pl->add_option("--chain", chain, "linear chain degrees a1,a2,...");

  std::string brieskorn, data;
  auto* c_sf = app.add_subcommand("seifert", "Seifert data, Euler number, even star plumbing");
  c_sf->add_option("--brieskorn", brieskorn, "exponents");
  c_sf->add_option("--data", data, "b;a1,b1;a2,b2;...");
  c_sf->add_option("--input", input, "Seifert JSON");

  auto* c_mb = app.add_subcommand("mubar", "Neumann-Siebenmann invariant");
  c_mb->add_option("--brieskorn", brieskorn, "exponents");
  c_mb->add_option("--input", input, "graph JSON");
  c_mb->add_option("--chain", chain, "linear chain degrees");

  bool check_brute = false;
  auto* c_jg = app.add_subcommand("jgamma", "j(Gamma) of an even plumbing");
  c_jg->add_option("--input", input, "graph JSON");
  c_jg->add_option("--chain", chain, "linear chain degrees");
  c_jg->add_flag("--check", check_brute, "compare with exhaustive enumeration");

  long long lp = 0, lq = 0;
  std::size_t spin = 0;
  auto* c_ld = app.add_subcommand("lens-d", "correction term of a lens space at a spin structure");
  c_ld->add_option("--p", lp)->required();
  c_ld->add_option("--q", lq)->required();
  c_ld->add_option("--spin", spin, "spin structure selector");

  SpaceArgs sa;
  std::string type, jstr, index;
  auto* c_dl = app.add_subcommand("delta", "delta invariants of a space with involution");
  add_space_options(c_dl, sa);
  c_dl->add_option("--type", type, "E, R or S")->check(CLI::IsMember({"E", "R", "S"}));
  c_dl->add_option("--j", jstr, "index j (or inf)");
  c_dl->add_option("--index", index, "S-index i,j");

  std::string action;
  auto* c_ex = app.add_subcommand("extend", "obstruct extending an involution over a filling");
  c_ex->add_option("--input", sa.input, "extension problem JSON");
  c_ex->add_option("--example", sa.example, "named fixture");
  c_ex->add_option("--action", action, "single hypothesized action");

  auto* c_em = app.add_subcommand("embed", "bounds on equivariant embedding numbers");
  add_space_options(c_em, sa);

  std::string torus;
  long long euler = 0, b1 = 1;
  auto* c_su = app.add_subcommand("surface", "non-orientable surfaces bounding a knot");
  c_su->add_option("--input", input, "surface JSON");
  c_su->add_option("--torus", torus, "torus knot p,q");
  c_su->add_option("--euler", euler, "relative Euler number e(S)");
  c_su->add_option("--b1", b1, "first Betti number b1(S)");

  long long sigma_x0 = 0, b2w = 8, copies = 0;
  std::string stype = "R";
  auto* c_st = app.add_subcommand("stabilize", "non-smoothable involutions after stabilization");
  c_st->add_option("--sigma-x0", sigma_x0, "signature of the spin manifold X0");
  c_st->add_option("--type", stype, "R (acts as +1 on H2) or E (acts as -1)")->check(CLI::IsMember({"R", "E"}));
  c_st->add_option("--b2", b2w, "rank of the even negative definite form");
  c_st->add_option("--m", copies, "copies of S2 x S2")->required();

  std::string rname, rkey;
  auto* c_rg = app.add_subcommand("registry", "list registry entries");
  c_rg->add_option("--name", rname);
  c_rg->add_option("--key", rkey);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  std::string sub = app.get_subcommands().front()->get_name();
  try {
    Output o;
    if (sub == "contfrac") {
      if (value.empty() && eval.empty()) throw make_error("ParseError", "give --value or --eval");
      o = cmd_contfrac(value, mode, eval);
    } else if (sub == "form") {
      if (matrix.empty() && input.empty()) throw make_error("ParseError", "give --matrix or --input");
      o = cmd_form(matrix, input);
    } else if (sub == "plumbing") {
      o = cmd_plumbing(graph_from(input, chain));
    } else if (sub == "seifert") {
      o = cmd_seifert(seifert_from(brieskorn, data, input));
    } else if (sub == "mubar") {
      if (!brieskorn.empty()) {
        auto mb = detail::brieskorn_mu_bar(BrieskornData(int_list(brieskorn)));
        o.json = {{"value", to_string(mb.value)}, {"source", mb.text}};
        o.text = to_string(mb.value) + "\n" + mb.text + "\n";
      } else {
        PlumbingGraph gr = graph_from(input, chain);
        Rat mb = mu_bar(gr);
        o.json = {{"value", to_string(mb)}, {"vertices", gr.size()}};
        o.text = to_string(mb) + "\n";
      }
    } else if (sub == "jgamma") {
      PlumbingGraph gr = graph_from(input, chain);
      std::size_t j = j_gamma(gr);
      o.json = {{"j_gamma", j}, {"vertices", gr.size()}};
      o.text = "j(Gamma) = " + std::to_string(j) + "\n";
      if (check_brute) {
        std::size_t jb = j_gamma_bruteforce(gr);
        o.json["bruteforce"] = jb;
        o.text += "exhaustive: " + std::to_string(jb) + (jb == j ? " (agrees)" : " (DISAGREES)") + "\n";
        if (jb != j) o.code = 1;
      }
    } else if (sub == "lens-d") {
      o = cmd_lens(Int(lp), Int(lq), spin);
    } else if (sub == "delta") {
      Json doc;
      SpaceDescription d = space_from(sa, doc);
      o = cmd_delta(d, load_registry(g, &doc), g.strict, type, jstr, index);
    } else if (sub == "extend") {
      if (sa.input.empty() && sa.example.empty()) throw make_error("ParseError", "give --input or --example");
      Json doc = input_json(sa);
      o = cmd_extend(doc, load_registry(g, &doc), g.strict, action);
    } else if (sub == "embed") {
      Json doc;
      SpaceDescription d = space_from(sa, doc);
      o = cmd_embed(d, load_registry(g, &doc));
    } else if (sub == "surface") {
      Json doc;
      SurfaceData s;
      if (!input.empty()) {
        doc = io::load_json(input);
        s = io::surface_of(doc, input);
      } else {
        auto pq = int_list(torus);
        if (pq.size() != 2) throw make_error("ParseError", "give --input or --torus p,q");
        s = SurfaceData{KnotModel::torus(pq[0], pq[1]), Int(euler), Int(b1)};
        s.validate();
      }
      o = cmd_surface(s, load_registry(g, &doc), g.strict);
    } else if (sub == "stabilize") {
      StabilizationProblem sp;
      sp.sigma_x0 = sigma_x0;
      sp.type = parse_type(stype);
      sp.b2_w = b2w;
      sp.m = copies;
      VerdictReport r = nonsmoothable_stabilization(sp);
      o.json = io::to_json(r);
      o.text = to_string(r.verdict) + "\n";
      for (const auto& c : r.chain) o.text += "  " + c + "\n";
      for (const auto& n : r.notes) o.text += "  note: " + n + "\n";
      o.code = exit_code(r.verdict);
    } else if (sub == "registry") {
      o = cmd_registry(load_registry(g, nullptr), rname, rkey);
    }
    if (g.format == "json") {
      Json j{{"command", sub}, {"module", kModule.at(sub)}, {"exit_code", o.code}, {"result", o.json}};
      out << j.dump(2) << "\n";
    } else {
      out << o.text;
    }
    return o.code;
  } catch (const Error& e) {
    err << "error [" << kModule.at(sub) << "] " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error [" << kModule.at(sub) << "] " << e.what() << "\n";
    return 1;
  }
}

}  // namespace eqdelta::cli
