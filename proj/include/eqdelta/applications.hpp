#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "eqdelta/derive.hpp"
#include "eqdelta/knots.hpp"

namespace eqdelta {

enum class Verdict { Obstructed, Consistent, Insufficient, Infeasible, NonSmoothable, NoVerdict };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Obstructed: return "obstructed";
    case Verdict::Consistent: return "consistent";
    case Verdict::Insufficient: return "insufficient-data";
    case Verdict::Infeasible: return "infeasible";
    case Verdict::NonSmoothable: return "smoothable-manifold, non-smoothable involution";
    default: return "no-verdict";
  }
}

// Shell exit code: 2 for a negative verdict, 3 for missing data.
inline int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Obstructed:
    case Verdict::Infeasible:
    case Verdict::NonSmoothable: return 2;
    case Verdict::Insufficient: return 3;
    default: return 0;
  }
}

struct VerdictReport {
  Verdict verdict = Verdict::Insufficient;
  std::vector<std::string> chain;  // contradiction, one line per fact or rule
  std::vector<std::string> notes;
  std::vector<Fact> emitted;
};

inline std::string describe(const Fact& f) {
  std::string s = to_string(f) + "  [" + f.prov.rule;
  if (!f.prov.anchors.empty()) {
    s += " |";
    for (const auto& a : f.prov.anchors) s += " " + a;
  }
  s += "]";
  for (const auto& in : f.prov.inputs) s += "\n      <- " + in;
  return s;
}

inline std::vector<std::string> contradiction_chain(const DeltaProfile& p, const Contradiction& c) {
  std::vector<std::string> out;
  for (auto k : c.facts) out.push_back(describe(p.facts[k]));
  for (const auto& r : c.rules) out.push_back("rule: " + r);
  if (p.congruence.ordinary_mod1 || p.congruence.s_mod2) {
    std::string g = "residues:";
    if (p.congruence.ordinary_mod1) g += " delta(Y) = " + to_string(*p.congruence.ordinary_mod1) + " mod 1";
    if (p.congruence.s_mod2) g += ", delta^S(Y) = " + to_string(*p.congruence.s_mod2) + " mod 2";
    out.push_back(g);
  }
  return out;
}

// Runs the engine on a profile and turns the outcome into a verdict.
inline VerdictReport settle(const DeltaProfile& p, bool any_rule) {
  VerdictReport r;
  Solved s(p);
  if (!s.consistent()) {
    r.verdict = Verdict::Obstructed;
    r.chain = contradiction_chain(p, *s.contradiction());
    return r;
  }
  r.verdict = any_rule && p.skipped.empty() ? Verdict::Consistent : Verdict::Insufficient;
  for (const auto& k : p.skipped) r.notes.push_back(k);
  if (!any_rule) r.notes.push_back("no applicable rule");
  return r;
}

// ---------------------------------------------------------------- extension

enum class ExtensionAction { FixesC, NegatesC, TrivialH2, MinusOneH2, TrivialHPlus, NontrivialHPlus };

inline std::string to_string(ExtensionAction a) {
  switch (a) {
    case ExtensionAction::FixesC: return "fixes-c";
    case ExtensionAction::NegatesC: return "negates-c";
    case ExtensionAction::TrivialH2: return "trivial-h2";
    case ExtensionAction::MinusOneH2: return "minus-one-h2";
    case ExtensionAction::TrivialHPlus: return "trivial-hplus";
    default: return "nontrivial-hplus";
  }
}

inline ExtensionAction parse_action(const std::string& s) {
  for (auto a : {ExtensionAction::FixesC, ExtensionAction::NegatesC, ExtensionAction::TrivialH2, ExtensionAction::MinusOneH2,
                 ExtensionAction::TrivialHPlus, ExtensionAction::NontrivialHPlus})
    if (to_string(a) == s) return a;
  throw make_error("ParseError", "unknown action '" + s + "'");
}

struct ExtensionProblem {
  SpaceDescription boundary;
  std::string label = "X";
  Int b2 = 0, b_plus = 0, b_minus = 0, sigma = 0;
  bool spin = false;
  bool h1_z2_zero = true;
  bool nonisolated_fixed_points = true;
  bool odd = true;
  ExtensionAction action = ExtensionAction::FixesC;
  Rat c_squared = 0;

  void validate() const {
    if (b2 < 0 || b_plus < 0 || b_minus < 0) throw make_error("ParseError", "Betti numbers must be non-negative");
    if (b_plus + b_minus > b2) throw make_error("ParseError", "b+ + b- exceeds b2");
    if (sigma != b_plus - b_minus) throw make_error("ParseError", "sigma must equal b+ - b-");
    if (spin && c_squared != 0) throw make_error("ParseError", "a spin filling has c = 0");
  }
};

namespace detail {

struct OrientedPiece {
  CobordismData w;
  Side boundary;  // ∂ of this piece, as a side of Y
  bool e_ok = false, r_ok = false, s_ok = false;
};

inline std::vector<OrientedPiece> extension_pieces(const ExtensionProblem& x, std::vector<std::string>& notes) {
  std::vector<OrientedPiece> out;
  const bool plus_action = x.action == ExtensionAction::TrivialH2 || x.action == ExtensionAction::TrivialHPlus;
  for (int o : {1, -1}) {
    OrientedPiece p;
    p.boundary = o > 0 ? Side::Pos : Side::Neg;
    p.w.label = o > 0 ? x.label : "-" + x.label;
    p.w.b_plus = o > 0 ? x.b_plus : x.b_minus;
    p.w.sigma = o * x.sigma;
    p.w.c_squared = o * x.c_squared;
    p.w.odd_involution = x.odd;
    const Int bp = p.w.b_plus;
    switch (x.action) {
      case ExtensionAction::FixesC:
      case ExtensionAction::NegatesC:
        if (bp != 0) continue;
        p.e_ok = x.action == ExtensionAction::FixesC;
        p.r_ok = x.action == ExtensionAction::NegatesC;
        if (p.r_ok && !x.nonisolated_fixed_points) {
          notes.push_back("type R rule skipped: fixed points of the extension may be isolated");
          p.r_ok = false;
        }
        p.s_ok = x.spin && x.odd;
        break;
      case ExtensionAction::TrivialH2:
      case ExtensionAction::MinusOneH2:
        if (!x.spin) {
          notes.push_back("homological action rules need a spin filling");
          return {};
        }
        p.w.b_plus_inv = plus_action ? bp : Int(0);
        p.w.b_plus_anti = plus_action ? Int(0) : bp;
        p.e_ok = p.w.b_plus_inv == 0;
        p.r_ok = p.w.b_plus_anti == 0;
        p.s_ok = x.odd;
        break;
      case ExtensionAction::TrivialHPlus:
      case ExtensionAction::NontrivialHPlus:
        if (o < 0) continue;  // the action on H+(-X) is not determined
        if (!x.spin || x.b_plus != 1) {
          notes.push_back("b+ = 1 rules need a spin filling with b+(X) = 1");
          return {};
        }
        p.w.b_plus_inv = plus_action ? 1 : 0;
        p.w.b_plus_anti = plus_action ? 0 : 1;
        p.s_ok = x.odd;
        break;
    }
    p.w.invariant_negative_definite = p.e_ok;
    p.w.anti_invariant_negative_definite = p.r_ok;
    out.push_back(p);
  }
  return out;
}

inline std::vector<std::string> extension_anchors(ExtensionAction a, SpincType t) {
  switch (a) {
    case ExtensionAction::FixesC: return {t == SpincType::S ? anchors::kDef3 : anchors::kDef1};
    case ExtensionAction::NegatesC: return {t == SpincType::S ? anchors::kDef3 : anchors::kDef2};
    case ExtensionAction::TrivialH2: return {anchors::kHt};
    case ExtensionAction::MinusOneH2: return {anchors::kHm};
    case ExtensionAction::TrivialHPlus: return {anchors::kBplus1};
    default: return {anchors::kBplus2};
  }
}

}  // namespace detail

// Can σ on ∂X extend over X with the hypothesized action? Facts from the
// matching proposition are added to the boundary profile and the engine
// looks for a contradiction.
inline VerdictReport check_extension(const ExtensionProblem& x, const InvariantRegistry& reg, bool strict = false) {
  x.validate();
  DeltaProfile p = derive_profile(x.boundary, reg, strict);
  std::vector<std::string> notes;
  if (!x.h1_z2_zero) {
    VerdictReport r;
    r.notes.push_back("hypothesis H1(X;Z2) = 0 not met");
    return r;
  }
  auto pieces = detail::extension_pieces(x, notes);
  std::vector<Fact> emitted;
  for (auto& piece : pieces) {
    for (SpincType t : {SpincType::E, SpincType::R, SpincType::S}) {
      bool ok = t == SpincType::E ? piece.e_ok : t == SpincType::R ? piece.r_ok : piece.s_ok;
      if (!ok || !p.types.count(t)) continue;
      CobordismData w = piece.w;
      if (t == SpincType::S) w.c_squared = 0;
      auto anchors_for = detail::extension_anchors(x.action, t);
      Provenance ctx = prov(anchors_for.front() + " (" + to_string(x.action) + ")", anchors_for,
                            {x.label + ": b2 = " + x.b2.str() + ", b+ = " + x.b_plus.str() + ", b- = " + x.b_minus.str() +
                             ", sigma = " + x.sigma.str() + (x.spin ? ", spin" : "")});
      for (auto& f : apply_froyshov(std::nullopt, BoundaryRef{&p, piece.boundary}, w, t, ctx)) emitted.push_back(f);
      for (auto& f : apply_froyshov(BoundaryRef{&p, opposite(piece.boundary)}, std::nullopt, w, t, ctx)) emitted.push_back(f);
    }
  }
  VerdictReport r = settle(p, !emitted.empty());
  r.emitted = std::move(emitted);
  r.notes.insert(r.notes.begin(), notes.begin(), notes.end());
  return r;
}

// Verdict over several alternative actions: obstructed only if every branch is.
inline Verdict combine_branches(const std::vector<VerdictReport>& rs) {
  if (rs.empty()) return Verdict::Insufficient;
  bool all_obstructed = true, any_consistent = false;
  for (const auto& r : rs) {
    all_obstructed = all_obstructed && r.verdict == Verdict::Obstructed;
    any_consistent = any_consistent || r.verdict == Verdict::Consistent;
  }
  if (all_obstructed) return Verdict::Obstructed;
  return any_consistent ? Verdict::Consistent : Verdict::Insufficient;
}

// ---------------------------------------------------------------- embeddings

struct EpsBound {
  Int lo = 0;
  std::optional<Int> hi;
  std::vector<std::string> lo_why, hi_why;

  void raise(const Int& v, const std::string& why) {
    if (v > lo) {
      lo = v;
      lo_why = {why};
    }
  }
  void lower(const Int& v, const std::string& why) {
    if (!hi || v < *hi) {
      hi = v;
      hi_why = {why};
    }
  }
  bool pinned() const { return hi && *hi == lo; }
};

inline std::string to_string(const EpsBound& b) {
  if (b.pinned()) return "[" + b.lo.str() + "," + b.lo.str() + "]";
  return "[" + b.lo.str() + "," + (b.hi ? b.hi->str() : std::string("inf")) + "]";
}

struct EmbeddingBounds {
  EpsBound eps_sigma;  // ε(Y,σ)
  EpsBound eps_plus;   // ε₊(Y,σ)
  EpsBound eps_minus;  // ε₋(Y,σ)
  EpsBound eps_y;      // ε(Y)
  std::vector<std::string> notes;
};

namespace detail {

inline bool z2_plumbable(const PlumbingGraph& g) {
  try {
    assign_z2_weights(g);
    return true;
  } catch (const Error&) {
    return false;
  }
}

inline std::optional<Int> homology_order(const SpaceDescription& d, const InvariantRegistry& reg) {
  auto abs = [](Int v) { return v < 0 ? Int(-v) : v; };
  if (std::holds_alternative<BrieskornSpace>(d.v)) return Int(1);
  if (auto* g = std::get_if<EvenPlumbingSpace>(&d.v)) return abs(determinant(linking_matrix(g->graph)));
  if (auto* m = std::get_if<MontesinosCoverSpace>(&d.v)) return abs(determinant(linking_matrix(to_star_plumbing(m->data, true).graph)));
  if (auto* s = std::get_if<SurgeryLinkSpace>(&d.v)) return abs(determinant(s->link.form()));
  if (auto* r = std::get_if<RationalSurgerySpace>(&d.v)) return abs(r->slope.p());
  if (auto* k = std::get_if<KnotCoverSpace>(&d.v)) return knot_determinant(k->knot, reg);
  if (auto* c = std::get_if<ConnectedSumSpace>(&d.v)) {
    Int o = 1;
    for (const auto& x : c->parts) {
      auto v = homology_order(x, reg);
      if (!v) return std::nullopt;
      o *= *v;
    }
    return o;
  }
  return std::nullopt;
}

inline void direct_upper_bounds(const SpaceDescription& d, const InvariantRegistry& reg, EmbeddingBounds& b);

inline void star_bounds(const StarPlumbing& star, bool conjugation, EmbeddingBounds& b, const std::string& what) {
  Int n(star.graph.size());
  if (conjugation) {
    b.eps_minus.lower(n, std::string(anchors::kEpplumb) + ": c_Gamma on a " + n.str() + "-vertex even star for " + what);
  } else if (z2_plumbable(star.graph)) {
    b.eps_plus.lower(n, std::string(anchors::kEpplumb) + ": m_Gamma on a " + n.str() + "-vertex Z2-equivariant even star for " + what);
  }
}

inline void torus_knot_bounds(const TorusKnot& t, EmbeddingBounds& b) {
  const Int g = (t.p - 1) * (t.q - 1);
  const std::string k = "T(" + t.p.str() + "," + t.q.str() + ")";
  b.eps_minus.lower(g, std::string(anchors::kDs) + ": g_ds(" + k + ") = 2 g4 = " + g.str() + " [derived]");
  if (t.p % 2 != 0 && t.q % 2 != 0) b.eps_minus.raise(g, std::string(anchors::kTpq) + ": (p-1)(q-1) = " + g.str());
}

inline void direct_upper_bounds(const SpaceDescription& d, const InvariantRegistry& reg, EmbeddingBounds& b) {
  const std::string what = space_key(d);
  if (auto* br = std::get_if<BrieskornSpace>(&d.v)) {
    bool has_even = false;
    for (const auto& a : br->data.exponents) has_even = has_even || a % 2 == 0;
    StarPlumbing star = smallest_even_star(brieskorn_seifert(br->data, !has_even));
    star_bounds(star, br->involution == BrieskornInvolution::C, b, what);
    const auto& e = br->data.exponents;
    if (br->involution == BrieskornInvolution::M && e.size() == 3) {
      std::vector<Int> s = e;
      std::sort(s.begin(), s.end());
      if (s[0] == 2 && s[1] % 2 != 0 && s[2] % 2 != 0) torus_knot_bounds(TorusKnot{s[1], s[2]}, b);
    }
  } else if (auto* g = std::get_if<EvenPlumbingSpace>(&d.v)) {
    StarPlumbing fake;
    fake.graph = g->graph;
    star_bounds(fake, g->involution == PlumbingInvolution::C, b, what);
  } else if (auto* m = std::get_if<MontesinosCoverSpace>(&d.v)) {
    star_bounds(to_star_plumbing(m->data, true), true, b, what);
  } else if (auto* s = std::get_if<SurgeryLinkSpace>(&d.v)) {
    Int k(s->link.framings().size());
    bool periodic = !s->link.symmetry.empty(), inverted = !s->link.symmetry.empty();
    for (auto c : s->link.symmetry) {
      periodic = periodic && c == ComponentSymmetry::TwoPeriodic;
      inverted = inverted && c == ComponentSymmetry::StronglyInvertible;
    }
    bool even = true;
    for (const auto& f : s->link.framings()) even = even && f % 2 == 0;
    if (even) {
      std::string why = std::string(anchors::kEemb) + ": " + k.str() + " components, even framings";
      b.eps_sigma.lower(k, why);
      b.eps_y.lower(k, why);
      if (periodic) b.eps_plus.lower(k, why + ", 2-periodic");
      if (inverted) b.eps_minus.lower(k, why + ", strongly invertible");
    }
  } else if (auto* r = std::get_if<RationalSurgerySpace>(&d.v)) {
    FramedLink link = surgery_chain(r->slope);
    bool even = true;
    for (const auto& f : link.framings()) even = even && f % 2 == 0;
    if (even) {
      Int k(link.framings().size());
      std::string why = std::string(anchors::kEemb) + " with " + anchors::kSlamDunk + ": " + k.str() + "-component even chain for " + to_string(r->slope);
      b.eps_sigma.lower(k, why);
      b.eps_y.lower(k, why);
      b.eps_minus.lower(k, why + ", strongly invertible");
    }
  } else if (auto* kc = std::get_if<KnotCoverSpace>(&d.v)) {
    const KnotModel* k = &kc->knot;
    while (auto* mi = std::get_if<MirrorKnot>(&k->v)) k = mi->inner.get();
    if (auto* t = std::get_if<TorusKnot>(&k->v)) {
      direct_upper_bounds(torus_cover_space(*t), reg, b);
      torus_knot_bounds(*t, b);
    } else if (auto* m = std::get_if<MontesinosKnot>(&k->v)) {
      star_bounds(to_star_plumbing(m->data, true), true, b, what);
    }
    if (auto g = reg.find("gds", knot_key(*k)))
      b.eps_minus.lower(ceil(*g), std::string(anchors::kDs) + ": " + registry_text(reg, "gds", knot_key(*k)));
  } else if (auto* c = std::get_if<ConnectedSumSpace>(&d.v)) {
    // Ambient manifolds add under equivariant connected sum.
    std::vector<EmbeddingBounds> parts;
    for (const auto& x : c->parts) {
      EmbeddingBounds pb;
      direct_upper_bounds(x, reg, pb);
      parts.push_back(std::move(pb));
    }
    auto add = [&](EpsBound EmbeddingBounds::*field, EpsBound& into) {
      Int total = 0;
      std::string why = "sum over summands:";
      for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& v = parts[i].*field;
        if (!v.hi) return;
        total += *v.hi;
        why += " " + space_key(c->parts[i]) + " <= " + v.hi->str() + (v.hi_why.empty() ? "" : " (" + v.hi_why.front() + ")");
      }
      into.lower(total, why);
    };
    add(&EmbeddingBounds::eps_sigma, b.eps_sigma);
    add(&EmbeddingBounds::eps_plus, b.eps_plus);
    add(&EmbeddingBounds::eps_minus, b.eps_minus);
    add(&EmbeddingBounds::eps_y, b.eps_y);
  }
  SpaceDescription pos = d;
  pos.orientation = Side::Pos;
  const std::string key = space_key(pos);
  if (auto v = reg.find("eps", key)) {
    b.eps_y.lower(num(*v), std::string(anchors::kRegistry) + ": " + registry_text(reg, "eps", key));
    b.eps_y.raise(num(*v), std::string(anchors::kRegistry) + ": " + registry_text(reg, "eps", key));
  }
  // ε(Y) <= ε(Y,σ) <= ε±(Y,σ) on the upper side.
  for (auto* v : {&b.eps_plus, &b.eps_minus})
    if (v->hi) b.eps_sigma.lower(*v->hi, std::string(anchors::kEmbOrder) + " from " + v->hi_why.front());
  if (b.eps_sigma.hi) b.eps_y.lower(*b.eps_sigma.hi, std::string(anchors::kEmbOrder) + " from " + b.eps_sigma.hi_why.front());
}

inline bool provably_nonzero(const Interval& v) { return !v.contains_zero(); }

inline std::vector<DeltaIndex> probe_indices(SpincType t) {
  if (t == SpincType::S)
    return {DeltaIndex::s(0, 0), DeltaIndex::s(0, 1), DeltaIndex::s(1, 0), DeltaIndex::s(0, kInfIndex), DeltaIndex::s(kInfIndex, 0),
            DeltaIndex::s(kInfIndex, 1)};
  return {DeltaIndex::t(t, 0), DeltaIndex::t(t, kInfIndex)};
}

// Is Y ∪ (negative definite E8 piece with boundary ±Y) impossible? Tried for
// both sides; true when both contradict.
inline bool e8_piece_excluded(const DeltaProfile& p, std::string& why) {
  for (Side s : {Side::Pos, Side::Neg}) {
    DeltaProfile q = p;
    CobordismData w;
    w.label = "E8 piece";
    w.b_plus = 0;
    w.sigma = -8;
    w.invariant_negative_definite = w.anti_invariant_negative_definite = true;
    Provenance ctx = prov(anchors::kLatticeSplit, {anchors::kLatticeSplit}, {"piece bounding " + std::string(s == Side::Pos ? "Y" : "-Y")});
    for (SpincType t : {SpincType::E, SpincType::R, SpincType::S}) {
      if (!q.types.count(t)) continue;
      apply_froyshov(std::nullopt, BoundaryRef{&q, s}, w, t, ctx);
      apply_froyshov(BoundaryRef{&q, opposite(s)}, std::nullopt, w, t, ctx);
    }
    Solved sol(q);
    if (sol.consistent()) return false;
    why += (why.empty() ? "" : " | ") + std::string(s == Side::Pos ? "E8 bounding Y: " : "E8 bounding -Y: ");
    std::string part;
    for (auto k : sol.contradiction()->facts) part += (part.empty() ? "" : "; ") + to_string(q.facts[k]);
    why += part;
  }
  return true;
}

}  // namespace detail

// Intervals for the embedding numbers of (Y, σ) into #n(S² x S²).
inline EmbeddingBounds embedding_bounds(const SpaceDescription& d, const InvariantRegistry& reg) {
  EmbeddingBounds b;
  detail::direct_upper_bounds(d, reg, b);

  std::optional<DeltaProfile> prof;
  try {
    prof = derive_profile(d, reg, false);
    if (!check(*prof).consistent) {
      b.notes.push_back("profile is contradictory; lower bounds from delta invariants omitted");
      prof.reset();
    }
  } catch (const Error& e) {
    b.notes.push_back(std::string("no delta profile: ") + e.what());
  }
  auto order = detail::homology_order(d, reg);
  const bool zhs = order && *order == 1;
  if (!zhs) b.notes.push_back("lower bounds need an integral homology sphere");

  if (zhs && prof) {
    const DeltaProfile& p = *prof;
    for (const auto& s : p.skipped) b.notes.push_back(s);
    // Rokhlin: μ ≡ δ^S (mod 2) up to sign.
    const bool mu_odd = p.congruence.s_mod2 && is_integer(*p.congruence.s_mod2) && num(*p.congruence.s_mod2) % 2 != 0;
    if (mu_odd) b.eps_y.raise(8, std::string(anchors::kRokhlinEmb) + ": Rokhlin invariant 1");
    std::vector<std::pair<Side, DeltaIndex>> extra;
    for (Side s : {Side::Pos, Side::Neg})
      for (SpincType t : {SpincType::E, SpincType::R, SpincType::S})
        if (p.types.count(t))
          for (auto x : detail::probe_indices(t)) extra.emplace_back(s, x);
    Solved sol(p, extra);
    for (const auto& [s, x] : extra) {
      Interval v = sol.bound(s, x).value;
      if (detail::provably_nonzero(v)) {
        b.eps_sigma.raise(2, std::string(anchors::kEmb1) + ": " + to_string(x, s) + " in " + to_string(v));
        break;
      }
    }
    for (Side s : {Side::Pos, Side::Neg}) {
      for (SpincType t : {SpincType::R, SpincType::E}) {
        if (!p.types.count(t)) continue;
        TailQuery q = query_tail(p, s, t);
        EpsBound& target = t == SpincType::R ? b.eps_plus : b.eps_minus;
        const char* a = t == SpincType::R ? anchors::kEmb2 : anchors::kEmb3;
        std::string y = s == Side::Pos ? "Y" : "-Y";
        target.raise(Int(q.j_lo), std::string(a) + ": j^" + type_letter(t) + "(" + y + ") >= " + std::to_string(q.j_lo));
        if (q.tail.hi.kind == ExtRat::Kind::Finite) {
          Rat v = Rat(2 * q.j_lo) - 8 * q.tail.hi.value;
          target.raise(ceil(v), std::string(a) + ": 2 j^" + type_letter(t) + "(" + y + ") - 8 delta^" + type_letter(t) + "_inf(" + y +
                                    ") >= 2*" + std::to_string(q.j_lo) + " - 8*" + to_string(q.tail.hi.value));
        }
      }
      if (p.types.count(SpincType::S)) {
        Interval a = sol.bound(s, DeltaIndex::s(0, 1)).value, c = sol.bound(s, DeltaIndex::s(1, 0)).value;
        if (detail::provably_nonzero(a) && detail::provably_nonzero(c))
          b.eps_sigma.raise(4, std::string(anchors::kEmb4) + ": delta^S_{0,1}, delta^S_{1,0} nonzero on " + (s == Side::Pos ? "Y" : "-Y"));
      }
    }
    if (mu_odd && p.types.count(SpincType::S)) {
      // Not all of δ^S_{0,∞}, δ^S_{∞,0}, δ^S_{∞,1} are >= 1, and not all are <= -1.
      bool below = false, above = false;
      for (auto x : {DeltaIndex::s(0, kInfIndex), DeltaIndex::s(kInfIndex, 0), DeltaIndex::s(kInfIndex, 1)}) {
        Interval v = sol.bound(Side::Pos, x).value;
        below = below || v.hi < ExtRat::of(1);
        above = above || ExtRat::of(-1) < v.lo;
      }
      if (below && above) b.eps_sigma.raise(10, std::string(anchors::kEmb5) + ": S tails do not share a sign");
    }
    if (mu_odd && b.eps_sigma.lo < 10) {
      std::string why;
      if (detail::e8_piece_excluded(p, why)) b.eps_sigma.raise(10, std::string(anchors::kLatticeSplit) + ": n <= 9 forces an E8 piece; " + why);
    }
  }
  // ε(Y) <= ε(Y,σ) <= ε±(Y,σ) on the lower side.
  b.eps_sigma.raise(b.eps_y.lo, std::string(anchors::kEmbOrder) + " from eps(Y) >= " + b.eps_y.lo.str());
  for (auto* v : {&b.eps_plus, &b.eps_minus}) v->raise(b.eps_sigma.lo, std::string(anchors::kEmbOrder) + " from eps(Y,sigma) >= " + b.eps_sigma.lo.str());
  for (auto* v : {&b.eps_sigma, &b.eps_plus, &b.eps_minus, &b.eps_y})
    if (v->hi && *v->hi < v->lo) b.notes.push_back("conflict: lower bound " + v->lo.str() + " exceeds upper bound " + v->hi->str());
  return b;
}

// ---------------------------------------------------------------- surfaces

struct SurfaceData {
  KnotModel knot;
  Int euler = 0;  // e(S), relative to the zero framing
  Int b1 = 1;     // b₁(S)

  void validate() const {
    if (euler % 2 != 0) throw make_error("ParseError", "e(S) must be even");
    if (b1 < 1) throw make_error("ParseError", "b1(S) must be positive");
  }
};

// Necessary conditions on (x, y) = (σ(K) - e(S)/2, b₁(S)).
inline bool xy_feasible(const Int& x, const Int& y) {
  Int ax = x < 0 ? Int(-x) : x;
  return y >= 0 && ax <= y && (x - y) % 2 == 0;
}

inline VerdictReport surface_constraints(const SurfaceData& s, const InvariantRegistry& reg, bool strict = false) {
  s.validate();
  auto sig = knot_signature(s.knot, reg);
  if (!sig) throw make_error("UnknownInput", "sigma(" + knot_key(s.knot) + ") is not available");
  if (!is_integer(sig->value)) throw make_error("ParseError", "knot signature must be an integer");
  const Int x = num(sig->value) - s.euler / 2, y = s.b1;
  VerdictReport r;
  r.notes.push_back(sig->source);
  r.notes.push_back("x = " + x.str() + ", y = " + y.str() + "; b+(X) = (x+y)/2, b-(X) = (y-x)/2 [" + anchors::kBpm + "]");
  if (!xy_feasible(x, y)) {
    r.verdict = Verdict::Infeasible;
    r.chain.push_back(std::string(anchors::kXy) + ": need |x| <= y and x = y mod 2");
    return r;
  }
  if (x == y) {
    VerdictReport m = surface_constraints({KnotModel::mirror(s.knot), -s.euler, s.b1}, reg, strict);
    m.notes.insert(m.notes.begin(), "x = y: replaced K by its mirror");
    return m;
  }
  if (x != -y) {
    r.verdict = Verdict::Consistent;
    return r;
  }
  auto det = knot_determinant(s.knot, reg);
  DeltaProfile p = knot_delta_profile(s.knot, reg, strict);
  if (!p.types.count(SpincType::R)) {
    r.notes.push_back("no type R structure on the branched cover");
    return r;
  }
  Provenance pr = prov(anchors::kNoxy, {anchors::kNoxy, anchors::kFroyR}, {"x = -y = " + x.str() + ", negative definite branched cover of D4"});
  p.add_at(Side::Pos, DeltaIndex::r(kInfIndex), Rel::Ge, 0, pr);
  p.add_at(Side::Neg, DeltaIndex::r(0), Rel::Le, 0, pr);
  Solved sol(p);
  if (!det || *det != 1) {
    r.verdict = Verdict::Insufficient;
    r.notes.push_back("det(K) " + (det ? "= " + det->str() : std::string("unknown")) +
                      ": the required structure need not be spin, only the spin profile is known");
    return r;
  }
  if (!sol.consistent()) {
    r.verdict = Verdict::Obstructed;
    r.chain = contradiction_chain(p, *sol.contradiction());
    return r;
  }
  r.verdict = p.skipped.empty() ? Verdict::Consistent : Verdict::Insufficient;
  for (const auto& k : p.skipped) r.notes.push_back(k);
  return r;
}

// ---------------------------------------------------------------- stabilization

struct StabilizationProblem {
  Int sigma_x0 = 0;                       // σ(X₀)
  SpincType type = SpincType::R;          // R: σ₀ = +1 on H², E: σ₀ = -1
  Int b2_w = 8;                           // rank of the even negative definite form of W
  Int m = 0;                              // copies of S² x S²
  bool spin = true, h1_z2_zero = true, odd = true, fixed_points = true;
};

inline VerdictReport nonsmoothable_stabilization(const StabilizationProblem& s) {
  if (s.type == SpincType::S) throw make_error("HypothesisViolation", "sigma_0 must act as +1 or -1 on H2(X0)");
  if (!s.spin || !s.h1_z2_zero || !s.odd || !s.fixed_points)
    throw make_error("HypothesisViolation", "X0 must be spin with H1(X0;Z2) = 0 and a non-free odd involution");
  if (s.b2_w <= 0) throw make_error("HypothesisViolation", "the form of W must have non-zero rank");
  if (s.b2_w % 8 != 0) throw make_error("HypothesisViolation", "an even negative definite unimodular form has rank divisible by 8");
  if (s.m < 0) throw make_error("HypothesisViolation", "m must be non-negative");
  VerdictReport r;
  const Int k = s.b2_w / 8;
  r.notes.push_back("m = " + s.m.str() + ", 3 b2(W)/8 = " + Int(3 * k).str());
  if (!(s.m > 3 * k)) {
    r.verdict = Verdict::NoVerdict;
    r.notes.push_back(std::string(anchors::kNsi) + " needs m > 3 b2(W)/8");
    return r;
  }
  DeltaProfile p("Y = boundary of X0");
  const char* eq = s.type == SpincType::R ? anchors::kHt : anchors::kHm;
  p.add_from(Side::Pos, s.type, 0, Rel::Ge, -Rat(s.sigma_x0) / 8, prov(eq, {eq}, {"sigma(X0) = " + s.sigma_x0.str()}));
  p.add_at(Side::Pos, DeltaIndex::t(s.type, kInfIndex), Rel::Le, -Rat(s.sigma_x0) / 8, prov(eq, {eq}, {"sigma(X0) = " + s.sigma_x0.str()}));
  CobordismData w;
  w.label = "X(" + s.m.str() + ")";
  w.b_plus = s.m;
  w.sigma = s.sigma_x0 - 2 * s.b2_w;
  w.invariant_negative_definite = s.type == SpincType::E;
  w.anti_invariant_negative_definite = s.type == SpincType::R;
  apply_froyshov(std::nullopt, BoundaryRef{&p, Side::Pos}, w, s.type,
                 prov(anchors::kNsi, {anchors::kNsi}, {"X(m) = X0 # m(S2xS2) # 2W, W swapped: sigma(X(m)) = sigma(X0) - 2 b2(W)"}));
  Solved sol(p);
  if (sol.consistent()) throw make_error("InternalError", "Froyshov replay did not contradict");
  r.verdict = Verdict::NonSmoothable;
  r.chain = contradiction_chain(p, *sol.contradiction());
  return r;
}

}  // namespace eqdelta
