#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "eqdelta/classical.hpp"
#include "eqdelta/delta_engine.hpp"
#include "eqdelta/space.hpp"

namespace eqdelta {

DeltaProfile derive_profile(const SpaceDescription& d, const InvariantRegistry& reg, bool strict = false);

namespace detail {

inline std::string registry_text(const InvariantRegistry& reg, const std::string& name, const std::string& key) {
  const auto& e = reg.get(name, key);
  return name + "(" + key + ") = " + to_string(e.value) + " [" + to_string(e.source) + "]";
}

// Registry lookup for a gated rule; absence is recorded, never guessed.
inline std::optional<Rat> gated(const InvariantRegistry& reg, const std::string& name, const std::string& key, DeltaProfile& p, bool strict,
                                const std::string& rule) {
  auto v = reg.find(name, key);
  if (!v) {
    if (strict) throw make_error("UnknownInput", rule + " needs " + name + "(" + key + ") in the registry");
    p.skipped.push_back(rule + ": skipped, " + name + "(" + key + ") not in registry");
  }
  return v;
}

struct SpinCobordism {
  SignatureProfile form;
  int action;  // +1 or -1 on H²
  std::string label;
};

// Frøyshov applied to X and -X in both boundary roles; c = 0.
inline void froyshov_both_ways(DeltaProfile& p, const SpinCobordism& x, const Provenance& ctx) {
  for (int orient : {1, -1}) {
    CobordismData w;
    w.label = orient > 0 ? x.label : "-" + x.label;
    Int bp = orient > 0 ? Int(x.form.b_plus) : Int(x.form.b_minus);
    w.b_plus = bp;
    w.sigma = orient * x.form.sigma();
    w.b_plus_inv = x.action > 0 ? bp : Int(0);
    w.b_plus_anti = x.action > 0 ? Int(0) : bp;
    w.invariant_negative_definite = w.b_plus_inv == 0;
    w.anti_invariant_negative_definite = w.b_plus_anti == 0;
    Side boundary = orient > 0 ? Side::Pos : Side::Neg;  // ∂(±X) = ±Y
    for (SpincType t : {SpincType::E, SpincType::R, SpincType::S}) {
      if (!p.types.count(t)) continue;
      if (t == SpincType::E && !w.invariant_negative_definite) continue;
      if (t == SpincType::R && !w.anti_invariant_negative_definite) continue;
      apply_froyshov(std::nullopt, BoundaryRef{&p, boundary}, w, t, ctx);
      apply_froyshov(BoundaryRef{&p, opposite(boundary)}, std::nullopt, w, t, ctx);
    }
  }
}

inline void add_knot_facts(DeltaProfile& p, const std::string& knot, const Rat& sigma, const std::string& sigma_src,
                           const std::optional<Rat>& g4, const std::string& g4_src, bool quasi_alternating) {
  const Rat v = -sigma / 8;
  std::vector<std::string> in{"sigma(" + knot + ") = " + to_string(sigma) + " [" + sigma_src + "]"};
  p.congruence.quarter = true;
  p.set_ordinary_mod1(v, prov(anchors::kKnot3, {anchors::kKnot3}, in));
  p.set_s_mod2(v, prov(anchors::kKnot3, {anchors::kKnot3}, in));
  if (g4) {
    auto in4 = in;
    in4.push_back("g4(" + knot + ") = " + to_string(*g4) + " [" + g4_src + "]");
    Rat th = *g4 - sigma / 2;
    long long J = static_cast<long long>(ceil(th));
    if (J < 0) J = 0;
    auto p4 = prov(anchors::kKnot4, {anchors::kKnot4}, in4);
    p.add_from(Side::Pos, SpincType::E, J, Rel::Eq, v, p4);
    p.add_s_axis(Side::Pos, DeltaProfile::SAxis::ZeroJ, J, Rel::Eq, v, p4);
    if (*g4 == -sigma / 2) {
      auto p6 = prov(anchors::kKnot6, {anchors::kKnot6}, in4);
      p.add_at(Side::Pos, DeltaIndex::r(kInfIndex), Rel::Ge, v, p6);
      p.add_at(Side::Neg, DeltaIndex::r(0), Rel::Le, -v, p6);
    }
    if (*g4 == 1 - sigma / 2) {
      auto p7 = prov(anchors::kKnot7, {anchors::kKnot7}, in4);
      p.add_s_axes(Side::Pos, Rel::Ge, v, p7);
      p.add_at(Side::Neg, DeltaIndex::s(0, 1), Rel::Le, -v, p7);
    }
  }
  if (quasi_alternating) {
    auto p5 = prov(anchors::kKnot5, {anchors::kKnot5}, in);
    p.add_from(Side::Pos, SpincType::E, 0, Rel::Eq, v, p5);
    p.add_from(Side::Pos, SpincType::R, 0, Rel::Eq, v, p5);
    p.add_all_valid_s(Side::Pos, Rel::Eq, v, p5);
  }
}

struct MuBar {
  Rat value;
  std::string text;
};

inline MuBar brieskorn_mu_bar(const BrieskornData& d) {
  bool has_even = false;
  for (const auto& a : d.exponents) has_even = has_even || a % 2 == 0;
  SeifertData s = brieskorn_seifert(d, !has_even);
  StarPlumbing star = has_even ? smallest_even_star(s) : to_star_plumbing(s, false);
  Rat mb = mu_bar(star.graph);
  return {mb, "mu_bar(" + to_string(d) + ") = " + to_string(mb) + " [derived: Wu class on a " + std::to_string(star.graph.size()) +
                  "-vertex " + (has_even ? "even" : "parity-normal") + " star plumbing]"};
}

inline DeltaProfile derive_brieskorn(const BrieskornSpace& b, const InvariantRegistry& reg, bool strict, const std::string& key) {
  DeltaProfile p(key);
  const std::string y = to_string(b.data);
  MuBar mb = brieskorn_mu_bar(b.data);
  const Rat m = mb.value;
  std::vector<std::string> in{mb.text};
  p.set_ordinary_mod1(0, prov("integral homology sphere", {anchors::kCongruence}, {y + " has H1 = 0"}));
  p.set_s_mod2(-m, prov("Rokhlin residue", {anchors::kCongruence}, in));

  auto reg_delta = gated(reg, "delta", y, p, strict, anchors::kBrie2);
  if (reg_delta) p.set_ordinary(*reg_delta, prov(anchors::kRegistry, {anchors::kRegistry}, {registry_text(reg, "delta", y)}));

  using A = DeltaProfile::SAxis;
  if (b.involution == BrieskornInvolution::C) {
    p.add_from(Side::Pos, SpincType::E, 1, Rel::Eq, -m, prov(anchors::kBrie1, {anchors::kBrie1}, in));
    if (reg_delta) p.add_at(Side::Pos, DeltaIndex::e(0), Rel::Eq, 0, prov(anchors::kBrie2, {anchors::kBrie2}, {registry_text(reg, "delta", y)}), true);
    p.add_from(Side::Neg, SpincType::E, 0, Rel::Eq, m, prov(anchors::kBrie3, {anchors::kBrie3}, in));
    p.add_s_axis(Side::Pos, A::ZeroJ, 1, Rel::Eq, -m, prov(anchors::kBrie4, {anchors::kBrie4}, in));
    p.add_s_axis(Side::Pos, A::JOne, 1, Rel::Eq, -m, prov(anchors::kBrie4, {anchors::kBrie4}, in));
    p.add_all_valid_s(Side::Neg, Rel::Eq, m, prov(anchors::kBrie6, {anchors::kBrie6}, in));
    p.add_from(Side::Pos, SpincType::R, 0, Rel::Ge, -m, prov(anchors::kBrie7, {anchors::kBrie7}, in));
    p.add_from(Side::Neg, SpincType::R, 0, Rel::Le, m, prov(anchors::kBrie7, {anchors::kBrie7}, in));
    return p;
  }

  p.add_from(Side::Pos, SpincType::R, 1, Rel::Eq, -m, prov(anchors::kBrie1, {anchors::kBrie1}, in));
  if (reg_delta) p.add_at(Side::Pos, DeltaIndex::r(0), Rel::Eq, 0, prov(anchors::kBrie2, {anchors::kBrie2}, {registry_text(reg, "delta", y)}), true);
  p.add_from(Side::Neg, SpincType::R, 0, Rel::Eq, m, prov(anchors::kBrie3, {anchors::kBrie3}, in));
  p.add_s_axis(Side::Pos, A::JZero, 1, Rel::Eq, -m, prov(anchors::kBrie4, {anchors::kBrie4}, in));
  p.add_s_axis(Side::Pos, A::JOne, 1, Rel::Eq, -m, prov(anchors::kBrie4, {anchors::kBrie4}, in));
  p.add_s_axis(Side::Neg, A::JZero, 1, Rel::Eq, m, prov(anchors::kBrie5, {anchors::kBrie5}, in));
  p.add_s_axis(Side::Neg, A::JOne, 1, Rel::Eq, m, prov(anchors::kBrie5, {anchors::kBrie5}, in));

  // Σ(2,p,q) with p, q odd is the branched cover of T(p,q) with m as covering involution.
  const auto& e = b.data.exponents;
  if (e.size() == 3 && e[0] == 2 && e[1] % 2 != 0 && e[2] % 2 != 0) {
    auto lambda = gated(reg, "lambda", y, p, strict, anchors::kCasson);
    if (lambda) {
      std::vector<std::string> lin{registry_text(reg, "lambda", y)};
      p.add_from(Side::Pos, SpincType::E, 0, Rel::Eq, -*lambda, prov(anchors::kCasson, {anchors::kCasson}, lin));
      p.add_at(Side::Neg, DeltaIndex::e(kInfIndex), Rel::Eq, *lambda, prov(anchors::kCassonMirror, {anchors::kCassonMirror}, lin));
    }
    const std::string knot = "T(" + e[1].str() + "," + e[2].str() + ")";
    add_knot_facts(p, knot, Rat(torus_signature(e[1], e[2])), "derived: torus signature count", Rat(torus_slice_genus(e[1], e[2])),
                   "derived: (p-1)(q-1)/2", false);
  }
  return p;
}

inline DeltaProfile derive_even_plumbing(const EvenPlumbingSpace& s, const std::string& key) {
  const auto& g = s.graph;
  if (g.size() == 0 || g.components().size() != 1) throw make_error("ParseError", "plumbing graph must be connected and non-empty");
  if (!g.all_degrees_even()) throw make_error("OddDegree", "even plumbing needs every degree even");
  SymForm a = linking_matrix(g);
  if (determinant(a) == 0) throw make_error("DegenerateForm", "linking matrix is singular");
  if (s.involution == PlumbingInvolution::M) (void)assign_z2_weights(g);
  DeltaProfile p(key);
  SignatureProfile sp = signature_profile(a);
  const Rat v = -Rat(sp.sigma()) / 8;
  const int action = s.involution == PlumbingInvolution::C ? -1 : 1;
  std::vector<std::string> in{"sigma(Gamma) = " + std::to_string(sp.sigma()) + ", b+ = " + std::to_string(sp.b_plus) +
                              ", b- = " + std::to_string(sp.b_minus) + " [derived]"};
  p.set_ordinary_mod1(v, prov("spin filling residue", {anchors::kCongruence}, in));
  p.set_s_mod2(v, prov("spin filling residue", {anchors::kCongruence}, in));
  froyshov_both_ways(p, {sp, action, "X_Gamma"}, prov(action < 0 ? anchors::kPlumb1 : anchors::kPlumb2, {}, in));
  const long long j = static_cast<long long>(j_gamma(g));
  auto pin = in;
  pin.push_back("j(Gamma) = " + std::to_string(j) + " [derived]");
  using A = DeltaProfile::SAxis;
  if (action < 0) {
    auto pr = prov(anchors::kPlumb1, {anchors::kPlumb1}, pin);
    p.add_from(Side::Pos, SpincType::E, j, Rel::Eq, v, pr);
    p.add_s_axis(Side::Pos, A::ZeroJ, j, Rel::Eq, v, pr);
  } else {
    auto pr = prov(anchors::kPlumb2, {anchors::kPlumb2}, pin);
    p.add_from(Side::Pos, SpincType::R, j, Rel::Eq, v, pr);
    p.add_s_axis(Side::Pos, A::JZero, j, Rel::Eq, v, pr);
    p.add_s_axis(Side::Pos, A::JOne, j, Rel::Eq, v, pr);
  }
  return p;
}

inline DeltaProfile derive_montesinos(const MontesinosCoverSpace& m, const InvariantRegistry& reg, bool strict, const std::string& key) {
  StarPlumbing star = to_star_plumbing(m.data, true);
  DeltaProfile p = derive_even_plumbing({star.graph, PlumbingInvolution::C, key}, key);
  const Rat e = euler_number(m.data);
  const Rat mb = mu_bar(star.graph);
  std::vector<std::string> in{"e = " + to_string(e) + " [derived]",
                              "sigma(K)/8 = mu_bar(" + to_string(m.data) + ") = " + to_string(mb) + " [derived]"};
  auto pr = prov(anchors::kMont, {anchors::kMont}, in);
  if (e > 0) {
    p.add_from(Side::Pos, SpincType::E, 0, Rel::Eq, -mb, pr);
  } else {
    p.add_from(Side::Pos, SpincType::E, 1, Rel::Eq, -mb, pr);
    p.add_at(Side::Pos, DeltaIndex::e(0), Rel::Eq, 0, pr, true);
  }
  (void)reg;
  (void)strict;
  return p;
}

inline SpinCobordism trace_of(const FramedLink& link, const char* anchor_label) {
  link.validate();
  for (const auto& f : link.framings())
    if (f % 2 != 0) throw make_error("ParityViolation", "surgery framings must be even");
  SymForm a = link.form();
  if (determinant(a) == 0) throw make_error("DegenerateForm", "linking matrix is singular");
  bool periodic = !link.symmetry.empty(), inverted = !link.symmetry.empty();
  for (auto s : link.symmetry) {
    periodic = periodic && s == ComponentSymmetry::TwoPeriodic;
    inverted = inverted && s == ComponentSymmetry::StronglyInvertible;
  }
  if (!periodic && !inverted) throw make_error("ParseError", "link must be entirely 2-periodic or entirely strongly invertible");
  return {signature_profile(a), periodic ? 1 : -1, anchor_label};
}

inline DeltaProfile derive_surgery_link(const SurgeryLinkSpace& s, const std::string& key) {
  DeltaProfile p(key);
  SpinCobordism x = trace_of(s.link, "trace X");
  std::vector<std::string> in{"sigma(A) = " + std::to_string(x.form.sigma()) + ", b-(A) = " + std::to_string(x.form.b_minus) + " [derived]"};
  const char* a = x.action > 0 ? anchors::kSurg1 : anchors::kSurg2;
  const Rat v = -Rat(x.form.sigma()) / 8;
  p.set_ordinary_mod1(v, prov("spin filling residue", {anchors::kCongruence}, in));
  p.set_s_mod2(v, prov("spin filling residue", {anchors::kCongruence}, in));
  froyshov_both_ways(p, x, prov(a, {a}, in));
  return p;
}

inline DeltaProfile derive_rational_surgery(const RationalSurgerySpace& r, const InvariantRegistry& reg, bool strict, const std::string& key) {
  DeltaProfile p(key);
  FramedLink link = surgery_chain(r.slope);
  SpinCobordism x = trace_of(link, "slam-dunk trace");
  std::vector<std::string> in{"p/q = " + to_string(r.slope), "sigma(A) = " + std::to_string(x.form.sigma()) +
                                                                 ", b-(A) = " + std::to_string(x.form.b_minus) + " [derived]"};
  froyshov_both_ways(p, x, prov(anchors::kSlamDunk, {anchors::kSlamDunk}, in));
  const Int pp = r.slope.p(), qq = r.slope.q();
  if (pp * pp == 1) {
    auto pr = prov(anchors::kHalfInteger, {anchors::kHalfInteger}, in);
    p.add_from(Side::Pos, SpincType::E, 1, Rel::Eq, 0, pr);
    p.add_from(Side::Neg, SpincType::E, 1, Rel::Eq, 0, pr);
  }
  if (qq > pp && pp > 0) {
    if (auto v0 = gated(reg, "V0", r.knot, p, strict, anchors::kV0))
      p.add_at(Side::Neg, DeltaIndex::e(kInfIndex), Rel::Eq, -*v0, prov(anchors::kV0, {anchors::kV0}, {registry_text(reg, "V0", r.knot)}), true);
    if (auto nu = gated(reg, "nu+", r.knot, p, strict, anchors::kNuPlus); nu && *nu > 0)
      p.stabilization.push_back({Side::Neg, SpincType::E, 1, prov(anchors::kNuPlus, {anchors::kNuPlus}, {registry_text(reg, "nu+", r.knot)})});
  }
  return p;
}

inline DeltaProfile derive_connected_sum(const ConnectedSumSpace& c, const InvariantRegistry& reg, bool strict, const std::string& key,
                                         const char* anchor) {
  std::vector<DeltaProfile> parts;
  for (const auto& d : c.parts) parts.push_back(derive_profile(d, reg, strict));
  DeltaProfile p(key);
  std::vector<Summand> refs;
  for (const auto& x : parts) {
    refs.push_back({&x});
    for (const auto& s : x.skipped) p.skipped.push_back(x.key + ": " + s);
  }
  apply_connected_sum(p, refs, anchor);
  return p;
}

inline DeltaProfile knot_cover_profile(const KnotModel& k, const InvariantRegistry& reg, bool strict, const std::string& key);

inline SpaceDescription torus_cover_space(const TorusKnot& t) {
  if (t.p % 2 != 0 && t.q % 2 != 0) {
    std::vector<Int> e{Int(2), std::min(t.p, t.q), std::max(t.p, t.q)};
    return {BrieskornSpace{BrieskornData(e), BrieskornInvolution::M}, Side::Pos};
  }
  StarPlumbing star = to_star_plumbing(even_torus_cover_seifert(t.p, t.q), true);
  return {EvenPlumbingSpace{star.graph, PlumbingInvolution::M, "Sigma_2(T(" + t.p.str() + "," + t.q.str() + "))"}, Side::Pos};
}

inline DeltaProfile knot_cover_profile(const KnotModel& k, const InvariantRegistry& reg, bool strict, const std::string& key) {
  const std::string kk = knot_key(k);
  if (auto* t = std::get_if<TorusKnot>(&k.v)) {
    DeltaProfile p = derive_profile(torus_cover_space(*t), reg, strict);
    p.key = key;
    if (t->p % 2 == 0 || t->q % 2 == 0) {
      bool two = t->p == 2 || t->q == 2;
      add_knot_facts(p, kk, Rat(torus_signature(t->p, t->q)), "derived: torus signature count", Rat(torus_slice_genus(t->p, t->q)),
                     "derived: (p-1)(q-1)/2", two);
      if (two) p.lspace = true;
    }
    return p;
  }
  if (auto* m = std::get_if<MontesinosKnot>(&k.v)) {
    DeltaProfile p = derive_montesinos({m->data}, reg, strict, key);
    StarPlumbing star = to_star_plumbing(m->data, true);
    Rat sigma = 8 * mu_bar(star.graph);
    std::string src = "derived: 8 mu_bar of the branched cover";
    if (auto rs = reg.find("sigma", kk)) {
      if (*rs != sigma) throw make_error("Contradiction", "registry sigma(" + kk + ") disagrees with 8 mu_bar = " + to_string(sigma));
      src = to_string(reg.get("sigma", kk).source);
    }
    auto g4 = gated(reg, "g4", kk, p, strict, anchors::kKnot4);
    add_knot_facts(p, kk, sigma, src, g4, g4 ? to_string(reg.get("g4", kk).source) : "", false);
    return p;
  }
  if (auto* q = std::get_if<QuasiAlternatingKnot>(&k.v)) {
    DeltaProfile p(key);
    auto sigma = gated(reg, "sigma", q->key, p, strict, anchors::kKnot5);
    if (!sigma) return p;
    auto g4 = reg.find("g4", q->key);
    add_knot_facts(p, q->key, *sigma, to_string(reg.get("sigma", q->key).source), g4, g4 ? to_string(reg.get("g4", q->key).source) : "", true);
    p.lspace = true;
    p.lspace_prov = prov(anchors::kLSpace, {anchors::kLSpace, anchors::kKnot5}, {"branched cover of a quasi-alternating knot"});
    return p;
  }
  if (auto* mi = std::get_if<MirrorKnot>(&k.v)) return knot_cover_profile(*mi->inner, reg, strict, "-" + key).reversed(key);
  if (auto* s = std::get_if<KnotSum>(&k.v)) {
    ConnectedSumSpace c;
    for (const auto& x : s->parts) c.parts.push_back({KnotCoverSpace{x}, Side::Pos});
    return derive_connected_sum(c, reg, strict, key, anchors::kSubadd);
  }
  throw make_error("Unsupported", "knot " + kk + " has no usable model");
}

}  // namespace detail

inline DeltaProfile derive_profile(const SpaceDescription& d, const InvariantRegistry& reg, bool strict) {
  SpaceDescription pos = d;
  pos.orientation = Side::Pos;
  const std::string key = space_key(pos) + "|" + involution_of(pos);
  DeltaProfile p;
  if (auto* b = std::get_if<BrieskornSpace>(&d.v)) p = detail::derive_brieskorn(*b, reg, strict, key);
  else if (auto* g = std::get_if<EvenPlumbingSpace>(&d.v)) p = detail::derive_even_plumbing(*g, key);
  else if (auto* m = std::get_if<MontesinosCoverSpace>(&d.v)) p = detail::derive_montesinos(*m, reg, strict, key);
  else if (auto* s = std::get_if<SurgeryLinkSpace>(&d.v)) p = detail::derive_surgery_link(*s, key);
  else if (auto* r = std::get_if<RationalSurgerySpace>(&d.v)) p = detail::derive_rational_surgery(*r, reg, strict, key);
  else if (auto* k = std::get_if<KnotCoverSpace>(&d.v)) p = detail::knot_cover_profile(k->knot, reg, strict, key);
  else if (auto* c = std::get_if<ConnectedSumSpace>(&d.v)) p = detail::derive_connected_sum(*c, reg, strict, key, anchors::kCsum);
  else {
    const auto& l = std::get<LSpaceSpace>(d.v);
    p = DeltaProfile(key);
    p.set_ordinary(l.delta, prov(anchors::kLSpace, {anchors::kLSpace}, {"delta(" + l.key + ") = " + to_string(l.delta) + " [user]"}));
    p.set_ordinary_mod1(l.delta, prov(anchors::kLSpace, {anchors::kCongruence}, {}));
    p.lspace = true;
    p.lspace_prov = prov(anchors::kLSpace, {anchors::kLSpace}, {l.key + " is an L-space"});
  }
  if (d.orientation == Side::Neg) return p.reversed(space_key(d) + "|" + involution_of(d));
  return p;
}

}  // namespace eqdelta
