#pragma once

#include <optional>
#include <string>
#include <utility>

#include "eqdelta/derive.hpp"

namespace eqdelta {

struct BranchedCoverDescription {
  SpaceDescription space;
  std::string involution;      // covering involution as it acts on the model
  std::optional<Int> det;      // |H_1(Σ₂(K))| = det(K), when known
  std::string spin_structure;  // the distinguished spin structure s₀
};

struct KnotValue {
  Rat value;
  std::string source;
};

// det(K) from the knot model, or the registry entry "det".
inline std::optional<Int> knot_determinant(const KnotModel& k, const InvariantRegistry& reg) {
  if (auto v = reg.find("det", knot_key(k))) return num(*v) < 0 ? Int(-num(*v)) : num(*v);
  if (auto* t = std::get_if<TorusKnot>(&k.v)) {
    if (t->p % 2 != 0 && t->q % 2 != 0) return Int(1);
    return t->p % 2 != 0 ? t->p : t->q;
  }
  if (auto* m = std::get_if<MontesinosKnot>(&k.v)) {
    Int d = determinant(linking_matrix(to_star_plumbing(m->data, true).graph));
    return d < 0 ? Int(-d) : d;
  }
  if (auto* mi = std::get_if<MirrorKnot>(&k.v)) return knot_determinant(*mi->inner, reg);
  if (auto* s = std::get_if<KnotSum>(&k.v)) {
    Int d = 1;
    for (const auto& x : s->parts) {
      auto v = knot_determinant(x, reg);
      if (!v) return std::nullopt;
      d *= *v;
    }
    return d;
  }
  return std::nullopt;
}

// σ(K): registry first, then the model (torus count, 8 mu_bar of the cover,
// mirror and sum rules).
inline std::optional<KnotValue> knot_signature(const KnotModel& k, const InvariantRegistry& reg) {
  const std::string key = knot_key(k);
  if (reg.has("sigma", key)) {
    const auto& e = reg.get("sigma", key);
    return KnotValue{e.value, "sigma(" + key + ") = " + to_string(e.value) + " [" + to_string(e.source) + "]"};
  }
  if (auto* t = std::get_if<TorusKnot>(&k.v)) {
    Rat s(torus_signature(t->p, t->q));
    return KnotValue{s, "sigma(" + key + ") = " + to_string(s) + " [derived: torus signature count]"};
  }
  if (auto* m = std::get_if<MontesinosKnot>(&k.v)) {
    Rat s = 8 * mu_bar(to_star_plumbing(m->data, true).graph);
    return KnotValue{s, "sigma(" + key + ") = " + to_string(s) + " [derived: 8 mu_bar of the branched cover]"};
  }
  if (auto* mi = std::get_if<MirrorKnot>(&k.v)) {
    auto v = knot_signature(*mi->inner, reg);
    if (!v) return std::nullopt;
    return KnotValue{-v->value, "sigma(" + key + ") = " + to_string(-v->value) + " [mirror of " + v->source + "]"};
  }
  if (auto* s = std::get_if<KnotSum>(&k.v)) {
    Rat total = 0;
    std::string src;
    for (const auto& x : s->parts) {
      auto v = knot_signature(x, reg);
      if (!v) return std::nullopt;
      total += v->value;
      src += (src.empty() ? "" : "; ") + v->source;
    }
    return KnotValue{total, "sigma(" + key + ") = " + to_string(total) + " [sum: " + src + "]"};
  }
  return std::nullopt;
}

inline BranchedCoverDescription branched_double_cover(const KnotModel& k, const InvariantRegistry& reg = {}) {
  BranchedCoverDescription out;
  out.spin_structure = "s0 (unique spin structure)";
  if (auto* t = std::get_if<TorusKnot>(&k.v)) {
    out.space = detail::torus_cover_space(*t);
    out.involution = involution_of(out.space);
  } else if (auto* m = std::get_if<MontesinosKnot>(&k.v)) {
    out.space = {MontesinosCoverSpace{m->data}, Side::Pos};
    out.involution = "c_Gamma";
  } else if (std::holds_alternative<QuasiAlternatingKnot>(k.v)) {
    out.space = {KnotCoverSpace{k}, Side::Pos};
    out.involution = "covering";
  } else if (auto* mi = std::get_if<MirrorKnot>(&k.v)) {
    BranchedCoverDescription inner = branched_double_cover(*mi->inner, reg);
    out.space = inner.space.reversed();
    out.involution = inner.involution;
  } else if (auto* s = std::get_if<KnotSum>(&k.v)) {
    ConnectedSumSpace c;
    std::string inv;
    for (const auto& x : s->parts) {
      auto b = branched_double_cover(x, reg);
      c.parts.push_back(b.space);
      inv += (inv.empty() ? "" : "#") + b.involution;
    }
    out.space = {std::move(c), Side::Pos};
    out.involution = inv;
  } else {
    throw make_error("Unsupported", "knot " + knot_key(k) + " has no branched cover model");
  }
  out.det = knot_determinant(k, reg);
  if (out.det && *out.det % 2 == 0) throw make_error("InternalError", "knot determinant " + out.det->str() + " is even");
  return out;
}

// Delta invariants of K, i.e. of (Σ₂(K), s₀, covering involution).
inline DeltaProfile knot_delta_profile(const KnotModel& k, const InvariantRegistry& reg, bool strict = false) {
  return derive_profile({KnotCoverSpace{k}, Side::Pos}, reg, strict);
}

}  // namespace eqdelta
