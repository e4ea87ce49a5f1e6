#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "eqdelta/contfrac.hpp"
#include "eqdelta/plumbing.hpp"

namespace eqdelta {

enum class InvolutionVariant { ConjugationC, PlumbingM, SeifertM, SeifertC, Covering, Custom };

struct InvolutionKind {
  InvolutionVariant variant = InvolutionVariant::ConjugationC;
  // Meaningful for Custom only; fixed for the other variants.
  int h2_action = -1;
  bool nonisolated_fixed_points = true;
  bool odd_spin = true;

  static InvolutionKind of(InvolutionVariant v) {
    InvolutionKind k;
    k.variant = v;
    switch (v) {
      case InvolutionVariant::PlumbingM:
      case InvolutionVariant::SeifertM: k.h2_action = 1; break;
      default: k.h2_action = -1; break;
    }
    return k;
  }
  static InvolutionKind custom(int h2, bool nonisolated, bool odd_spin) {
    if (h2 != 1 && h2 != -1) throw make_error("ParseError", "H2 action must be +1 or -1");
    return {InvolutionVariant::Custom, h2, nonisolated, odd_spin};
  }
};

enum class SpincType { E, R, S };

inline char type_letter(SpincType t) { return t == SpincType::E ? 'E' : t == SpincType::R ? 'R' : 'S'; }

inline SpincType parse_type(const std::string& s) {
  if (s == "E") return SpincType::E;
  if (s == "R") return SpincType::R;
  if (s == "S") return SpincType::S;
  throw make_error("ParseError", "type must be E, R or S");
}

using SpincTypeSet = std::set<SpincType>;

// Types of a spin-c structure with characteristic c under the involution.
// `char_fixed`: σ(c) = c; `char_negated`: σ(c) = -c.
inline SpincTypeSet classify_spinc_types(const InvolutionKind& kind, bool spin, bool char_fixed, bool char_negated) {
  if (kind.h2_action == 1) char_fixed = true;
  if (kind.h2_action == -1) char_negated = true;
  SpincTypeSet out;
  if (char_fixed) out.insert(SpincType::E);
  if (char_negated && kind.nonisolated_fixed_points) out.insert(SpincType::R);
  if (spin && kind.odd_spin) out.insert(SpincType::S);
  return out;
}

struct Z2Weight {
  int m;
  int w;
  friend bool operator==(const Z2Weight&, const Z2Weight&) = default;
};

struct Z2WeightAssignment {
  std::vector<Z2Weight> weights;
  std::vector<int> component_case;  // 1: all (1,1); 2: alternating black/white
};

inline bool z2_edge_ok(const Z2Weight& from, const Z2Weight& to, const Int& to_degree) {
  int d = static_cast<int>(mod_floor(to_degree, 2));
  return to.m == from.w && to.w == ((from.m + d * from.w) & 1);
}

// Independent check of an assignment against the edge rules and valence limit.
inline bool validate_z2_weights(const PlumbingGraph& g, const Z2WeightAssignment& a) {
  if (a.weights.size() != g.size()) return false;
  auto adj = g.adjacency();
  for (std::size_t v = 0; v < g.size(); ++v) {
    const auto& x = a.weights[v];
    if (x.m == 0 && x.w == 0) return false;
    // Only (1,1) chains or alternating (0,1)/(1,0); white vertices have at most two edges.
    if (x.m == 1 && x.w == 0 && adj[v].size() > 2) return false;
  }
  for (auto [p, q] : g.edges()) {
    if (!z2_edge_ok(a.weights[p], a.weights[q], g.degree(q))) return false;
    if (!z2_edge_ok(a.weights[q], a.weights[p], g.degree(p))) return false;
  }
  return true;
}

inline Z2WeightAssignment assign_z2_weights(const PlumbingGraph& g) {
  if (!g.all_degrees_even()) throw make_error("OddDegree", "Z2 weights need every degree even");
  auto adj = g.adjacency();
  Z2WeightAssignment out;
  out.weights.assign(g.size(), {1, 1});
  for (const auto& comp : g.components()) {
    bool linear = true;
    for (auto v : comp) linear = linear && adj[v].size() <= 2;
    if (linear) {
      out.component_case.push_back(1);
      continue;
    }
    // 2-colour from the vertex of largest valence, which should be black.
    std::size_t start = comp.front();
    for (auto v : comp)
      if (adj[v].size() > adj[start].size()) start = v;
    bool placed = false;
    for (int start_colour : {0, 1}) {
      std::vector<int> colour(g.size(), -1);
      std::vector<std::size_t> stack{start};
      colour[start] = start_colour;
      while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (auto u : adj[v])
          if (colour[u] < 0) {
            colour[u] = 1 - colour[v];
            stack.push_back(u);
          }
      }
      bool ok = true;
      for (auto v : comp)
        if (colour[v] == 1 && adj[v].size() > 2) ok = false;
      if (!ok) continue;
      for (auto v : comp) out.weights[v] = colour[v] == 0 ? Z2Weight{0, 1} : Z2Weight{1, 0};
      out.component_case.push_back(2);
      placed = true;
      break;
    }
    if (!placed) throw make_error("NotZ2Plumbable", "every 2-colouring puts a white vertex on three or more edges");
  }
  return out;
}

struct S1Chain {
  std::vector<std::pair<Int, Int>> weights;  // (m_i, w_i), i = 1..n
  std::vector<std::size_t> zero_m;           // positions (1-based) with m_i = 0
  std::optional<Rat> ratio;                  // w_n / m_n when m_n != 0
};

// [m_i; w_i] = [[0,-1],[1,-d_i]] [m_{i-1}; w_{i-1}].
inline S1Chain s1_weight_chain(const std::vector<Int>& degrees, std::pair<Int, Int> seed) {
  S1Chain out;
  Int m = seed.first, w = seed.second;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    Int nm = -w;
    Int nw = m - degrees[i] * w;
    m = nm;
    w = nw;
    out.weights.emplace_back(m, w);
    if (m == 0) out.zero_m.push_back(i + 1);
  }
  if (!degrees.empty() && m != 0) {
    out.ratio = rat(w, m);
    if (out.zero_m.empty()) {
      Ncf rev(degrees.rbegin(), degrees.rend());
      NcfValue v = eval_ncf(rev);
      if (seed == std::pair<Int, Int>(0, 1) && (v.infinite || v.value != *out.ratio))
        throw make_error("InternalError", "weight ratio disagrees with the reversed continued fraction");
    }
  }
  return out;
}

enum class ComponentSymmetry { TwoPeriodic, StronglyInvertible };

struct FramedLink {
  IntMat linking;  // diagonal = framings
  std::vector<ComponentSymmetry> symmetry;
  std::vector<std::pair<std::size_t, std::size_t>> swapped_pairs;

  std::vector<Int> framings() const {
    std::vector<Int> f;
    for (std::size_t i = 0; i < linking.size(); ++i) f.push_back(linking[i][i]);
    return f;
  }
  SymForm form() const { return SymForm(linking); }

  void validate() const {
    for (auto [a, b] : swapped_pairs)
      if (linking.at(a).at(a) != linking.at(b).at(b)) throw make_error("ParseError", "swapped components must have equal framings");
    SymForm check(linking);
    (void)check;
  }
};

// Chain link realizing p/q surgery by even framings.
inline FramedLink surgery_chain(const Slope& r) {
  if (r.p() % 2 == 0 || r.q() % 2 != 0)
    throw make_error("ParityViolation", "surgery chain needs p odd and q even, got " + to_string(r));
  Ncf a = expand_even(r);
  FramedLink link;
  link.linking.assign(a.size(), IntVec(a.size(), Int(0)));
  for (std::size_t i = 0; i < a.size(); ++i) {
    link.linking[i][i] = a[i];
    if (i + 1 < a.size()) link.linking[i][i + 1] = link.linking[i + 1][i] = 1;
  }
  link.symmetry.assign(a.size(), ComponentSymmetry::StronglyInvertible);
  return link;
}

using Mat2 = std::array<std::array<int, 2>, 2>;

// Integral involutive automorphisms of the hyperbolic plane [[0,1],[1,0]],
// found by enumeration over entries in [-1, 1] (an automorphism of H is
// monomial with unit entries).
inline std::vector<Mat2> hyperbolic_involutions() {
  std::vector<Mat2> out;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b)
      for (int c = -1; c <= 1; ++c)
        for (int d = -1; d <= 1; ++d) {
          Mat2 t{{{a, b}, {c, d}}};
          // Preserves H: TᵀHT = H.
          int h00 = 2 * a * c, h01 = a * d + b * c, h11 = 2 * b * d;
          if (h00 != 0 || h01 != 1 || h11 != 0) continue;
          int s00 = a * a + b * c, s01 = a * b + b * d, s10 = c * a + d * c, s11 = c * b + d * d;
          if (s00 == 1 && s01 == 0 && s10 == 0 && s11 == 1) out.push_back(t);
        }
  return out;
}

}  // namespace eqdelta
