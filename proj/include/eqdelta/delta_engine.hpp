#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "eqdelta/anchors.hpp"
#include "eqdelta/equivariant.hpp"
#include "eqdelta/rational.hpp"

namespace eqdelta {

enum class Side { Pos, Neg };  // Y or -Y

inline Side opposite(Side s) { return s == Side::Pos ? Side::Neg : Side::Pos; }

inline constexpr long long kInfIndex = std::numeric_limits<long long>::max();

inline bool valid_s_index(long long i, long long j) { return i == 0 || j <= 1; }

struct DeltaIndex {
  SpincType type = SpincType::E;
  long long i = 0;  // S only
  long long j = 0;  // kInfIndex for a tail
  bool ordinary = false;

  static DeltaIndex e(long long j) { return {SpincType::E, 0, j, false}; }
  static DeltaIndex r(long long j) { return {SpincType::R, 0, j, false}; }
  static DeltaIndex t(SpincType ty, long long j) { return {ty, 0, j, false}; }
  static DeltaIndex s(long long i, long long j) { return {SpincType::S, i, j, false}; }
  static DeltaIndex ord() { return {SpincType::E, 0, 0, true}; }

  bool is_tail() const { return !ordinary && (i == kInfIndex || j == kInfIndex); }

  friend auto operator<=>(const DeltaIndex&, const DeltaIndex&) = default;
};

inline std::string index_str(long long v) { return v == kInfIndex ? "inf" : std::to_string(v); }

inline std::string to_string(const DeltaIndex& x, Side side) {
  std::string y = side == Side::Pos ? "Y" : "-Y";
  if (x.ordinary) return "delta(" + y + ")";
  std::string t(1, type_letter(x.type));
  if (x.type == SpincType::S) return "delta^S_{" + index_str(x.i) + "," + index_str(x.j) + "}(" + y + ")";
  return "delta^" + t + "_" + index_str(x.j) + "(" + y + ")";
}

// δ_b <= δ_a whenever b is componentwise at or beyond a.
inline bool index_dominates(const DeltaIndex& b, const DeltaIndex& a) {
  if (a.ordinary || b.ordinary || a.type != b.type) return false;
  return b.i >= a.i && b.j >= a.j && !(a == b);
}

enum class Rel { Le, Ge, Eq };

inline std::string to_string(Rel r) { return r == Rel::Le ? "<=" : r == Rel::Ge ? ">=" : "="; }

struct Provenance {
  std::string rule;
  std::vector<std::string> anchors;
  std::vector<std::string> inputs;
};

struct Fact {
  Side side = Side::Pos;
  DeltaIndex index;
  Rel rel = Rel::Eq;
  Rat value = 0;
  // Compare against the ordinary δ of the same side instead of against 0.
  bool vs_ordinary = false;
  Provenance prov;
};

inline std::string to_string(const Fact& f) {
  std::string rhs = f.vs_ordinary
                        ? std::string(f.side == Side::Pos ? "delta(Y)" : "delta(-Y)") +
                              (f.value == 0 ? "" : (f.value > 0 ? " + " : " - ") + to_string(f.value > 0 ? f.value : Rat(-f.value)))
                        : to_string(f.value);
  return to_string(f.index, f.side) + " " + to_string(f.rel) + " " + rhs;
}

struct Interval {
  ExtRat lo = ExtRat::neg_inf();
  ExtRat hi = ExtRat::pos_inf();
  bool contains_zero() const { return lo <= ExtRat::of(0) && ExtRat::of(0) <= hi; }
  bool pinned() const { return lo == hi && lo.kind == ExtRat::Kind::Finite; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

inline std::string to_string(const Interval& iv) { return "[" + to_string(iv.lo) + ", " + to_string(iv.hi) + "]"; }

// Residue data for R3, stated for Y (the -Y values follow by negation).
struct Congruence {
  std::optional<Rat> ordinary_mod1;  // δ(Y) mod Z, shared by δ^E, δ^R, δ^S
  std::optional<Rat> s_mod2;         // δ^S mod 2Z
  bool quarter = false;              // all values in Z/4
  Provenance prov;
};

struct StabilizationNote {
  Side side;
  SpincType type;
  long long j_lower;
  Provenance prov;
};

// Partial knowledge of the delta invariants of (Y, s, σ) and (-Y, s, σ).
class DeltaProfile {
 public:
  std::string key;
  SpincTypeSet types{SpincType::E, SpincType::R, SpincType::S};
  std::vector<Fact> facts;
  Congruence congruence;
  bool lspace = false;
  Provenance lspace_prov;
  std::array<std::optional<Rat>, 2> l_bound;  // l(Y), l(-Y)
  std::vector<StabilizationNote> stabilization;
  std::vector<std::string> skipped;

  DeltaProfile() = default;
  explicit DeltaProfile(std::string k) : key(std::move(k)) {}

  void add(Fact f) {
    if (!f.index.ordinary && f.index.type == SpincType::S && !valid_s_index(f.index.i, f.index.j))
      throw make_error("InvalidIndex", "S-index (" + index_str(f.index.i) + "," + index_str(f.index.j) + ") is not valid");
    if (f.index.ordinary) f.vs_ordinary = false;
    if (f.prov.rule.empty()) throw make_error("InternalError", "fact without provenance");
    facts.push_back(std::move(f));
  }

  void add_at(Side side, DeltaIndex idx, Rel rel, const Rat& v, const Provenance& p, bool vs_ord = false) {
    add({side, idx, rel, v, vs_ord, p});
  }

  // δ^T_j for every j >= J (T = E or R).
  void add_from(Side side, SpincType t, long long J, Rel rel, const Rat& v, const Provenance& p) {
    if (rel != Rel::Ge) add_at(side, DeltaIndex::t(t, J), Rel::Le, v, p);
    if (rel != Rel::Le) add_at(side, DeltaIndex::t(t, kInfIndex), Rel::Ge, v, p);
  }

  enum class SAxis { ZeroJ, JZero, JOne };  // (0,j), (j,0), (j,1)

  void add_s_axis(Side side, SAxis axis, long long J, Rel rel, const Rat& v, const Provenance& p) {
    auto at = [&](long long j) {
      switch (axis) {
        case SAxis::ZeroJ: return DeltaIndex::s(0, j);
        case SAxis::JZero: return DeltaIndex::s(j, 0);
        default: return DeltaIndex::s(j, 1);
      }
    };
    if (rel != Rel::Ge) add_at(side, at(J), Rel::Le, v, p);
    if (rel != Rel::Le) add_at(side, at(kInfIndex), Rel::Ge, v, p);
  }

  // Every valid S-index.
  void add_all_valid_s(Side side, Rel rel, const Rat& v, const Provenance& p) {
    if (rel != Rel::Ge) add_at(side, DeltaIndex::s(0, 0), Rel::Le, v, p);
    if (rel != Rel::Le) {
      add_at(side, DeltaIndex::s(0, kInfIndex), Rel::Ge, v, p);
      add_at(side, DeltaIndex::s(kInfIndex, 1), Rel::Ge, v, p);
    }
  }

  // S-indices with i = 0 or j = 0.
  void add_s_axes(Side side, Rel rel, const Rat& v, const Provenance& p) {
    if (rel != Rel::Ge) add_at(side, DeltaIndex::s(0, 0), Rel::Le, v, p);
    if (rel != Rel::Le) {
      add_at(side, DeltaIndex::s(0, kInfIndex), Rel::Ge, v, p);
      add_at(side, DeltaIndex::s(kInfIndex, 0), Rel::Ge, v, p);
    }
  }

  void set_ordinary(const Rat& v, const Provenance& p) { add_at(Side::Pos, DeltaIndex::ord(), Rel::Eq, v, p); }

  void set_ordinary_mod1(const Rat& r, const Provenance& p) {
    Rat v = mod_rat(r, Rat(1));
    if (congruence.ordinary_mod1 && *congruence.ordinary_mod1 != v)
      throw make_error("Contradiction", key + ": conflicting residues mod 1 (" + to_string(*congruence.ordinary_mod1) + " vs " + to_string(v) + ")");
    congruence.ordinary_mod1 = v;
    append(p);
  }
  void set_s_mod2(const Rat& r, const Provenance& p) {
    Rat v = mod_rat(r, Rat(2));
    if (congruence.s_mod2 && *congruence.s_mod2 != v)
      throw make_error("Contradiction", key + ": conflicting S residues mod 2 (" + to_string(*congruence.s_mod2) + " vs " + to_string(v) + ")");
    congruence.s_mod2 = v;
    append(p);
  }

  // The same knowledge seen from -Y.
  DeltaProfile reversed(const std::string& new_key) const {
    DeltaProfile out = *this;
    out.key = new_key;
    for (auto& f : out.facts) {
      if (f.index.ordinary) {
        f.value = -f.value;
        if (f.rel != Rel::Eq) f.rel = f.rel == Rel::Le ? Rel::Ge : Rel::Le;
      } else {
        f.side = opposite(f.side);
      }
    }
    if (out.congruence.ordinary_mod1) out.congruence.ordinary_mod1 = mod_rat(-*congruence.ordinary_mod1, Rat(1));
    if (out.congruence.s_mod2) out.congruence.s_mod2 = mod_rat(-*congruence.s_mod2, Rat(2));
    std::swap(out.l_bound[0], out.l_bound[1]);
    for (auto& s : out.stabilization) s.side = opposite(s.side);
    return out;
  }

 private:
  void append(const Provenance& p) {
    auto& c = congruence.prov;
    if (c.rule.empty()) c.rule = p.rule;
    for (const auto& a : p.anchors)
      if (std::find(c.anchors.begin(), c.anchors.end(), a) == c.anchors.end()) c.anchors.push_back(a);
    for (const auto& i : p.inputs) c.inputs.push_back(i);
  }
};

inline Provenance prov(std::string rule, std::vector<std::string> anchors, std::vector<std::string> inputs = {}) {
  return {std::move(rule), std::move(anchors), std::move(inputs)};
}

namespace detail {

inline Rat rat_gcd(const Rat& a, const Rat& b) {
  if (a == 0) return b;
  if (b == 0) return a;
  Int g = gcd(num(a) * den(b), num(b) * den(a));
  return rat(g < 0 ? Int(-g) : g, den(a) * den(b));
}

// Largest element <= w of offset + modulus Z.
inline Rat round_down(const Rat& w, const Rat& offset, const Rat& modulus) {
  return offset + modulus * Rat(floor((w - offset) / modulus));
}

struct Grid {
  Rat offset = 0;
  Rat modulus = 0;  // 0: exact
  bool known = false;
};

// Difference-constraint graph: edge u->v with weight w states x_v - x_u <= w.
// Positive-side nodes carry δ(Y), negative-side nodes carry -δ(-Y).
class ConstraintGraph {
 public:
  struct Edge {
    std::size_t from, to;
    Rat w;
    std::vector<std::size_t> facts;
    std::string rule;
  };

  static constexpr std::size_t kZero = 0;
  static constexpr std::size_t kOrd = 1;

  ConstraintGraph(const DeltaProfile& p, const std::vector<std::size_t>& active, const std::vector<std::pair<Side, DeltaIndex>>& extra)
      : profile_(p) {
    grids_.resize(2);
    grids_[kZero] = {0, 0, true};
    grids_[kOrd] = ordinary_grid();
    names_ = {"0", "delta(Y)"};
    SpincTypeSet types = p.types;
    for (auto k : active)
      if (!p.facts[k].index.ordinary) types.insert(p.facts[k].index.type);
    for (const auto& [s, x] : extra)
      if (!x.ordinary) types.insert(x.type);
    for (Side side : {Side::Pos, Side::Neg})
      for (SpincType t : types) {
        if (t == SpincType::S) {
          for (auto x : {DeltaIndex::s(0, 0), DeltaIndex::s(0, kInfIndex), DeltaIndex::s(kInfIndex, 0), DeltaIndex::s(kInfIndex, 1)})
            node(side, x);
        } else {
          node(side, DeltaIndex::t(t, 0));
          node(side, DeltaIndex::t(t, kInfIndex));
        }
      }
    for (auto k : active)
      if (!p.facts[k].index.ordinary) node(p.facts[k].side, p.facts[k].index);
    for (const auto& [s, x] : extra)
      if (!x.ordinary) node(s, x);
    for (auto k : active) add_fact(k);
    add_rules();
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& name(std::size_t n) const { return names_[n]; }

  std::optional<std::size_t> find(Side s, const DeltaIndex& x) const {
    if (x.ordinary) return kOrd;
    auto it = ids_.find({s, x});
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }
  // δ = sign * x for the node.
  static int sign(Side s) { return s == Side::Pos ? 1 : -1; }

  void add_edge(std::size_t from, std::size_t to, Rat w, std::vector<std::size_t> facts, std::string rule) {
    edges_.push_back({from, to, std::move(w), std::move(facts), std::move(rule)});
  }

  // Rounds every edge weight down to the lattice its endpoint difference lives on.
  void round_edges() {
    for (auto& e : edges_) {
      const Grid& a = grids_[e.from];
      const Grid& b = grids_[e.to];
      if (!a.known || !b.known) continue;
      Rat g = rat_gcd(a.modulus, b.modulus);
      if (g == 0) continue;
      Rat r = round_down(e.w, b.offset - a.offset, g);
      if (r < e.w) {
        e.w = r;
        if (e.rule.find("R3") == std::string::npos) e.rule += std::string(" + R3 congruence [") + anchors::kCongruence + "]";
      }
    }
  }

  const Grid& grid(std::size_t n) const { return grids_[n]; }
  const std::vector<std::pair<Side, DeltaIndex>>& keys() const { return keys_; }

 private:
  Grid ordinary_grid() const {
    const auto& c = profile_.congruence;
    if (c.ordinary_mod1) return {*c.ordinary_mod1, 1, true};
    if (c.quarter) return {0, rat(1, 4), true};
    return {};
  }

  Grid delta_grid(Side side, const DeltaIndex& x) const {
    const auto& c = profile_.congruence;
    if (x.type == SpincType::S && c.s_mod2) return {*c.s_mod2, 2, true};
    (void)side;
    return ordinary_grid();
  }

  std::size_t node(Side s, const DeltaIndex& x) {
    auto it = ids_.find({s, x});
    if (it != ids_.end()) return it->second;
    std::size_t id = names_.size();
    ids_[{s, x}] = id;
    names_.push_back(to_string(x, s));
    grids_.push_back(delta_grid(s, x));
    keys_.emplace_back(s, x);
    return id;
  }

  // sign * (x_a - x_b) <= v.
  void le(std::size_t a, std::size_t b, int sgn, const Rat& v, std::vector<std::size_t> facts, const std::string& rule) {
    if (sgn > 0) add_edge(b, a, v, std::move(facts), rule);
    else add_edge(a, b, v, std::move(facts), rule);
  }

  void add_fact(std::size_t k) {
    const Fact& f = profile_.facts[k];
    std::size_t a = f.index.ordinary ? kOrd : ids_.at({f.side, f.index});
    int sgn = f.index.ordinary ? (f.side == Side::Pos ? 1 : -1) : sign(f.side);
    std::size_t b = f.vs_ordinary ? kOrd : kZero;
    const std::string rule = f.prov.rule;
    if (f.rel != Rel::Ge) le(a, b, sgn, f.value, {k}, rule);
    if (f.rel != Rel::Le) le(b, a, sgn, -f.value, {k}, rule);
  }

  void add_rules() {
    // R1 monotone.
    for (std::size_t u = 2; u < names_.size(); ++u)
      for (std::size_t v = 2; v < names_.size(); ++v) {
        const auto& [su, xu] = keys_[u - 2];
        const auto& [sv, xv] = keys_[v - 2];
        if (su != sv || !index_dominates(xv, xu)) continue;
        // δ_v <= δ_u.
        le(v, u, sign(su), 0, {}, std::string("R1 monotone [") + anchors::kMonotone + "]");
      }
    // R2 duality, strongest pairs.
    auto dual = [&](const DeltaIndex& a, const DeltaIndex& b) {
      auto u = find(Side::Pos, a), v = find(Side::Neg, b);
      if (u && v) add_edge(*u, *v, 0, {}, std::string("R2 duality [") + anchors::kDuality + "]");
    };
    for (SpincType t : {SpincType::E, SpincType::R}) dual(DeltaIndex::t(t, kInfIndex), DeltaIndex::t(t, kInfIndex));
    dual(DeltaIndex::s(0, kInfIndex), DeltaIndex::s(0, kInfIndex));
    dual(DeltaIndex::s(kInfIndex, 0), DeltaIndex::s(kInfIndex, 1));
    dual(DeltaIndex::s(kInfIndex, 1), DeltaIndex::s(kInfIndex, 0));
    // R4 index 0 against the ordinary invariant.
    const std::string r4 = std::string("R4 ordinary bound [") + anchors::kOrdinaryBound + "]";
    for (Side s : {Side::Pos, Side::Neg})
      for (auto x : {DeltaIndex::e(0), DeltaIndex::r(0), DeltaIndex::s(0, 0)})
        if (auto n = find(s, x)) le(kOrd, *n, sign(s), 0, {}, r4);
    // R5 L-space.
    if (profile_.lspace) {
      const std::string r5 = std::string("R5 L-space [") + anchors::kLSpace + "]";
      for (std::size_t n = 2; n < names_.size(); ++n) {
        le(n, kOrd, 1, 0, {}, r5);
        le(kOrd, n, 1, 0, {}, r5);
      }
    }
    // R8 lower bound from l.
    const std::string r8 = std::string("R8 l-bound [") + anchors::kLBound + "]";
    for (std::size_t n = 2; n < names_.size(); ++n) {
      const auto& [s, x] = keys_[n - 2];
      const auto& l = profile_.l_bound[s == Side::Pos ? 0 : 1];
      if (!l || x.is_tail()) continue;
      Rat bound = (*l - Rat(x.i) - Rat(x.j)) / 2;
      // δ >= bound.
      le(kZero, n, sign(s), -bound, {}, r8);
    }
  }

  const DeltaProfile& profile_;
  std::map<std::pair<Side, DeltaIndex>, std::size_t> ids_;
  std::vector<std::pair<Side, DeltaIndex>> keys_;  // node n -> keys_[n - 2]
  std::vector<std::string> names_;
  std::vector<Grid> grids_;
  std::vector<Edge> edges_;
};

struct PathResult {
  std::vector<std::optional<Rat>> dist;
  std::vector<std::optional<std::size_t>> pred_edge;
  std::optional<std::vector<std::size_t>> negative_cycle;  // edge ids
};

// Single-source shortest paths; `reverse` walks edges backwards.
inline PathResult bellman_ford(const ConstraintGraph& g, std::optional<std::size_t> source, bool reverse = false) {
  const std::size_t n = g.size();
  const auto& es = g.edges();
  PathResult r;
  r.dist.assign(n, std::nullopt);
  r.pred_edge.assign(n, std::nullopt);
  if (source) r.dist[*source] = Rat(0);
  else
    for (auto& d : r.dist) d = Rat(0);
  std::optional<std::size_t> last;
  for (std::size_t it = 0; it < n + 1; ++it) {
    last.reset();
    for (std::size_t k = 0; k < es.size(); ++k) {
      std::size_t u = reverse ? es[k].to : es[k].from;
      std::size_t v = reverse ? es[k].from : es[k].to;
      if (!r.dist[u]) continue;
      Rat cand = *r.dist[u] + es[k].w;
      if (!r.dist[v] || cand < *r.dist[v]) {
        r.dist[v] = cand;
        r.pred_edge[v] = k;
        last = v;
      }
    }
    if (!last) break;
  }
  if (last) {
    std::size_t v = *last;
    for (std::size_t i = 0; i < n; ++i) {
      auto k = *r.pred_edge[v];
      v = reverse ? es[k].to : es[k].from;
    }
    std::vector<std::size_t> cycle;
    std::size_t start = v;
    do {
      auto k = *r.pred_edge[v];
      cycle.push_back(k);
      v = reverse ? es[k].to : es[k].from;
    } while (v != start);
    r.negative_cycle = std::move(cycle);
  }
  return r;
}

inline std::vector<std::size_t> path_edges(const ConstraintGraph& g, const PathResult& r, std::size_t target, bool reverse) {
  std::vector<std::size_t> out;
  std::size_t v = target;
  std::set<std::size_t> seen;
  while (r.pred_edge[v] && seen.insert(v).second) {
    auto k = *r.pred_edge[v];
    out.push_back(k);
    v = reverse ? g.edges()[k].to : g.edges()[k].from;
  }
  return out;
}

inline std::vector<std::size_t> union_facts(const ConstraintGraph& g, const std::vector<std::size_t>& edges) {
  std::set<std::size_t> s;
  for (auto k : edges)
    for (auto f : g.edges()[k].facts) s.insert(f);
  return {s.begin(), s.end()};
}

}  // namespace detail

struct Bound {
  Interval value;
  std::vector<std::size_t> lo_support;  // fact ids
  std::vector<std::size_t> hi_support;
};

struct Contradiction {
  std::vector<std::size_t> facts;  // minimal (greedy) infeasible subset
  std::vector<std::string> rules;  // rules on the final negative cycle
};

// Fixpoint of the propagation rules over a profile, with optional extra query nodes.
class Solved {
 public:
  Solved(const DeltaProfile& p, std::vector<std::pair<Side, DeltaIndex>> extra = {}) : profile_(&p), extra_(std::move(extra)) {
    std::vector<std::size_t> all(p.facts.size());
    for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
    run(all);
    if (!consistent_) minimize();
  }

  bool consistent() const { return consistent_; }
  const std::optional<Contradiction>& contradiction() const { return contradiction_; }
  const detail::ConstraintGraph& graph() const { return *graph_; }

  Bound bound(Side s, const DeltaIndex& x) const {
    Bound b;
    auto n = graph_->find(s, x);
    if (!n || !consistent_) return b;
    const auto& from = from_zero_;
    const auto& to = to_zero_;
    // x_n - x_0 <= from.dist[n]; x_0 - x_n <= to.dist[n].
    std::optional<Rat> xhi = from.dist[*n], xlo;
    if (to.dist[*n]) xlo = -*to.dist[*n];
    int sgn = x.ordinary ? (s == Side::Pos ? 1 : -1) : detail::ConstraintGraph::sign(s);
    auto hi_support = detail::union_facts(*graph_, detail::path_edges(*graph_, from, *n, false));
    auto lo_support = detail::union_facts(*graph_, detail::path_edges(*graph_, to, *n, true));
    if (sgn > 0) {
      if (xhi) b.value.hi = ExtRat::of(*xhi), b.hi_support = hi_support;
      if (xlo) b.value.lo = ExtRat::of(*xlo), b.lo_support = lo_support;
    } else {
      if (xlo) b.value.hi = ExtRat::of(-*xlo), b.hi_support = lo_support;
      if (xhi) b.value.lo = ExtRat::of(-*xhi), b.lo_support = hi_support;
    }
    return b;
  }

  // Upper bound of x_b - x_a over nodes, if finite.
  std::optional<Rat> difference_bound(std::size_t a, std::size_t b) const {
    auto r = detail::bellman_ford(*graph_, a);
    return r.dist[b];
  }

 private:
  // Builds, rounds, and tightens node bounds to their grids until stable.
  void run(const std::vector<std::size_t>& active) {
    graph_ = std::make_unique<detail::ConstraintGraph>(*profile_, active, extra_);
    graph_->round_edges();
    for (int iter = 0; iter < 32; ++iter) {
      auto cyc = detail::bellman_ford(*graph_, std::nullopt);
      if (cyc.negative_cycle) {
        consistent_ = false;
        cycle_ = *cyc.negative_cycle;
        return;
      }
      from_zero_ = detail::bellman_ford(*graph_, detail::ConstraintGraph::kZero, false);
      to_zero_ = detail::bellman_ford(*graph_, detail::ConstraintGraph::kZero, true);
      bool changed = false;
      for (std::size_t n = 1; n < graph_->size(); ++n) {
        const auto& gr = graph_->grid(n);
        if (!gr.known || gr.modulus == 0) continue;
        if (from_zero_.dist[n]) {
          Rat r = detail::round_down(*from_zero_.dist[n], gr.offset, gr.modulus);
          if (r < *from_zero_.dist[n]) {
            auto sup = detail::union_facts(*graph_, detail::path_edges(*graph_, from_zero_, n, false));
            graph_->add_edge(detail::ConstraintGraph::kZero, n, r, sup, std::string("R3 congruence [") + anchors::kCongruence + "]");
            changed = true;
          }
        }
        if (to_zero_.dist[n]) {
          // x_0 - x_n <= d, so -x_n <= d; -x_n lives on -offset + mZ.
          Rat r = detail::round_down(*to_zero_.dist[n], -gr.offset, gr.modulus);
          if (r < *to_zero_.dist[n]) {
            auto sup = detail::union_facts(*graph_, detail::path_edges(*graph_, to_zero_, n, true));
            graph_->add_edge(n, detail::ConstraintGraph::kZero, r, sup, std::string("R3 congruence [") + anchors::kCongruence + "]");
            changed = true;
          }
        }
      }
      if (!changed) {
        consistent_ = true;
        return;
      }
    }
    consistent_ = true;
  }

  void minimize() {
    std::vector<std::size_t> current = detail::union_facts(*graph_, cycle_);
    auto infeasible = [&](const std::vector<std::size_t>& s) {
      run(s);
      return !consistent_;
    };
    if (!infeasible(current)) {
      current.clear();
      for (std::size_t k = 0; k < profile_->facts.size(); ++k) current.push_back(k);
    }
    for (std::size_t pos = 0; pos < current.size();) {
      auto trial = current;
      trial.erase(trial.begin() + static_cast<long>(pos));
      if (infeasible(trial)) current = std::move(trial);
      else ++pos;
    }
    run(current);
    Contradiction c;
    c.facts = current;
    std::set<std::string> rules;
    for (auto k : cycle_) rules.insert(graph_->edges()[k].rule);
    c.rules.assign(rules.begin(), rules.end());
    contradiction_ = std::move(c);
    consistent_ = false;
  }

  const DeltaProfile* profile_;
  std::vector<std::pair<Side, DeltaIndex>> extra_;
  std::unique_ptr<detail::ConstraintGraph> graph_;
  detail::PathResult from_zero_, to_zero_;
  std::vector<std::size_t> cycle_;
  bool consistent_ = true;
  std::optional<Contradiction> contradiction_;
};

struct AssertResult {
  bool consistent;
  std::optional<Contradiction> contradiction;
};

inline AssertResult check(const DeltaProfile& p) {
  Solved s(p);
  return {s.consistent(), s.contradiction()};
}

inline AssertResult assert_fact(DeltaProfile& p, Fact f) {
  p.add(std::move(f));
  return check(p);
}

inline Bound query(const DeltaProfile& p, Side s, const DeltaIndex& x) {
  Solved sol(p, {{s, x}});
  if (!sol.consistent()) throw make_error("Contradiction", "profile " + p.key + " is contradictory");
  return sol.bound(s, x);
}

struct TailQuery {
  Interval tail;
  long long j_lo = 0;
  long long j_hi = kInfIndex;
};

// Tail value and stabilization index. For S the axis (0, j) is used.
inline TailQuery query_tail(const DeltaProfile& p, Side side, SpincType t) {
  auto at = [&](long long j) { return t == SpincType::S ? DeltaIndex::s(0, j) : DeltaIndex::t(t, j); };
  Solved sol(p, {{side, at(0)}, {side, at(kInfIndex)}});
  if (!sol.consistent()) throw make_error("Contradiction", "profile " + p.key + " is contradictory");
  TailQuery q;
  q.tail = sol.bound(side, at(kInfIndex)).value;
  const auto& g = sol.graph();
  std::size_t inf = *g.find(side, at(kInfIndex));
  auto from_inf = detail::bellman_ford(g, inf, false);
  auto to_inf = detail::bellman_ford(g, inf, true);
  std::vector<long long> idx;
  for (const auto& [s, x] : g.keys())
    if (s == side && !x.ordinary && x.type == t && !x.is_tail() && (t != SpincType::S || x.i == 0)) idx.push_back(x.j);
  std::sort(idx.begin(), idx.end());
  for (long long j : idx) {
    std::size_t n = *g.find(side, at(j));
    // δ_j - δ_∞ as an x-difference: Pos x_j - x_∞, Neg x_∞ - x_j.
    std::optional<Rat> up = side == Side::Pos ? from_inf.dist[n] : to_inf.dist[n];
    std::optional<Rat> neg_low = side == Side::Pos ? to_inf.dist[n] : from_inf.dist[n];
    if (up && *up <= 0) q.j_hi = std::min(q.j_hi, j);
    if (neg_low && *neg_low < 0) q.j_lo = std::max(q.j_lo, j + 1);
  }
  for (const auto& s : p.stabilization)
    if (s.side == side && s.type == t) q.j_lo = std::max(q.j_lo, s.j_lower);
  const auto& l = p.l_bound[side == Side::Pos ? 0 : 1];
  if (l && t != SpincType::S && q.tail.hi.kind == ExtRat::Kind::Finite) {
    Int b = ceil(*l - 2 * q.tail.hi.value);
    if (b > q.j_lo) q.j_lo = static_cast<long long>(b);
  }
  return q;
}

struct CobordismData {
  std::string label = "W";
  Int b_plus = 0;       // b₊(W)
  Int b_plus_inv = 0;   // b₊(W)^σ
  Int b_plus_anti = 0;  // b₊(W)^{-σ}
  Int sigma = 0;        // σ(W)
  Rat c_squared = 0;
  bool invariant_negative_definite = false;       // type E
  bool anti_invariant_negative_definite = false;  // type R
  bool odd_involution = true;                     // type S
};

struct BoundaryRef {
  DeltaProfile* profile;
  Side side;
};

namespace detail {

inline long long to_ll(const Int& v) { return static_cast<long long>(v); }

inline long long add_index(long long a, long long b) { return (a == kInfIndex || b == kInfIndex) ? kInfIndex : a + b; }

inline std::string support_text(const DeltaProfile& p, const std::vector<std::size_t>& facts) {
  std::string out;
  for (auto k : facts) {
    const auto& f = p.facts[k];
    if (!out.empty()) out += "; ";
    out += to_string(f) + " [" + f.prov.rule;
    for (const auto& in : f.prov.inputs) out += "; " + in;
    out += "]";
  }
  return out;
}

}  // namespace detail

// Frøyshov-type inequality over W with incoming Y₀ and outgoing Y₁ (either may
// be empty). Returns the facts emitted.
inline std::vector<Fact> apply_froyshov(std::optional<BoundaryRef> in, std::optional<BoundaryRef> out, const CobordismData& w, SpincType t,
                                        const Provenance& context = {}) {
  const char* anchor = t == SpincType::E ? anchors::kFroyE : t == SpincType::R ? anchors::kFroyR : anchors::kFroyS;
  if (t == SpincType::E && !w.invariant_negative_definite)
    throw make_error("DefinitenessViolation", "type E needs the invariant part of H2(" + w.label + ") negative definite");
  if (t == SpincType::R && !w.anti_invariant_negative_definite)
    throw make_error("DefinitenessViolation", "type R needs the anti-invariant part of H2(" + w.label + ") negative definite");
  if (t == SpincType::S && !w.odd_involution) throw make_error("DefinitenessViolation", "type S needs an odd involution");
  for (auto* b : {&in, &out})
    if (*b && !(*b)->profile->types.count(t))
      throw make_error("RoleMismatch", "boundary " + (*b)->profile->key + " has no spin-c structure of type " + type_letter(t));
  const Rat d = (w.c_squared - Rat(w.sigma)) / 8;
  Provenance base = context;
  if (base.rule.empty()) base.rule = anchor;
  if (std::find(base.anchors.begin(), base.anchors.end(), anchor) == base.anchors.end()) base.anchors.push_back(anchor);
  base.inputs.push_back(w.label + ": b+ = " + w.b_plus.str() + ", sigma = " + w.sigma.str() + ", c^2 = " + to_string(w.c_squared));
  std::vector<Fact> emitted;
  auto emit = [&](BoundaryRef ref, DeltaIndex x, Rel rel, const Rat& v, Provenance p) {
    Fact f{ref.side, x, rel, v, false, std::move(p)};
    ref.profile->add(f);
    emitted.push_back(f);
  };
  const long long bp = detail::to_ll(w.b_plus), bs = detail::to_ll(w.b_plus_inv), ba = detail::to_ll(w.b_plus_anti);

  if (in && !out) {
    if (t != SpincType::S) {
      emit(*in, DeltaIndex::t(t, bp), Rel::Le, -d, base);
    } else if (valid_s_index(bs, ba)) {
      emit(*in, DeltaIndex::s(bs, ba), Rel::Le, -d, base);
    }
    return emitted;
  }
  if (out && !in) {
    if (t != SpincType::S) {
      emit(*out, DeltaIndex::t(t, kInfIndex), Rel::Ge, d, base);
    } else {
      if (bs == 0) emit(*out, DeltaIndex::s(0, kInfIndex), Rel::Ge, d, base);
      if (ba == 0) emit(*out, DeltaIndex::s(kInfIndex, 1), Rel::Ge, d, base);
      else if (ba == 1) emit(*out, DeltaIndex::s(kInfIndex, 0), Rel::Ge, d, base);
    }
    return emitted;
  }
  if (!in || !out) return emitted;

  // Both boundaries present: transfer the currently derivable bounds.
  std::vector<std::pair<DeltaIndex, DeltaIndex>> pairs;  // (target on Y₁, source on Y₀)
  if (t != SpincType::S) {
    std::set<long long> js{0, kInfIndex};
    for (const auto& f : out->profile->facts)
      if (f.side == out->side && !f.index.ordinary && f.index.type == t) js.insert(f.index.j);
    for (const auto& f : in->profile->facts)
      if (f.side == in->side && !f.index.ordinary && f.index.type == t && f.index.j != kInfIndex && f.index.j >= bp) js.insert(f.index.j - bp);
    for (long long j : js) pairs.push_back({DeltaIndex::t(t, j), DeltaIndex::t(t, detail::add_index(j, bp))});
  } else {
    for (auto x : {DeltaIndex::s(0, 0), DeltaIndex::s(0, kInfIndex), DeltaIndex::s(kInfIndex, 0), DeltaIndex::s(kInfIndex, 1)}) {
      bool ok = (detail::add_index(x.i, bs) == 0) || (x.j != kInfIndex && x.j + ba <= 1);
      if (!ok) continue;
      DeltaIndex src = DeltaIndex::s(detail::add_index(x.i, bs), detail::add_index(x.j, ba));
      if (valid_s_index(src.i, src.j)) pairs.push_back({x, src});
    }
  }
  std::vector<std::tuple<BoundaryRef, DeltaIndex, Rel, Rat, Provenance>> pending;
  for (const auto& [target, source] : pairs) {
    Bound src = query(*in->profile, in->side, source);
    if (src.value.lo.kind == ExtRat::Kind::Finite) {
      Provenance p = base;
      p.inputs.push_back(to_string(source, in->side) + " >= " + to_string(src.value.lo.value) + " via " +
                         detail::support_text(*in->profile, src.lo_support));
      pending.emplace_back(*out, target, Rel::Ge, src.value.lo.value + d, p);
    }
    Bound dst = query(*out->profile, out->side, target);
    if (dst.value.hi.kind == ExtRat::Kind::Finite) {
      Provenance p = base;
      p.inputs.push_back(to_string(target, out->side) + " <= " + to_string(dst.value.hi.value) + " via " +
                         detail::support_text(*out->profile, dst.hi_support));
      pending.emplace_back(*in, source, Rel::Le, dst.value.hi.value - d, p);
    }
  }
  for (auto& [ref, x, rel, v, p] : pending) emit(ref, x, rel, v, p);
  return emitted;
}

// Summand of an equivariant connected sum.
struct Summand {
  const DeltaProfile* profile;
};

// Subadditivity over a connected sum, from the summands' current bounds.
// Also fixes δ(Y) and the residues when every summand provides them.
inline void apply_connected_sum(DeltaProfile& sum, const std::vector<Summand>& parts, const char* anchor = anchors::kCsum) {
  if (parts.empty()) return;
  SpincTypeSet types = parts.front().profile->types;
  for (const auto& s : parts) {
    SpincTypeSet keep;
    for (auto t : types)
      if (s.profile->types.count(t)) keep.insert(t);
    types = keep;
  }
  sum.types = types;

  for (Side side : {Side::Pos, Side::Neg}) {
    for (SpincType t : types) {
      // Candidate indices per summand.
      std::vector<std::vector<DeltaIndex>> cand;
      for (const auto& s : parts) {
        std::set<DeltaIndex> xs;
        if (t == SpincType::S) {
          for (auto x : {DeltaIndex::s(0, 0), DeltaIndex::s(0, kInfIndex), DeltaIndex::s(kInfIndex, 0), DeltaIndex::s(kInfIndex, 1)}) xs.insert(x);
        } else {
          xs.insert(DeltaIndex::t(t, 0));
          xs.insert(DeltaIndex::t(t, kInfIndex));
        }
        for (const auto& f : s.profile->facts)
          if (f.side == side && !f.index.ordinary && f.index.type == t) xs.insert(f.index);
        cand.emplace_back(xs.begin(), xs.end());
      }
      std::vector<std::vector<Bound>> bounds(parts.size());
      for (std::size_t k = 0; k < parts.size(); ++k)
        for (const auto& x : cand[k]) bounds[k].push_back(query(*parts[k].profile, side, x));
      std::vector<std::size_t> pick(parts.size(), 0);
      std::size_t guard = 0;
      while (guard++ < 4096) {
        DeltaIndex target = t == SpincType::S ? DeltaIndex::s(0, 0) : DeltaIndex::t(t, 0);
        bool all_i_zero = true;
        long long jsum = 0;
        for (std::size_t k = 0; k < parts.size(); ++k) {
          const auto& x = cand[k][pick[k]];
          target.i = detail::add_index(target.i, x.i);
          target.j = detail::add_index(target.j, x.j);
          all_i_zero = all_i_zero && x.i == 0;
          jsum = detail::add_index(jsum, x.j);
        }
        bool ok = t != SpincType::S || all_i_zero || jsum <= 1;
        if (ok && (t != SpincType::S || valid_s_index(target.i, target.j))) {
          Rat total = 0;
          bool finite = true;
          Provenance p{std::string(anchor) + " subadditivity", {anchor}, {}};
          for (std::size_t k = 0; k < parts.size() && finite; ++k) {
            const auto& x = cand[k][pick[k]];
            const Bound& b = bounds[k][pick[k]];
            if (b.value.hi.kind != ExtRat::Kind::Finite) {
              finite = false;
              break;
            }
            total += b.value.hi.value;
            p.inputs.push_back(parts[k].profile->key + ": " + to_string(x, side) + " <= " + to_string(b.value.hi.value) + " via " +
                               detail::support_text(*parts[k].profile, b.hi_support));
          }
          if (finite) sum.add_at(side, target, Rel::Le, total, p);
        }
        std::size_t k = 0;
        while (k < parts.size() && ++pick[k] == cand[k].size()) pick[k++] = 0;
        if (k == parts.size()) break;
      }
    }
  }

  // Ordinary δ is additive.
  Rat ord = 0;
  bool all_known = true;
  Provenance op{"ordinary delta additivity", {anchors::kDisjoint}, {}};
  for (const auto& s : parts) {
    Bound b = query(*s.profile, Side::Pos, DeltaIndex::ord());
    if (!b.value.pinned()) {
      all_known = false;
      break;
    }
    ord += b.value.lo.value;
    op.inputs.push_back("delta(" + s.profile->key + ") = " + to_string(b.value.lo.value));
  }
  if (all_known) sum.set_ordinary(ord, op);

  Rat m1 = 0, m2 = 0;
  bool have1 = true, have2 = true;
  for (const auto& s : parts) {
    if (s.profile->congruence.ordinary_mod1) m1 += *s.profile->congruence.ordinary_mod1;
    else have1 = false;
    if (s.profile->congruence.s_mod2) m2 += *s.profile->congruence.s_mod2;
    else have2 = false;
  }
  Provenance cp{"residue additivity", {anchors::kCongruence, anchor}, {}};
  if (have1) sum.set_ordinary_mod1(m1, cp);
  if (have2) sum.set_s_mod2(m2, cp);
  bool quarter = true;
  for (const auto& s : parts) quarter = quarter && s.profile->congruence.quarter;
  sum.congruence.quarter = quarter;
}

}  // namespace eqdelta
