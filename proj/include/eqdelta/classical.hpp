#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eqdelta/contfrac.hpp"
#include "eqdelta/plumbing.hpp"

namespace eqdelta {

// Wu class candidates: all 0/1 vectors u with A u ≡ diag(A) (mod 2).
inline std::vector<BitVec> wu_classes(const PlumbingGraph& g) {
  SymForm a = linking_matrix(g);
  return solve_mod2(a, diagonal_parities(a));
}

inline BitVec wu_class(const PlumbingGraph& g) {
  auto all = wu_classes(g);
  if (all.empty()) throw make_error("InternalError", "diagonal parities not in the image mod 2");
  return all.front();
}

inline Int wu_square(const PlumbingGraph& g, const BitVec& u) {
  SymForm a = linking_matrix(g);
  IntVec x(u.begin(), u.end());
  return a.pair(x, x);
}

// (σ(A) - w²)/8 for the Wu class w.
inline Rat mu_bar(const PlumbingGraph& g) {
  SymForm a = linking_matrix(g);
  if (determinant(a) == 0) throw make_error("DegenerateForm", "linking matrix is singular");
  BitVec u = wu_class(g);
  return rat(Int(signature_profile(a).sigma()) - wu_square(g, u), Int(8));
}

// μ̄ reduced to [0, 2).
inline Rat rokhlin(const PlumbingGraph& g) {
  if (!g.all_degrees_even()) throw make_error("NotSpinGraph", "Rokhlin class needs every degree even");
  return mod_rat(mu_bar(g), Rat(2));
}

namespace detail {

inline bool induced_is_path_forest(const PlumbingGraph& g, const std::vector<std::size_t>& s) {
  std::vector<int> in(g.size(), 0), deg(g.size(), 0);
  for (auto v : s) in[v] = 1;
  for (auto [a, b] : g.edges())
    if (in[a] && in[b]) {
      if (++deg[a] > 2 || ++deg[b] > 2) return false;
    }
  return true;
}

}  // namespace detail

// Exhaustive j(Γ): every subset, complement computed explicitly.
inline std::size_t j_gamma_bruteforce(const PlumbingGraph& g) {
  const std::size_t n = g.size();
  if (n > 20) throw make_error("RankTooLarge", "brute-force j search limited to 20 vertices");
  SymForm a = linking_matrix(g);
  if (determinant(a) == 0) throw make_error("DegenerateForm", "linking matrix is singular");
  std::size_t best = n + 1;
  for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) s.push_back(i);
    if (!detail::induced_is_path_forest(g, s) || !is_admissible(g, s)) continue;
    best = std::min(best, cobordism_split(g, s).complement_profile.b_minus);
  }
  return best;
}

// j(Γ) by depth-first search over induced path forests, using orthogonal
// additivity b₋(complement) = b₋(Γ) - b₋(Γ') and the bound b₋(Γ') <= |Γ'|.
inline std::size_t j_gamma(const PlumbingGraph& g) {
  const std::size_t n = g.size();
  SymForm a = linking_matrix(g);
  if (determinant(a) == 0) throw make_error("DegenerateForm", "linking matrix is singular");
  const std::size_t total = signature_profile(a).b_minus;
  auto adj = g.adjacency();
  std::size_t best = total;  // Γ' = ∅
  std::vector<std::size_t> chosen;
  std::vector<int> in(n, 0), deg(n, 0);

  auto rec = [&](auto&& self, std::size_t v) -> void {
    if (best == 0) return;
    if (total - std::min(total, chosen.size() + (n - v)) >= best) return;
    if (v == n) {
      if (chosen.empty()) return;
      SymForm inner = linking_matrix(g.induced(chosen));
      if (determinant(inner) == 0) return;
      best = std::min(best, total - signature_profile(inner).b_minus);
      return;
    }
    std::size_t nbrs = 0;
    bool can_add = true;
    for (auto u : adj[v])
      if (in[u]) {
        ++nbrs;
        if (deg[u] >= 2) can_add = false;
      }
    if (can_add && nbrs <= 2) {
      in[v] = 1;
      deg[v] = static_cast<int>(nbrs);
      for (auto u : adj[v])
        if (in[u] && u != v) ++deg[u];
      chosen.push_back(v);
      self(self, v + 1);
      chosen.pop_back();
      for (auto u : adj[v])
        if (in[u] && u != v) --deg[u];
      deg[v] = 0;
      in[v] = 0;
    }
    self(self, v + 1);
  };
  rec(rec, 0);
  return best;
}

struct LensD {
  Rat d;
  Rat delta;
  Int spin_index;
};

namespace detail {

inline Rat lens_recursion(const Int& p, const Int& q, const Int& i) {
  if (p == 1) return 0;
  Int t = 2 * i + 1 - p - q;
  return Rat(-1) / 4 + rat(t * t, 4 * p * q) - lens_recursion(q, mod_floor(p, q), mod_floor(i, q));
}

}  // namespace detail

// Spin indices i with 2i ≡ q - 1 (mod p).
inline std::vector<Int> lens_spin_indices(const Int& p, const Int& q) {
  std::vector<Int> out;
  for (Int i = 0; i < p; ++i)
    if (mod_floor(2 * i - (q - 1), p) == 0) out.push_back(i);
  return out;
}

// Correction term of L(p,q) at a spin structure, in the orientation where
// p/q surgery on the unknot is -L(p,q).
inline LensD lens_d(const Int& p, const Int& q, std::size_t spin_selector = 0) {
  if (p < 1) throw make_error("ParseError", "lens space needs p >= 1");
  if (gcd(p, q) != 1) throw make_error("NotCoprime", "lens space needs gcd(p,q) = 1");
  if (p == 1) {
    if (spin_selector != 0) throw make_error("InvalidSpinSelector", "S^3 has one spin structure");
    return {0, 0, 0};
  }
  Int qq = mod_floor(q, p);
  auto spins = lens_spin_indices(p, qq);
  if (spin_selector >= spins.size()) throw make_error("InvalidSpinSelector", "no spin structure with that selector");
  Int i = spins[spin_selector];
  Rat d = -detail::lens_recursion(p, qq, i);
  return {d, d / 2, i};
}

// q or q + p, whichever makes p/q admit an even expansion (L(p,q) only
// depends on q mod p).
inline Int lens_even_representative(const Int& p, const Int& q) {
  return (p % 2 != 0 && q % 2 != 0) ? q + p : q;
}

// Even chain whose p/q surgery description gives -L(p,q).
inline PlumbingGraph lens_surgery_chain(const Int& p, const Int& q) {
  return PlumbingGraph::chain(expand_even(Slope(p, lens_even_representative(p, q))));
}

// Even linear plumbing bounding L(p,q): the negated surgery chain.
inline PlumbingGraph lens_even_chain(const Int& p, const Int& q) {
  return PlumbingGraph::chain(expand_even(Slope(-p, lens_even_representative(p, q))));
}

enum class RegistrySource { Literature, User, Derived };

inline std::string to_string(RegistrySource s) {
  switch (s) {
    case RegistrySource::Literature: return "literature";
    case RegistrySource::User: return "user";
    default: return "derived";
  }
}

inline RegistrySource parse_source(const std::string& s) {
  if (s == "literature") return RegistrySource::Literature;
  if (s == "user") return RegistrySource::User;
  if (s == "derived") return RegistrySource::Derived;
  throw make_error("ParseError", "unknown registry source '" + s + "'");
}

struct RegistryEntry {
  Rat value;
  RegistrySource source;
};

// Externally supplied scalars keyed by (invariant, object). Write, seal, read.
class InvariantRegistry {
 public:
  void put(const std::string& name, const std::string& key, const Rat& value, RegistrySource src) {
    if (sealed_) throw make_error("RegistrySealed", "registry is sealed");
    entries_[{name, key}] = {value, src};
  }
  void seal() { sealed_ = true; }
  bool sealed() const { return sealed_; }

  bool has(const std::string& name, const std::string& key) const { return entries_.count({name, key}) != 0; }

  const RegistryEntry& get(const std::string& name, const std::string& key) const {
    auto it = entries_.find({name, key});
    if (it == entries_.end()) throw make_error("UnknownInput", name + "(" + key + ") is not in the registry");
    return it->second;
  }

  std::optional<Rat> find(const std::string& name, const std::string& key) const {
    auto it = entries_.find({name, key});
    if (it == entries_.end()) return std::nullopt;
    return it->second.value;
  }

  const std::map<std::pair<std::string, std::string>, RegistryEntry>& entries() const { return entries_; }

 private:
  std::map<std::pair<std::string, std::string>, RegistryEntry> entries_;
  bool sealed_ = false;
};

inline const Rat& registry_get(const InvariantRegistry& r, const std::string& name, const std::string& key) {
  return r.get(name, key).value;
}

}  // namespace eqdelta
