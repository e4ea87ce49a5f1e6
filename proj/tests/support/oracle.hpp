#pragma once

// Independent feasibility oracle for delta fact sets over the rationals.
// Variables are the delta values themselves (not the engine's signed graph
// nodes); constraints have at most two variables with coefficients +-1, and
// Fourier-Motzkin elimination keeps that shape, so the tightest bound per
// coefficient pattern is all that needs storing.

#include <map>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "eqdelta/eqdelta.hpp"

namespace eqdelta::oracle {

// sum_k c_k * v_k <= rhs with |c_k| = 1 and at most two terms.
struct Ineq {
  std::vector<std::pair<int, int>> terms;  // (coefficient, variable)
  Rat rhs;
};

class FeasibilityOracle {
 public:
  int var(Side s, const DeltaIndex& x) {
    auto key = std::make_pair(x.ordinary ? Side::Pos : s, x);
    auto it = ids_.find(key);
    if (it != ids_.end()) return it->second;
    int id = static_cast<int>(ids_.size());
    ids_[key] = id;
    return id;
  }

  // delta(-Y) is -delta(Y); returns (coefficient, variable) for the value at (s, x).
  std::pair<int, int> term(Side s, const DeltaIndex& x) {
    if (x.ordinary) return {s == Side::Pos ? 1 : -1, var(Side::Pos, x)};
    return {1, var(s, x)};
  }

  void le(std::vector<std::pair<int, int>> t, const Rat& rhs) { rows_.push_back({std::move(t), rhs}); }

  void add_fact(const Fact& f) {
    auto a = term(f.side, f.index);
    std::vector<std::pair<int, int>> t{a};
    if (f.vs_ordinary) {
      auto o = term(f.side, DeltaIndex::ord());
      t.push_back({-o.first, o.second});
    }
    if (f.rel != Rel::Ge) le(t, f.value);
    if (f.rel != Rel::Le) {
      for (auto& [c, v] : t) c = -c;
      le(t, -f.value);
    }
  }

  // The structural axioms for the listed types, over every index in `idx`.
  void add_axioms(const std::set<SpincType>& types, std::set<std::pair<Side, DeltaIndex>> idx) {
    for (Side s : {Side::Pos, Side::Neg})
      for (auto t : types) {
        if (t == SpincType::S) {
          for (auto x : {DeltaIndex::s(0, 0), DeltaIndex::s(0, kInfIndex), DeltaIndex::s(kInfIndex, 0), DeltaIndex::s(kInfIndex, 1)})
            idx.insert({s, x});
        } else {
          idx.insert({s, DeltaIndex::t(t, 0)});
          idx.insert({s, DeltaIndex::t(t, kInfIndex)});
        }
      }
    for (const auto& [sa, a] : idx)
      for (const auto& [sb, b] : idx) {
        if (sa != sb || a.type != b.type || a == b) continue;
        if (b.i >= a.i && b.j >= a.j) le({term(sb, b), {-1, var(sa, a)}}, 0);  // δ_b <= δ_a
      }
    auto dual = [&](const DeltaIndex& a, const DeltaIndex& b) {
      if (idx.count({Side::Pos, a}) && idx.count({Side::Neg, b})) le({{-1, var(Side::Pos, a)}, {-1, var(Side::Neg, b)}}, 0);
    };
    for (auto t : {SpincType::E, SpincType::R}) dual(DeltaIndex::t(t, kInfIndex), DeltaIndex::t(t, kInfIndex));
    dual(DeltaIndex::s(0, kInfIndex), DeltaIndex::s(0, kInfIndex));
    dual(DeltaIndex::s(kInfIndex, 0), DeltaIndex::s(kInfIndex, 1));
    dual(DeltaIndex::s(kInfIndex, 1), DeltaIndex::s(kInfIndex, 0));
    for (Side s : {Side::Pos, Side::Neg})
      for (auto x : {DeltaIndex::e(0), DeltaIndex::r(0), DeltaIndex::s(0, 0)})
        if (idx.count({s, x})) {
          auto o = term(s, DeltaIndex::ord());
          le({{-1, var(s, x)}, o}, 0);  // δ(±Y) <= δ_0(±Y)
        }
  }

  bool feasible() const {
    // Key: sorted (coef, var) pairs; value: tightest rhs.
    using Key = std::vector<std::pair<int, int>>;
    std::map<Key, Rat> cur;
    auto put = [&](Key k, const Rat& r) -> bool {
      // merge repeated variables
      std::map<int, int> m;
      for (auto [c, v] : k) m[v] += c;
      Key n;
      int scale = 1;
      for (auto [v, c] : m)
        if (c != 0) n.push_back({c, v});
      for (auto& [c, v] : n) scale = std::max(scale, std::abs(c));
      for (auto& [c, v] : n) c /= scale;
      Rat rr = r / scale;
      if (n.empty()) return rr >= 0;
      auto it = cur.find(n);
      if (it == cur.end() || rr < it->second) cur[n] = rr;
      return true;
    };
    for (const auto& r : rows_)
      if (!put(r.terms, r.rhs)) return false;
    for (int v = 0; v < static_cast<int>(ids_.size()); ++v) {
      std::vector<std::pair<Key, Rat>> pos, neg;
      std::map<Key, Rat> rest;
      for (auto& [k, r] : cur) {
        int c = 0;
        for (auto [cc, vv] : k)
          if (vv == v) c = cc;
        if (c > 0) pos.push_back({k, r});
        else if (c < 0) neg.push_back({k, r});
        else rest[k] = r;
      }
      cur = std::move(rest);
      for (const auto& [kp, rp] : pos)
        for (const auto& [kn, rn] : neg) {
          Key k = kp;
          k.insert(k.end(), kn.begin(), kn.end());
          if (!put(k, rp + rn)) return false;
        }
    }
    for (auto& [k, r] : cur)
      if (k.empty() && r < 0) return false;
    return true;
  }

 private:
  std::map<std::pair<Side, DeltaIndex>, int> ids_;
  std::vector<Ineq> rows_;
};

// Random fact set over at most `max_indices` distinct (side, index) pairs.
inline DeltaProfile random_profile(std::mt19937_64& rng, std::size_t max_indices = 12) {
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  const long long js[] = {0, 1, 2, 3, 5, kInfIndex};
  const std::pair<long long, long long> ss[] = {{0, 0}, {0, 1}, {0, 2}, {0, kInfIndex}, {1, 0}, {1, 1},
                                                {2, 0}, {2, 1}, {kInfIndex, 0}, {kInfIndex, 1}};
  DeltaProfile p("random");
  p.types.clear();
  std::vector<std::pair<Side, DeltaIndex>> pool;
  std::size_t n = 1 + pick(max_indices);
  while (pool.size() < n) {
    Side s = pick(2) ? Side::Pos : Side::Neg;
    DeltaIndex x;
    switch (pick(4)) {
      case 0: x = DeltaIndex::e(js[pick(6)]); break;
      case 1: x = DeltaIndex::r(js[pick(6)]); break;
      case 2: {
        auto [i, j] = ss[pick(10)];
        x = DeltaIndex::s(i, j);
        break;
      }
      default: x = DeltaIndex::ord();
    }
    if (std::find(pool.begin(), pool.end(), std::make_pair(s, x)) == pool.end()) pool.emplace_back(s, x);
  }
  std::size_t facts = 1 + pick(2 * n);
  for (std::size_t k = 0; k < facts; ++k) {
    auto [s, x] = pool[pick(pool.size())];
    Rel rel = static_cast<Rel>(pick(3));
    Rat v = rat(static_cast<long long>(pick(13)) - 6, 2);
    bool vs_ord = !x.ordinary && pick(4) == 0;
    if (!x.ordinary) p.types.insert(x.type);
    p.add({s, x, rel, v, vs_ord, prov("random", {})});
  }
  return p;
}

inline bool oracle_feasible(const DeltaProfile& p) {
  FeasibilityOracle o;
  std::set<std::pair<Side, DeltaIndex>> idx;
  std::set<SpincType> types(p.types.begin(), p.types.end());
  for (const auto& f : p.facts) {
    if (f.index.ordinary) {
      o.var(Side::Pos, f.index);
      continue;
    }
    idx.insert({f.side, f.index});
    types.insert(f.index.type);
  }
  o.var(Side::Pos, DeltaIndex::ord());
  for (const auto& f : p.facts) o.add_fact(f);
  o.add_axioms(types, idx);
  return o.feasible();
}

}  // namespace eqdelta::oracle
