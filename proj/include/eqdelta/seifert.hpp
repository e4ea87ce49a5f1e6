#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eqdelta/contfrac.hpp"
#include "eqdelta/plumbing.hpp"

namespace eqdelta {

struct SeifertPair {
  Int a;
  Int b;
  bool padding = false;  // multiplicity-1 fibre inserted by the parity normal form
  friend bool operator==(const SeifertPair& x, const SeifertPair& y) { return x.a == y.a && x.b == y.b; }
};

struct SeifertData {
  Int b;
  std::vector<SeifertPair> pairs;

  SeifertData() = default;
  SeifertData(Int b0, std::vector<std::pair<Int, Int>> ps) : b(std::move(b0)) {
    for (auto& [a, bi] : ps) pairs.push_back({a, bi, false});
    validate();
  }
  static SeifertData of(long long b0, std::initializer_list<std::pair<long long, long long>> ps) {
    std::vector<std::pair<Int, Int>> v;
    for (auto [a, bi] : ps) v.emplace_back(a, bi);
    return SeifertData(Int(b0), std::move(v));
  }

  void validate() const {
    for (const auto& p : pairs) {
      if (p.a < 1) throw make_error("ParseError", "Seifert multiplicity must be positive");
      if (p.b == 0 && p.a != 1) throw make_error("ParseError", "Seifert pair with zero b");
      if (gcd(p.a, p.b) != 1) throw make_error("ParseError", "coprimality violated in Seifert pair");
    }
  }

  friend bool operator==(const SeifertData& x, const SeifertData& y) { return x.b == y.b && x.pairs == y.pairs; }
};

inline std::string to_string(const SeifertData& s) {
  std::string out = "Y(" + s.b.str() + ";";
  for (std::size_t i = 0; i < s.pairs.size(); ++i)
    out += (i ? ",(" : "(") + s.pairs[i].a.str() + "," + s.pairs[i].b.str() + ")";
  return out + ")";
}

inline Rat euler_number(const SeifertData& s) {
  Rat e(s.b);
  for (const auto& p : s.pairs) e -= rat(p.b, p.a);
  return e;
}

struct SeifertMove {
  std::size_t index;  // 1-based pair index
  Int k;
};

// Each move (i, k): b -> b + k, b_i -> b_i + k a_i.
inline SeifertData normalize(SeifertData s, const std::vector<SeifertMove>& moves) {
  for (const auto& m : moves) {
    if (m.index < 1 || m.index > s.pairs.size())
      throw make_error("IndexOutOfRange", "move index " + std::to_string(m.index));
    s.b += m.k;
    s.pairs[m.index - 1].b += m.k * s.pairs[m.index - 1].a;
  }
  return s;
}

struct BrieskornData {
  std::vector<Int> exponents;

  BrieskornData() = default;
  explicit BrieskornData(std::vector<Int> e) : exponents(std::move(e)) { validate(); }
  static BrieskornData of(std::initializer_list<long long> e) {
    std::vector<Int> v;
    for (long long x : e) v.emplace_back(x);
    return BrieskornData(std::move(v));
  }
  void validate() const {
    for (const auto& a : exponents)
      if (a < 2) throw make_error("ParseError", "Brieskorn exponents must be at least 2");
    for (std::size_t i = 0; i < exponents.size(); ++i)
      for (std::size_t j = i + 1; j < exponents.size(); ++j)
        if (gcd(exponents[i], exponents[j]) != 1) throw make_error("NotCoprime", "Brieskorn exponents not pairwise coprime");
  }
  Int product() const {
    Int p = 1;
    for (const auto& a : exponents) p *= a;
    return p;
  }
};

inline std::string to_string(const BrieskornData& d) {
  std::string out = "Sigma(";
  for (std::size_t i = 0; i < d.exponents.size(); ++i) out += (i ? "," : "") + d.exponents[i].str();
  return out + ")";
}

namespace detail {

inline SeifertData parity_normal(SeifertData s) {
  // Absorb b into the first pair.
  s = normalize(s, {{1, -s.b}});
  if (s.pairs.size() % 2 == 0) s.pairs.push_back({1, 0, true});
  std::vector<std::size_t> evens;
  for (std::size_t i = 0; i < s.pairs.size(); ++i)
    if (s.pairs[i].b % 2 == 0) evens.push_back(i);
  for (std::size_t k = 0; k + 1 < evens.size(); k += 2) {
    s.pairs[evens[k]].b += s.pairs[evens[k]].a;
    s.pairs[evens[k + 1]].b -= s.pairs[evens[k + 1]].a;
  }
  for (std::size_t i = 1; i < s.pairs.size(); ++i) {
    auto& p = s.pairs[i];
    if (p.b > 0) continue;
    Int k = ceil(rat(1 - p.b, 2 * p.a));
    p.b += 2 * k * p.a;
    s.pairs[0].b -= 2 * k * s.pairs[0].a;
  }
  return s;
}

}  // namespace detail

// Seifert data with b - Σ b_i/a_i = -1/(a_1⋯a_n).
inline SeifertData brieskorn_seifert(const BrieskornData& d, bool parity_normal_form = false) {
  d.validate();
  const Int n = d.product();
  SeifertData s;
  Rat sum = 0;
  for (const auto& a : d.exponents) {
    Int bi = inv_mod(n / a, a);
    s.pairs.push_back({a, bi, false});
    sum += rat(bi, a);
  }
  s.b = num(sum - rat(Int(1), n));
  bool all_odd = true;
  for (const auto& a : d.exponents) all_odd = all_odd && (a % 2 != 0);
  if (parity_normal_form && all_odd) return detail::parity_normal(s);
  return s;
}

struct StarPlumbing {
  PlumbingGraph graph;
  SeifertData data;  // data actually realized, after any parity repairs
  std::string convention;
  std::size_t center = 0;
  std::vector<std::vector<std::size_t>> arms;
};

namespace detail {

inline SeifertData even_repair(SeifertData s) {
  for (std::size_t i = 0; i < s.pairs.size(); ++i) {
    auto& p = s.pairs[i];
    if (p.a % 2 != 0 && p.b % 2 != 0) s = normalize(s, {{i + 1, 1}});
  }
  if (s.b % 2 != 0) {
    for (std::size_t i = 0; i < s.pairs.size(); ++i)
      if (s.pairs[i].a % 2 == 0) {
        s = normalize(s, {{i + 1, 1}});
        break;
      }
    if (s.b % 2 != 0) throw make_error("NoEvenExponent", "central degree stays odd and no even multiplicity is available");
  }
  return s;
}

}  // namespace detail

// Star-shaped plumbing: center of degree b, arm i the chain of a_i/b_i with
// its first coefficient adjacent to the center.
inline StarPlumbing to_star_plumbing(const SeifertData& input, bool even) {
  if (euler_number(input) == 0) throw make_error("ZeroEuler", "Euler number vanishes");
  SeifertData s = even ? detail::even_repair(input) : input;
  StarPlumbing out;
  out.data = s;
  out.convention = even ? "even: arm i = even NCF of a_i/b_i, center b" : "standard: arm i = ceiling NCF of a_i/b_i, center b";
  std::vector<Vertex> vs{{"c", s.b}};
  std::vector<std::pair<std::size_t, std::size_t>> es;
  for (std::size_t i = 0; i < s.pairs.size(); ++i) {
    Slope r(s.pairs[i].a, s.pairs[i].b);
    Ncf arm = even ? expand_even(r) : expand_standard(r);
    std::vector<std::size_t> ids;
    std::size_t prev = 0;
    for (std::size_t k = 0; k < arm.size(); ++k) {
      vs.push_back({"a" + std::to_string(i + 1) + "_" + std::to_string(k + 1), arm[k]});
      std::size_t id = vs.size() - 1;
      es.emplace_back(prev, id);
      prev = id;
      ids.push_back(id);
    }
    out.arms.push_back(std::move(ids));
  }
  out.graph = PlumbingGraph(std::move(vs), std::move(es));
  return out;
}

// Smallest even star plumbing reachable by moves with |k| <= radius on each
// pair (the moves preserve the Seifert manifold).
inline StarPlumbing smallest_even_star(const SeifertData& s, int radius = 3) {
  std::optional<StarPlumbing> best;
  const std::size_t n = s.pairs.size();
  std::vector<int> k(n, -radius);
  while (true) {
    std::vector<SeifertMove> moves;
    for (std::size_t i = 0; i < n; ++i) moves.push_back({i + 1, k[i]});
    SeifertData t = normalize(s, moves);
    bool ok = t.b % 2 == 0;
    for (const auto& p : t.pairs) ok = ok && !(p.a % 2 != 0 && p.b % 2 != 0) && p.b != 0;
    if (ok) {
      StarPlumbing cand = to_star_plumbing(t, true);
      if (!best || cand.graph.size() < best->graph.size()) best = std::move(cand);
    }
    std::size_t i = 0;
    while (i < n && k[i] == radius) k[i++] = -radius;
    if (i == n) break;
    ++k[i];
  }
  if (!best) return to_star_plumbing(s, true);
  return *best;
}

}  // namespace eqdelta
