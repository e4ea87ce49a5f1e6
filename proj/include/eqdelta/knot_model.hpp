#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "eqdelta/seifert.hpp"

namespace eqdelta {

struct KnotModel;

struct TorusKnot {
  Int p, q;
};
struct MontesinosKnot {
  SeifertData data;
};
struct QuasiAlternatingKnot {
  std::string key;
};
struct MirrorKnot {
  std::shared_ptr<const KnotModel> inner;
};
struct KnotSum {
  std::vector<KnotModel> parts;
};
struct OpaqueKnot {
  std::string key;
};

struct KnotModel {
  std::variant<TorusKnot, MontesinosKnot, QuasiAlternatingKnot, MirrorKnot, KnotSum, OpaqueKnot> v;

  static KnotModel torus(const Int& p, const Int& q) {
    if (p < 2 || q < 2) throw make_error("ParseError", "torus knot exponents must be at least 2");
    if (gcd(p, q) != 1) throw make_error("NotCoprime", "torus knot exponents must be coprime");
    return {TorusKnot{p, q}};
  }
  static KnotModel montesinos(SeifertData d) {
    int even = 0;
    for (const auto& pr : d.pairs) even += pr.a % 2 == 0 ? 1 : 0;
    if (even != 1) throw make_error("ParseError", "a Montesinos knot needs exactly one even a_i");
    return {MontesinosKnot{std::move(d)}};
  }
  static KnotModel quasi_alternating(std::string key) { return {QuasiAlternatingKnot{std::move(key)}}; }
  static KnotModel mirror(KnotModel k) { return {MirrorKnot{std::make_shared<const KnotModel>(std::move(k))}}; }
  static KnotModel sum(std::vector<KnotModel> parts) {
    if (parts.empty()) throw make_error("ParseError", "empty knot sum");
    return {KnotSum{std::move(parts)}};
  }
  static KnotModel opaque(std::string key) { return {OpaqueKnot{std::move(key)}}; }
};

inline std::string knot_key(const KnotModel& k) {
  struct V {
    std::string operator()(const TorusKnot& t) const { return "T(" + t.p.str() + "," + t.q.str() + ")"; }
    std::string operator()(const MontesinosKnot& m) const {
      std::string s = "M(" + m.data.b.str() + ";";
      for (std::size_t i = 0; i < m.data.pairs.size(); ++i)
        s += (i ? ",(" : "(") + m.data.pairs[i].a.str() + "," + m.data.pairs[i].b.str() + ")";
      return s + ")";
    }
    std::string operator()(const QuasiAlternatingKnot& q) const { return q.key; }
    std::string operator()(const MirrorKnot& m) const { return "-" + knot_key(*m.inner); }
    std::string operator()(const KnotSum& s) const {
      std::string out;
      for (std::size_t i = 0; i < s.parts.size(); ++i) out += (i ? "#" : "") + knot_key(s.parts[i]);
      return out;
    }
    std::string operator()(const OpaqueKnot& o) const { return o.key; }
  };
  return std::visit(V{}, k.v);
}

// σ(T_{p,q}) = (p-1)(q-1) - 2 #{(i,j) : 1/2 < i/p + j/q < 3/2}, 0 < i < p, 0 < j < q.
inline Int torus_signature(const Int& p, const Int& q) {
  if (p < 2 || q < 2 || gcd(p, q) != 1) throw make_error("ParseError", "torus knot exponents must be coprime and at least 2");
  Int count = 0;
  const Int pq = p * q;
  for (Int i = 1; i < p; ++i)
    for (Int j = 1; j < q; ++j) {
      Int s = 2 * (i * q + j * p);
      if (s > pq && s < 3 * pq) ++count;
    }
  return (p - 1) * (q - 1) - 2 * count;
}

// Slice genus of a positive torus knot.
inline Int torus_slice_genus(const Int& p, const Int& q) { return (p - 1) * (q - 1) / 2; }

// Seifert data of Σ₂(T_{2k,q}), q odd: fibres (k, β₁), (q, β₂), (q, β₂) with
// β₁ q ≡ 1 (mod k), 2kβ₂ ≡ 1 (mod q) and Euler number -1/(kq).
inline SeifertData even_torus_cover_seifert(const Int& p, const Int& q) {
  Int even = p % 2 == 0 ? p : q;
  Int odd = p % 2 == 0 ? q : p;
  if (even % 2 != 0 || odd % 2 == 0) throw make_error("ParseError", "exactly one torus exponent must be even");
  const Int k = even / 2;
  Int b1 = k == 1 ? Int(0) : inv_mod(mod_floor(odd, k), k);
  Int b2 = inv_mod(mod_floor(2 * k, odd), odd);
  // b k q - b1 q - 2 b2 k = -1.
  Int rhs = b1 * odd + 2 * b2 * k - 1;
  if (rhs % (k * odd) != 0) throw make_error("InternalError", "Euler number equation has no integral solution");
  std::vector<std::pair<Int, Int>> pairs;
  if (k > 1) pairs.emplace_back(k, b1);
  pairs.emplace_back(odd, b2);
  pairs.emplace_back(odd, b2);
  return SeifertData(rhs / (k * odd), std::move(pairs));
}

}  // namespace eqdelta
