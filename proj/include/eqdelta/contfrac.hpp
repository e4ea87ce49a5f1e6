#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eqdelta/rational.hpp"

namespace eqdelta {

// Reduced p/q with q >= 1.
class Slope {
 public:
  Slope(const Int& p, const Int& q) {
    if (q == 0) throw make_error("ZeroDenominator", "slope with q = 0");
    value_ = rat(p, q);
  }
  explicit Slope(const Rat& r) : value_(r) {}
  Slope(long long p, long long q = 1) : Slope(Int(p), Int(q)) {}

  Int p() const { return num(value_); }
  Int q() const { return den(value_); }
  const Rat& value() const { return value_; }
  friend bool operator==(const Slope& a, const Slope& b) { return a.value_ == b.value_; }

 private:
  Rat value_;
};

inline std::string to_string(const Slope& s) { return s.p().str() + "/" + s.q().str(); }

// A finite value or the in-band infinity marker.
struct NcfValue {
  bool infinite = false;
  Rat value = 0;

  static NcfValue inf() { return {true, 0}; }
  static NcfValue of(const Rat& r) { return {false, r}; }
  friend bool operator==(const NcfValue&, const NcfValue&) = default;
};

using Ncf = std::vector<Int>;

inline Ncf ncf(std::initializer_list<long long> xs) {
  Ncf out;
  for (long long x : xs) out.emplace_back(x);
  return out;
}

// [a1, ..., am] = a1 - 1/(a2 - 1/(... - 1/am)); the empty expansion is ∞.
inline NcfValue eval_ncf(const Ncf& e) {
  NcfValue acc = NcfValue::inf();
  for (auto it = e.rbegin(); it != e.rend(); ++it) {
    if (acc.infinite) {
      acc = NcfValue::of(Rat(*it));
    } else if (acc.value == 0) {
      acc = NcfValue::inf();
    } else {
      acc = NcfValue::of(Rat(*it) - 1 / acc.value);
    }
  }
  return acc;
}

// All-even expansion by repeated rounding to the nearest even integer.
inline Ncf expand_even(const Slope& r) {
  if (r.p() % 2 != 0 && r.q() % 2 != 0)
    throw make_error("BothOdd", "numerator and denominator are both odd: " + to_string(r));
  Ncf out;
  Rat cur = r.value();
  while (true) {
    // Nearest even integer a: |cur - a| < 1.
    Int lo = floor(cur / 2) * 2;
    Rat dlo = cur - Rat(lo);
    Int a;
    if (dlo < 1) a = lo;
    else if (dlo > 1) a = lo + 2;
    else throw make_error("InternalError", "tie in nearest even integer for " + to_string(cur));
    out.push_back(a);
    Rat rest = Rat(a) - cur;
    if (rest == 0) break;
    cur = 1 / rest;
  }
  return out;
}

// Ceiling expansion: a_k = ⌈current⌉.
inline Ncf expand_standard(const Slope& r) {
  Ncf out;
  Rat cur = r.value();
  while (true) {
    Int a = ceil(cur);
    out.push_back(a);
    Rat rest = Rat(a) - cur;
    if (rest == 0) break;
    cur = 1 / rest;
  }
  return out;
}

}  // namespace eqdelta
