#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace eqdelta {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;
using IntMat = std::vector<IntVec>;
using RatMat = std::vector<RatVec>;

// Base of every error raised by the library; `kind()` is the stable tag
// surfaced by the CLI.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

inline Error make_error(const std::string& kind, const std::string& what) {
  return Error(kind, what);
}

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

// p/q for any nonzero q (the two-argument Rat constructor needs q > 0).
inline Rat rat(const Int& p, const Int& q) {
  if (q == 0) throw Error("ZeroDenominator", "rational with zero denominator");
  return q < 0 ? Rat(Int(-p), Int(-q)) : Rat(p, q);
}
inline Rat rat(long long p, long long q = 1) { return rat(Int(p), Int(q)); }

inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

inline Int mod_floor(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += (m < 0 ? -m : m);
  return r;
}

inline Int floor(const Rat& r) { return floor_div(num(r), den(r)); }
inline Int ceil(const Rat& r) { return -floor_div(-num(r), den(r)); }

// Representative of r modulo m in [0, m).
inline Rat mod_rat(const Rat& r, const Rat& m) {
  Rat q = r / m;
  return r - Rat(floor(q)) * m;
}

inline bool is_integer(const Rat& r) { return den(r) == 1; }

inline Int gcd(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Returns (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0.
struct Bezout {
  Int g, x, y;
};
inline Bezout ext_gcd(const Int& a, const Int& b) {
  Int r0 = a, r1 = b, x0 = 1, x1 = 0, y0 = 0, y1 = 1;
  while (r1 != 0) {
    Int q = r0 / r1;
    Int t = r0 - q * r1; r0 = r1; r1 = t;
    t = x0 - q * x1; x0 = x1; x1 = t;
    t = y0 - q * y1; y0 = y1; y1 = t;
  }
  if (r0 < 0) return {-r0, -x0, -y0};
  return {r0, x0, y0};
}

// Inverse of a modulo m (m >= 1); throws when not coprime.
inline Int inv_mod(const Int& a, const Int& m) {
  if (m == 1) return 0;
  Bezout e = ext_gcd(mod_floor(a, m), m);
  if (e.g != 1) throw make_error("NotCoprime", "no modular inverse");
  return mod_floor(e.x, m);
}

inline std::string to_string(const Int& v) { return v.str(); }

inline std::string to_string(const Rat& r) {
  if (den(r) == 1) return num(r).str();
  return num(r).str() + "/" + den(r).str();
}

// Parses "p", "p/q" or "-p/q".
inline Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int p(s.substr(0, slash));
    Int q(s.substr(slash + 1));
    if (q == 0) throw make_error("ParseError", "zero denominator in '" + s + "'");
    return rat(p, q);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw make_error("ParseError", "not a rational: '" + s + "'");
  }
}

// Extended rationals used for interval endpoints.
struct ExtRat {
  enum class Kind { NegInf, Finite, PosInf };
  Kind kind = Kind::Finite;
  Rat value = 0;

  static ExtRat neg_inf() { return {Kind::NegInf, 0}; }
  static ExtRat pos_inf() { return {Kind::PosInf, 0}; }
  static ExtRat of(const Rat& r) { return {Kind::Finite, r}; }

  bool finite() const { return kind == Kind::Finite; }
  friend bool operator==(const ExtRat& a, const ExtRat& b) {
    return a.kind == b.kind && (a.kind != Kind::Finite || a.value == b.value);
  }
  friend bool operator<(const ExtRat& a, const ExtRat& b) {
    if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    return a.kind == Kind::Finite && a.value < b.value;
  }
  friend bool operator<=(const ExtRat& a, const ExtRat& b) { return !(b < a); }
};

inline std::string to_string(const ExtRat& e) {
  switch (e.kind) {
    case ExtRat::Kind::NegInf: return "-inf";
    case ExtRat::Kind::PosInf: return "inf";
    default: return to_string(e.value);
  }
}

}  // namespace eqdelta
