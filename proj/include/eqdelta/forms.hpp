#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "eqdelta/rational.hpp"

namespace eqdelta {

// Symmetric bilinear form given by its Gram matrix. `T` is Int for lattices
// and Rat for restricted forms on rational subspaces.
template <class T>
class BasicSymForm {
 public:
  BasicSymForm() = default;

  explicit BasicSymForm(std::vector<std::vector<T>> entries) : a_(std::move(entries)) {
    for (const auto& row : a_)
      if (row.size() != a_.size()) throw make_error("NotSquare", "Gram matrix is not square");
    for (std::size_t i = 0; i < a_.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (a_[i][j] != a_[j][i]) throw make_error("NotSymmetric", "Gram matrix is not symmetric");
  }

  static BasicSymForm diagonal(const std::vector<T>& d) {
    std::vector<std::vector<T>> m(d.size(), std::vector<T>(d.size(), T(0)));
    for (std::size_t i = 0; i < d.size(); ++i) m[i][i] = d[i];
    return BasicSymForm(std::move(m));
  }

  std::size_t rank() const { return a_.size(); }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i][j]; }
  const std::vector<std::vector<T>>& entries() const { return a_; }

  T pair(const std::vector<T>& x, const std::vector<T>& y) const {
    T s(0);
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < a_.size(); ++j) s += x[i] * a_[i][j] * y[j];
    }
    return s;
  }

  friend bool operator==(const BasicSymForm& x, const BasicSymForm& y) { return x.a_ == y.a_; }

 private:
  std::vector<std::vector<T>> a_;
};

using SymForm = BasicSymForm<Int>;
using RatForm = BasicSymForm<Rat>;

template <class T>
RatForm to_rational_form(const BasicSymForm<T>& f) {
  RatMat m(f.rank(), RatVec(f.rank()));
  for (std::size_t i = 0; i < f.rank(); ++i)
    for (std::size_t j = 0; j < f.rank(); ++j) m[i][j] = Rat(f(i, j));
  return RatForm(std::move(m));
}

template <class T>
BasicSymForm<T> direct_sum(const BasicSymForm<T>& f, const BasicSymForm<T>& g) {
  std::size_t n = f.rank(), m = g.rank();
  std::vector<std::vector<T>> e(n + m, std::vector<T>(n + m, T(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) e[i][j] = f(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) e[n + i][n + j] = g(i, j);
  return BasicSymForm<T>(std::move(e));
}

// Gram matrix of f in the basis given by the columns of P: PᵀAP.
template <class T>
BasicSymForm<T> congruent(const BasicSymForm<T>& f, const std::vector<std::vector<T>>& p) {
  std::size_t n = f.rank();
  std::size_t k = n == 0 ? 0 : p[0].size();
  std::vector<std::vector<T>> ap(n, std::vector<T>(k, T(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l) {
      if (f(i, l) == 0) continue;
      for (std::size_t j = 0; j < k; ++j) ap[i][j] += f(i, l) * p[l][j];
    }
  std::vector<std::vector<T>> out(k, std::vector<T>(k, T(0)));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < n; ++l) out[i][j] += p[l][i] * ap[l][j];
  return BasicSymForm<T>(std::move(out));
}

struct SignatureProfile {
  std::size_t b_plus = 0;
  std::size_t b_minus = 0;
  std::size_t b_zero = 0;

  long long sigma() const { return static_cast<long long>(b_plus) - static_cast<long long>(b_minus); }
  friend bool operator==(const SignatureProfile&, const SignatureProfile&) = default;
};

namespace detail {

// Diagonal of a rational congruence diagonalization. Elementary moves are
// row/column swaps and additions, so the product of the result is det(f).
template <class T>
RatVec congruence_diagonal(const BasicSymForm<T>& f) {
  const std::size_t n = f.rank();
  RatMat a(n, RatVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat(f(i, j));

  RatVec diag;
  diag.reserve(n);
  auto swap_idx = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    std::swap(a[x], a[y]);
    for (auto& row : a) std::swap(row[x], row[y]);
  };
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = n;
    for (std::size_t i = k; i < n && piv == n; ++i)
      if (a[i][i] != 0) piv = i;
    if (piv == n) {
      // Zero diagonal block: turn a hyperbolic pair into a nonzero pivot.
      std::size_t pi = n, pj = n;
      for (std::size_t i = k; i < n && pi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (a[i][j] != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) {
        for (std::size_t i = k; i < n; ++i) diag.push_back(0);
        return diag;
      }
      for (std::size_t c = 0; c < n; ++c) a[pi][c] += a[pj][c];
      for (std::size_t r = 0; r < n; ++r) a[r][pi] += a[r][pj];
      piv = pi;
    }
    swap_idx(k, piv);
    const Rat p = a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      Rat m = a[i][k] / p;
      for (std::size_t c = k; c < n; ++c) a[i][c] -= m * a[k][c];
      for (std::size_t r = k; r < n; ++r) a[r][i] -= m * a[r][k];
    }
    diag.push_back(p);
  }
  return diag;
}

}  // namespace detail

template <class T>
SignatureProfile signature_profile(const BasicSymForm<T>& f) {
  SignatureProfile s;
  for (const Rat& d : detail::congruence_diagonal(f)) {
    if (d > 0) ++s.b_plus;
    else if (d < 0) ++s.b_minus;
    else ++s.b_zero;
  }
  return s;
}

template <class T>
Rat determinant_rat(const BasicSymForm<T>& f) {
  Rat p = 1;
  for (const Rat& d : detail::congruence_diagonal(f)) p *= d;
  return p;
}

inline Int determinant(const SymForm& f) { return num(determinant_rat(f)); }

// Column vectors in an ambient space of rank n.
struct SubspaceBasis {
  std::size_t ambient = 0;
  std::vector<RatVec> vectors;
};

inline SubspaceBasis coordinate_subspace(std::size_t n, const std::vector<std::size_t>& idx) {
  SubspaceBasis s{n, {}};
  for (std::size_t i : idx) {
    RatVec v(n, Rat(0));
    v.at(i) = 1;
    s.vectors.push_back(std::move(v));
  }
  return s;
}

namespace detail {

// Basis of the right nullspace of a k×n rational matrix.
inline std::vector<RatVec> nullspace(RatMat m, std::size_t n) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m.size(); ++col) {
    std::size_t sel = m.size();
    for (std::size_t r = row; r < m.size(); ++r)
      if (m[r][col] != 0) {
        sel = r;
        break;
      }
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    Rat inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rat c = m[r][col];
      for (std::size_t j = 0; j < n; ++j) m[r][j] -= c * m[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<RatVec> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    RatVec v(n, Rat(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace detail

struct ComplementResult {
  SubspaceBasis basis;
  RatForm restricted;
};

template <class T>
ComplementResult orthogonal_complement(const BasicSymForm<T>& f, const SubspaceBasis& s) {
  const std::size_t n = f.rank();
  RatForm fq = to_rational_form(f);
  RatMat cols(n, RatVec(s.vectors.size()));
  for (std::size_t j = 0; j < s.vectors.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) cols[i][j] = s.vectors[j].at(i);
  if (!s.vectors.empty() && determinant_rat(congruent(fq, cols)) == 0)
    throw make_error("DegenerateRestriction", "form restricted to the subspace is degenerate");

  RatMat sa(s.vectors.size(), RatVec(n, Rat(0)));
  for (std::size_t r = 0; r < s.vectors.size(); ++r)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) sa[r][j] += s.vectors[r][i] * fq(i, j);

  ComplementResult out;
  out.basis.ambient = n;
  out.basis.vectors = detail::nullspace(std::move(sa), n);
  RatMat b(n, RatVec(out.basis.vectors.size()));
  for (std::size_t j = 0; j < out.basis.vectors.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) b[i][j] = out.basis.vectors[j][i];
  out.restricted = out.basis.vectors.empty() ? RatForm() : congruent(fq, b);
  return out;
}

using BitVec = std::vector<std::uint8_t>;

// All u in F₂ⁿ with f·u ≡ rhs (mod 2).
inline std::vector<BitVec> solve_mod2(const SymForm& f, const BitVec& rhs) {
  const std::size_t n = f.rank();
  std::vector<BitVec> m(n, BitVec(n + 1, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = static_cast<std::uint8_t>(mod_floor(f(i, j), 2) == 1);
    m[i][n] = rhs.at(i) & 1;
  }
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t sel = n;
    for (std::size_t r = row; r < n; ++r)
      if (m[r][col]) {
        sel = r;
        break;
      }
    if (sel == n) continue;
    std::swap(m[row], m[sel]);
    for (std::size_t r = 0; r < n; ++r)
      if (r != row && m[r][col])
        for (std::size_t c = 0; c <= n; ++c) m[r][c] ^= m[row][c];
    pivots.push_back(col);
    ++row;
  }
  for (std::size_t r = row; r < n; ++r)
    if (m[r][n]) return {};
  std::vector<std::size_t> frees;
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) frees.push_back(c);

  std::vector<BitVec> sols;
  const std::size_t count = std::size_t(1) << frees.size();
  for (std::size_t mask = 0; mask < count; ++mask) {
    BitVec u(n, 0);
    for (std::size_t k = 0; k < frees.size(); ++k) u[frees[k]] = (mask >> k) & 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      std::uint8_t v = m[r][n];
      for (auto c : frees) v ^= static_cast<std::uint8_t>(m[r][c] & u[c]);
      u[pivots[r]] = v;
    }
    sols.push_back(std::move(u));
  }
  std::sort(sols.begin(), sols.end());
  return sols;
}

inline BitVec diagonal_parities(const SymForm& f) {
  BitVec d(f.rank());
  for (std::size_t i = 0; i < f.rank(); ++i) d[i] = static_cast<std::uint8_t>(mod_floor(f(i, i), 2) == 1);
  return d;
}

struct CharSquareResult {
  Int max_square;
  IntVec witness;
};

constexpr std::size_t kMaxCharRank = 12;

namespace detail {

inline bool is_characteristic(const SymForm& f, const IntVec& x) {
  for (std::size_t i = 0; i < f.rank(); ++i) {
    Int s = 0;
    for (std::size_t j = 0; j < f.rank(); ++j) s += f(i, j) * x[j];
    if (mod_floor(s - f(i, i), 2) != 0) return false;
  }
  return true;
}

inline IntVec sign_normalized(IntVec x) {
  for (const Int& v : x) {
    if (v == 0) continue;
    if (v < 0)
      for (Int& w : x) w = -w;
    break;
  }
  return x;
}

}  // namespace detail

// Largest w·w over characteristic w for a negative definite f, via
// Fincke–Pohst enumeration of the positive definite -f.
inline CharSquareResult max_char_square(const SymForm& f, std::size_t max_rank = kMaxCharRank) {
  const std::size_t n = f.rank();
  if (n > max_rank) throw make_error("RankTooLarge", "rank " + std::to_string(n) + " exceeds " + std::to_string(max_rank));
  if (n == 0) return {0, {}};

  // -f = Σ q_ii (x_i + Σ_{j>i} q_ij x_j)²
  RatMat q(n, RatVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q[i][j] = Rat(-f(i, j));
  for (std::size_t i = 0; i < n; ++i) {
    if (q[i][i] <= 0) throw make_error("NotDefinite", "form is not negative definite");
    for (std::size_t j = i + 1; j < n; ++j) {
      q[j][i] = q[i][j];
      q[i][j] /= q[i][i];
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
  }

  IntVec best_x;
  Rat bound = -1;
  for (const BitVec& u : solve_mod2(f, diagonal_parities(f))) {
    IntVec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = u[i];
    Rat v = Rat(-f.pair(x, x));
    if (bound < 0 || v < bound) bound = v;
  }
  if (bound < 0) throw make_error("NotDefinite", "no characteristic vector");

  IntVec x(n, 0);
  Rat best = bound;
  std::vector<IntVec> witnesses;
  // Depth-first over coordinates n-1 .. 0.
  auto rec = [&](auto&& self, std::size_t level, const Rat& used) -> void {
    const std::size_t i = level - 1;
    Rat c = 0;
    for (std::size_t j = i + 1; j < n; ++j) c += q[i][j] * Rat(x[j]);
    Rat room = (best - used) / q[i][i];
    if (room < 0) return;
    Int s = boost::multiprecision::sqrt(ceil(room)) + 1;
    Int lo = floor(-c) - s, hi = ceil(-c) + s;
    for (Int t = lo; t <= hi; ++t) {
      Rat d = Rat(t) + c;
      Rat u = used + q[i][i] * d * d;
      if (u > best) continue;
      x[i] = t;
      if (i == 0) {
        if (!detail::is_characteristic(f, x)) continue;
        IntVec w = detail::sign_normalized(x);
        if (u < best) {
          best = u;
          witnesses.clear();
        }
        witnesses.push_back(std::move(w));
      } else {
        self(self, level - 1, u);
      }
    }
    x[i] = 0;
  };
  rec(rec, n, Rat(0));
  std::sort(witnesses.begin(), witnesses.end());
  return {-num(best), witnesses.front()};
}

}  // namespace eqdelta
