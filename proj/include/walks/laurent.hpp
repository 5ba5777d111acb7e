#pragma once
// Univariate Laurent polynomials, dense over an exponent window.  These appear
// as the coefficients of series in t (coefficient of t^n is a Laurent
// polynomial in x), so exponent windows stay modest; a hard span cap catches
// runaway exponent growth instead of exhausting memory.

#include <algorithm>
#include <vector>

#include "walks/ring.hpp"

namespace walks {

inline constexpr int kMaxLaurentSpan = 1 << 16;

struct exponent_overflow : ring_error {
  using ring_error::ring_error;
};

template <class R>
struct Laurent {
  int lo = 0;          // c[k] is the coefficient of x^(lo+k)
  std::vector<R> c;    // empty <=> zero; ends are kept nonzero (normalized)

  Laurent() = default;
  Laurent(int x) { if (x) { lo = 0; c = {R(x)}; } }
  Laurent(const R& x) { if (!is_zero(x)) { lo = 0; c = {x}; } }

  static Laurent term(const R& coeff, int exp) {
    Laurent r;
    if (!is_zero(coeff)) { r.lo = exp; r.c = {coeff}; }
    return r;
  }

  bool zero() const { return c.empty(); }
  int deg_lo() const { return lo; }               // valid only if !zero()
  int deg_hi() const { return lo + (int)c.size() - 1; }

  R coeff(int exp) const {
    int k = exp - lo;
    if (k < 0 || k >= (int)c.size()) return R(0);
    return c[k];
  }

  void normalize() {
    size_t a = 0, b = c.size();
    while (b > a && is_zero(c[b - 1])) --b;
    while (a < b && is_zero(c[a])) ++a;
    if (a == b) { c.clear(); lo = 0; return; }
    if (a > 0) c.erase(c.begin(), c.begin() + a);
    c.resize(b - a);
    lo += (int)a;
  }

  void add_term(const R& coeff, int exp) {
    if (is_zero(coeff)) return;
    if (c.empty()) { lo = exp; c = {coeff}; return; }
    if (exp < lo) {
      if (deg_hi() - exp >= kMaxLaurentSpan) throw exponent_overflow("Laurent span cap");
      c.insert(c.begin(), lo - exp, R(0));
      lo = exp;
    } else if (exp > deg_hi()) {
      if (exp - lo >= kMaxLaurentSpan) throw exponent_overflow("Laurent span cap");
      c.resize(exp - lo + 1, R(0));
    }
    c[exp - lo] += coeff;
    normalize();
  }

  friend Laurent operator+(const Laurent& a, const Laurent& b) {
    if (a.zero()) return b;
    if (b.zero()) return a;
    int lo = std::min(a.lo, b.lo), hi = std::max(a.deg_hi(), b.deg_hi());
    if (hi - lo >= kMaxLaurentSpan) throw exponent_overflow("Laurent span cap");
    Laurent r;
    r.lo = lo;
    r.c.assign(hi - lo + 1, R(0));
    for (int k = 0; k < (int)a.c.size(); ++k) r.c[a.lo - lo + k] += a.c[k];
    for (int k = 0; k < (int)b.c.size(); ++k) r.c[b.lo - lo + k] += b.c[k];
    r.normalize();
    return r;
  }
  friend Laurent operator-(const Laurent& a, const Laurent& b) { return a + (-b); }
  Laurent operator-() const {
    Laurent r = *this;
    for (auto& x : r.c) x = -x;
    return r;
  }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    if (a.zero() || b.zero()) return {};
    int span = (int)(a.c.size() + b.c.size());
    if (span >= kMaxLaurentSpan) throw exponent_overflow("Laurent span cap");
    Laurent r;
    r.lo = a.lo + b.lo;
    r.c.assign(a.c.size() + b.c.size() - 1, R(0));
    for (int i = 0; i < (int)a.c.size(); ++i) {
      if (is_zero(a.c[i])) continue;
      for (int j = 0; j < (int)b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    r.normalize();
    return r;
  }
  Laurent& operator+=(const Laurent& o) { return *this = *this + o; }
  Laurent& operator-=(const Laurent& o) { return *this = *this - o; }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

  friend bool operator==(const Laurent& a, const Laurent& b) {
    return a.lo == b.lo && a.c == b.c;  // both normalized
  }

  Laurent scaled(const R& s) const {
    Laurent r;
    if (is_zero(s)) return r;
    r.lo = lo;
    r.c = c;
    for (auto& x : r.c) x = x * s;
    r.normalize();
    return r;
  }

  // x -> 1/x
  Laurent reversed() const {
    Laurent r;
    if (zero()) return r;
    r.lo = -deg_hi();
    r.c.assign(c.rbegin(), c.rend());
    return r;
  }

  Laurent derivative() const {  // d/dx
    Laurent r;
    for (int k = 0; k < (int)c.size(); ++k) r.add_term(c[k] * R(lo + k), lo + k - 1);
    return r;
  }

  // keep exponents e with keep(e)
  template <class Pred>
  Laurent filtered(Pred keep) const {
    Laurent r;
    for (int k = 0; k < (int)c.size(); ++k)
      if (keep(lo + k)) r.add_term(c[k], lo + k);
    return r;
  }

  template <class S>
  S eval(const S& x) const {  // x must be invertible if lo < 0
    if (zero()) return S(0);
    S r(0), xp(1);
    // Horner from the top, then multiply by x^lo.
    for (int k = (int)c.size() - 1; k >= 0; --k) r = r * x + S(c[k]);
    if (lo > 0) for (int i = 0; i < lo; ++i) r = r * x;
    if (lo < 0) { S xi = inv(x); for (int i = 0; i < -lo; ++i) r = r * xi; }
    return r;
  }
};

template <class R> inline bool is_zero(const Laurent<R>& a) { return a.zero(); }
template <class R> inline Laurent<R> halve(const Laurent<R>& a) {
  Laurent<R> r = a;
  for (auto& x : r.c) x = halve(x);
  return r;
}

using LX = Laurent<Rat>;

// convenience builders for x + 1 + 1/x style Laurent polynomials
inline LX lx_x(int e = 1) { return LX::term(Rat(1), e); }
inline LX lx_const(const Rat& q) { return LX(q); }

}  // namespace walks
