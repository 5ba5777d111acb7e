#pragma once
// Sparse bivariate Laurent polynomials over Q: used for step polynomials,
// kernels and orbit sums, which all have a handful of terms.

#include <map>
#include <utility>

#include "walks/ring.hpp"

namespace walks {

struct Laurent2 {
  // (i,j) -> coefficient of x^i y^j; absent = 0, stored values nonzero
  std::map<std::pair<int, int>, Rat> m;

  Laurent2() = default;
  Laurent2(int v) { if (v) m[{0, 0}] = v; }

  static Laurent2 term(const Rat& c, int i, int j) {
    Laurent2 r;
    if (!is_zero(c)) r.m[{i, j}] = c;
    return r;
  }

  void add_term(const Rat& c, int i, int j) {
    if (is_zero(c)) return;
    auto it = m.find({i, j});
    if (it == m.end()) m[{i, j}] = c;
    else {
      it->second += c;
      if (is_zero(it->second)) m.erase(it);
    }
  }

  Rat coeff(int i, int j) const {
    auto it = m.find({i, j});
    return it == m.end() ? Rat(0) : it->second;
  }

  friend Laurent2 operator+(const Laurent2& a, const Laurent2& b) {
    Laurent2 r = a;
    for (auto& [e, c] : b.m) r.add_term(c, e.first, e.second);
    return r;
  }
  friend Laurent2 operator-(const Laurent2& a, const Laurent2& b) {
    Laurent2 r = a;
    for (auto& [e, c] : b.m) r.add_term(-c, e.first, e.second);
    return r;
  }
  Laurent2 operator-() const {
    Laurent2 r;
    for (auto& [e, c] : m) r.m[e] = -c;
    return r;
  }
  friend Laurent2 operator*(const Laurent2& a, const Laurent2& b) {
    Laurent2 r;
    for (auto& [ea, ca] : a.m)
      for (auto& [eb, cb] : b.m)
        r.add_term(ca * cb, ea.first + eb.first, ea.second + eb.second);
    return r;
  }
  Laurent2& operator+=(const Laurent2& o) { return *this = *this + o; }
  Laurent2& operator-=(const Laurent2& o) { return *this = *this - o; }
  Laurent2& operator*=(const Laurent2& o) { return *this = *this * o; }
  friend bool operator==(const Laurent2& a, const Laurent2& b) { return a.m == b.m; }

  bool zero() const { return m.empty(); }

  // substitute x -> x^mxx y^mxy, y -> x^myx y^myy (monomial substitution)
  Laurent2 monomial_subst(int mxx, int mxy, int myx, int myy) const {
    Laurent2 r;
    for (auto& [e, c] : m)
      r.add_term(c, e.first * mxx + e.second * myx, e.first * mxy + e.second * myy);
    return r;
  }

  Laurent2 swapped_xy() const {
    Laurent2 r;
    for (auto& [e, c] : m) r.m[{e.second, e.first}] = c;
    return r;
  }
};

inline bool is_zero(const Laurent2& a) { return a.zero(); }

}  // namespace walks
