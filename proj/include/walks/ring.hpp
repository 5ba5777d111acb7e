#pragma once
// Coefficient rings for series / table arithmetic: exact rationals and integers
// (GMP), word-sized prime fields, and Q(zeta) with zeta^2 = -1 - zeta, i.e.
// zeta a primitive cube root of unity (1 + zeta + zeta^2 = 0).

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace walks {

using Int = mpz_class;
using Rat = mpq_class;

struct ring_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- word-sized prime field helpers ----------------------------------------

inline uint64_t add_mod(uint64_t a, uint64_t b, uint64_t p) {
  uint64_t s = a + b;            // p < 2^62 so no overflow
  return s >= p ? s - p : s;
}
inline uint64_t sub_mod(uint64_t a, uint64_t b, uint64_t p) {
  return a >= b ? a - b : a + p - b;
}
inline uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t p) {
  return (uint64_t)((unsigned __int128)a * b % p);
}
inline uint64_t pow_mod(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1 % p;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}
inline uint64_t inv_mod(uint64_t a, uint64_t p) {
  if (a % p == 0) throw ring_error("inv_mod: zero");
  return pow_mod(a % p, p - 2, p);  // p prime
}

// Element of F_p with the modulus carried along.  A default-constructed value
// is a "detached" zero/small integer (p == 0) that adopts the modulus of the
// other operand; this lets generic series code create zeros and ones.
struct Mod {
  uint64_t v = 0;
  uint64_t p = 0;  // 0 = detached plain integer (kept tiny)

  Mod() = default;
  Mod(long x) : v(x >= 0 ? (uint64_t)x : (uint64_t)(-x)), p(0) { neg_ = x < 0; }
  Mod(int x) : Mod((long)x) {}
  Mod(uint64_t value, uint64_t prime) : p(prime) {
    v = value % prime;
    }
  bool neg_ = false;  // sign of a detached integer

  uint64_t attach(uint64_t prime) const {
    if (p) return v;
    uint64_t r = v % prime;
    return neg_ && r ? prime - r : r;
  }
  friend Mod operator+(const Mod& a, const Mod& b) {
    uint64_t q = a.p ? a.p : b.p;
    if (!q) { long s = a.sval() + b.sval(); return Mod(s); }
    return Mod(add_mod(a.attach(q), b.attach(q), q), q);
  }
  friend Mod operator-(const Mod& a, const Mod& b) {
    uint64_t q = a.p ? a.p : b.p;
    if (!q) { long s = a.sval() - b.sval(); return Mod(s); }
    return Mod(sub_mod(a.attach(q), b.attach(q), q), q);
  }
  friend Mod operator*(const Mod& a, const Mod& b) {
    uint64_t q = a.p ? a.p : b.p;
    if (!q) { long s = a.sval() * b.sval(); return Mod(s); }
    return Mod(mul_mod(a.attach(q), b.attach(q), q), q);
  }
  Mod operator-() const {
    if (!p) { Mod r = *this; r.neg_ = !r.neg_; return r; }
    return Mod(v ? p - v : 0, p);
  }
  friend bool operator==(const Mod& a, const Mod& b) {
    uint64_t q = a.p ? a.p : b.p;
    if (!q) return a.sval() == b.sval();
    return a.attach(q) == b.attach(q);
  }
  long sval() const { return neg_ ? -(long)v : (long)v; }
  Mod& operator+=(const Mod& o) { return *this = *this + o; }
  Mod& operator-=(const Mod& o) { return *this = *this - o; }
  Mod& operator*=(const Mod& o) { return *this = *this * o; }
};

inline Mod inv(const Mod& a) {
  if (!a.p) throw ring_error("Mod inv: detached value");
  return Mod(inv_mod(a.v, a.p), a.p);
}
inline Mod halve(const Mod& a) { return a * inv(Mod(2, a.p ? a.p : 0)); }

// ---- Q(zeta), zeta^2 = -1 - zeta -------------------------------------------
// zeta = exp(2 i pi / 3); conj(zeta) = zeta^2 = -1-zeta; i*sqrt(3) = 1+2 zeta.
struct Zeta {
  Rat a, b;  // a + b*zeta
  Zeta() : a(0), b(0) {}
  Zeta(int x) : a(x), b(0) {}
  Zeta(long x) : a(x), b(0) {}
  Zeta(const Rat& x) : a(x), b(0) {}
  Zeta(Rat x, Rat y) : a(std::move(x)), b(std::move(y)) {}

  friend Zeta operator+(const Zeta& u, const Zeta& v) { return {u.a + v.a, u.b + v.b}; }
  friend Zeta operator-(const Zeta& u, const Zeta& v) { return {u.a - v.a, u.b - v.b}; }
  Zeta operator-() const { return {-a, -b}; }
  friend Zeta operator*(const Zeta& u, const Zeta& v) {
    // (a+b z)(c+d z), z^2 = -1-z
    Rat bd = u.b * v.b;
    return {u.a * v.a - bd, u.a * v.b + u.b * v.a - bd};
  }
  friend bool operator==(const Zeta& u, const Zeta& v) { return u.a == v.a && u.b == v.b; }
  Zeta& operator+=(const Zeta& o) { return *this = *this + o; }
  Zeta& operator-=(const Zeta& o) { return *this = *this - o; }
  Zeta& operator*=(const Zeta& o) { return *this = *this * o; }
};

inline Zeta conj(const Zeta& u) { return {u.a - u.b, -u.b}; }  // zeta -> -1-zeta
inline Zeta inv(const Zeta& u) {
  Rat n = u.a * u.a - u.a * u.b + u.b * u.b;  // (a+bz)(a-b-bz)
  if (n == 0) throw ring_error("Zeta inv: zero");
  return {(u.a - u.b) / n, -u.b / n};
}
inline Zeta halve(const Zeta& u) { return {u.a / 2, u.b / 2}; }

// A value a + b*zeta equals (a - b/2) + i sqrt(3) * (b/2).
inline Rat real_unit_part(const Zeta& u) { return u.a - u.b / 2; }   // coeff of 1
inline Rat imag_sqrt3_part(const Zeta& u) { return u.b / 2; }        // coeff of i*sqrt(3)

// ---- generic hooks ----------------------------------------------------------

template <class R> inline bool is_zero(const R& x) { return x == R(0); }
inline bool is_zero(const Rat& x) { return sgn(x) == 0; }
inline bool is_zero(const Int& x) { return sgn(x) == 0; }
inline bool is_zero(const Zeta& x) { return is_zero(x.a) && is_zero(x.b); }

inline Rat inv(const Rat& x) {
  if (is_zero(x)) throw ring_error("Rat inv: zero");
  return 1 / x;
}
inline Rat halve(const Rat& x) { return x / 2; }

// mpq_class(p, q) does not reduce; gmpxx arithmetic and comparison require
// canonical operands, so fractions must be built through this helper.
inline Rat ratio(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat rat_of_string(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw ring_error("bad rational literal: " + s);
  r.canonicalize();
  return r;
}
inline std::string to_string(const Rat& x) { return x.get_str(); }

}  // namespace walks
