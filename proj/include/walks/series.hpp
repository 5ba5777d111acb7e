#pragma once
// Truncated power series in t over a pluggable coefficient ring R.
// A Series with order N represents a power series known modulo t^(N+1).

#include <functional>
#include <vector>

#include "walks/laurent.hpp"
#include "walks/ring.hpp"

namespace walks {

struct no_formal_solution : ring_error {
  using ring_error::ring_error;
};

template <class R>
struct Series {
  int order = 0;
  std::vector<R> c;  // size order+1

  Series() : c(1, R(0)) {}
  explicit Series(int ord) : order(ord), c(ord + 1, R(0)) {}
  Series(int ord, const R& constant) : order(ord), c(ord + 1, R(0)) { c[0] = constant; }

  static Series t_power(int k, int ord, const R& coeff = R(1)) {
    Series s(ord);
    if (k <= ord) s.c[k] = coeff;
    return s;
  }

  const R& coeff(int n) const { return c[n]; }
  R coeff_or_zero(int n) const { return n <= order ? c[n] : R(0); }

  Series truncated(int ord) const {
    Series r(ord);
    for (int n = 0; n <= ord && n <= order; ++n) r.c[n] = c[n];
    return r;
  }

  // first index with nonzero coefficient; order+1 when zero to known order
  int valuation() const {
    for (int n = 0; n <= order; ++n)
      if (!is_zero(c[n])) return n;
    return order + 1;
  }
  bool zero_to_order() const { return valuation() > order; }

  friend Series operator+(const Series& a, const Series& b) {
    Series r(std::min(a.order, b.order));
    for (int n = 0; n <= r.order; ++n) r.c[n] = a.c[n] + b.c[n];
    return r;
  }
  friend Series operator-(const Series& a, const Series& b) {
    Series r(std::min(a.order, b.order));
    for (int n = 0; n <= r.order; ++n) r.c[n] = a.c[n] - b.c[n];
    return r;
  }
  Series operator-() const {
    Series r = *this;
    for (auto& x : r.c) x = -x;
    return r;
  }
  friend Series operator*(const Series& a, const Series& b) {
    Series r(std::min(a.order, b.order));
    for (int i = 0; i <= r.order; ++i) {
      if (is_zero(a.c[i])) continue;
      for (int j = 0; i + j <= r.order; ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    return r;
  }
  Series& operator+=(const Series& o) { return *this = *this + o; }
  Series& operator-=(const Series& o) { return *this = *this - o; }
  Series& operator*=(const Series& o) { return *this = *this * o; }

  Series scaled(const R& s) const {
    Series r = *this;
    for (auto& x : r.c) x = x * s;
    return r;
  }

  // multiply by t^k (order grows: t^k F is known mod t^(order+k+1))
  Series shifted_up(int k) const {
    Series r(order + k);
    for (int n = 0; n <= order; ++n) r.c[n + k] = c[n];
    return r;
  }
  // exact division by t^k
  Series shifted_down(int k) const {
    for (int n = 0; n < k && n <= order; ++n)
      if (!is_zero(c[n])) throw no_formal_solution("shifted_down: not divisible by t^k");
    Series r(order - k);
    for (int n = 0; n <= r.order; ++n) r.c[n] = c[n + k];
    return r;
  }

  Series derivative() const {  // d/dt
    if (order == 0) return Series(0);
    Series r(order - 1);
    for (int n = 1; n <= order; ++n) r.c[n - 1] = c[n] * R(n);
    return r;
  }
};

// 1/a with invertible constant term.
template <class R>
Series<R> inverse(const Series<R>& a) {
  Series<R> r(a.order);
  R c0i = inv(a.c[0]);
  r.c[0] = c0i;
  for (int n = 1; n <= a.order; ++n) {
    R acc(0);
    for (int k = 1; k <= n; ++k) acc += a.c[k] * r.c[n - k];
    r.c[n] = -(c0i * acc);
  }
  return r;
}

// a/b after stripping the common power of t; requires val(a) >= val(b).
template <class R>
Series<R> divide(const Series<R>& a, const Series<R>& b) {
  int v = b.valuation();
  if (v > b.order) throw no_formal_solution("divide: zero divisor (to known order)");
  if (v == 0) return a * inverse(b);
  if (a.valuation() < v) throw no_formal_solution("divide: valuation mismatch");
  return a.truncated(std::min(a.order, b.order)).shifted_down(v) * inverse(b.shifted_down(v));
}

// square root with constant term one
template <class R>
Series<R> sqrt1(const Series<R>& a) {
  if (!(a.c[0] == R(1))) throw no_formal_solution("sqrt1: constant term is not 1");
  Series<R> g(a.order);
  g.c[0] = R(1);
  for (int n = 1; n <= a.order; ++n) {
    R acc = a.c[n];
    for (int k = 1; k < n; ++k) acc -= g.c[k] * g.c[n - k];
    g.c[n] = halve(acc);
  }
  return g;
}

template <class R, class S, class F>
Series<S> map_coeffs(const Series<R>& a, F f) {
  Series<S> r(a.order);
  for (int n = 0; n <= a.order; ++n) r.c[n] = f(a.c[n]);
  return r;
}

// ---- polynomials P(t, F) = sum_j coef[j](t) F^j -----------------------------

template <class R>
struct SeriesPoly {
  std::vector<Series<R>> coef;  // coef[j] multiplies F^j

  Series<R> eval(const Series<R>& f) const {
    for (auto& s : coef)
      if (s.order < f.order) throw ring_error("SeriesPoly: coefficient order too low");
    Series<R> r = coef.back().truncated(f.order);
    for (int j = (int)coef.size() - 2; j >= 0; --j) r = r * f + coef[j].truncated(f.order);
    return r;
  }
  SeriesPoly derivative() const {  // d/dF
    SeriesPoly d;
    for (int j = 1; j < (int)coef.size(); ++j) d.coef.push_back(coef[j].scaled(R(j)));
    if (d.coef.empty()) d.coef.push_back(Series<R>(coef[0].order));
    return d;
  }
};

// Newton iteration for P(t, F) = 0 from an explicit seed (the seed selects the
// branch; it must match the solution through at least the valuation of P'(F)).
// Valuation-aware: P'(F) may vanish to some order nu > 0 at the solution, in
// which case each residual must be divisible by t^nu.  The residual valuation
// must strictly increase every step, otherwise there is no formal solution on
// this branch.
template <class R>
Series<R> newton_solve(const SeriesPoly<R>& p, const Series<R>& seed, int ord) {
  Series<R> f = seed.truncated(ord);
  SeriesPoly<R> dp = p.derivative();
  int last_val = -1;
  for (int iter = 0; iter < 4 * (ord + 2); ++iter) {
    Series<R> res = p.eval(f);
    int v = res.valuation();
    if (v > ord) return f;
    if (v <= last_val) throw no_formal_solution("newton_solve: residual stalled");
    last_val = v;
    Series<R> der = dp.eval(f);
    int nu = der.valuation();
    if (nu > der.order || v < nu)
      throw no_formal_solution("newton_solve: residual not divisible by P'(F)");
    Series<R> corr = res.shifted_down(nu) * inverse(der.shifted_down(nu));
    f = f - corr.truncated(ord);
  }
  throw no_formal_solution("newton_solve: did not converge");
}

// ---- series whose coefficients are Laurent polynomials in x ------------------

using SLX = Series<LX>;
using SQ = Series<Rat>;
using SZ = Series<Zeta>;

inline SLX keep_exponents(const SLX& f, const std::function<bool(int)>& pred) {
  return map_coeffs<LX, LX>(f, [&](const LX& l) { return l.filtered(pred); });
}
inline SQ coeff_of_x(const SLX& f, int e) {
  return map_coeffs<LX, Rat>(f, [&](const LX& l) { return l.coeff(e); });
}
inline SLX subst_x_inverse(const SLX& f) {
  return map_coeffs<LX, LX>(f, [](const LX& l) { return l.reversed(); });
}
inline SQ eval_at_rat(const SLX& f, const Rat& x0) {
  return map_coeffs<LX, Rat>(f, [&](const LX& l) { return l.template eval<Rat>(x0); });
}
inline SZ eval_at_zeta(const SLX& f) {
  Zeta z(Rat(0), Rat(1));
  return map_coeffs<LX, Zeta>(f, [&](const LX& l) { return l.template eval<Zeta>(z); });
}
inline SLX dx(const SLX& f) {
  return map_coeffs<LX, LX>(f, [](const LX& l) { return l.derivative(); });
}
inline SQ real_part(const SZ& f) {  // requires every coefficient real
  return map_coeffs<Zeta, Rat>(f, [](const Zeta& z) {
    if (!is_zero(z.b)) throw ring_error("real_part: nonreal coefficient");
    return z.a;
  });
}

// Non-negative part in x of F(1/x)/(1+x+x^2)^power, expressed through the
// values of F at the primitive cubic roots of unity (and F' for power 2),
// expanded to x-degree xdeg.  Valid for F in x^-1 C[x]((t)) (power 1) and
// x^-3 C[x]((t)) (power 2).
inline SLX pospole_extract(const SLX& f, int power, int xdeg) {
  int min_lo = power == 1 ? -1 : -3;
  for (int n = 0; n <= f.order; ++n)
    if (!f.c[n].zero() && f.c[n].deg_lo() < min_lo)
      throw ring_error("pospole_extract: input valuation in x too low");
  Zeta z(Rat(0), Rat(1)), zb = conj(z);
  SZ A = eval_at_zeta(f);
  SZ B = map_coeffs<LX, Zeta>(f, [&](const LX& l) { return l.template eval<Zeta>(zb); });
  Zeta u = inv(Zeta(1) - z), ub = inv(Zeta(1) - zb);
  SLX out(f.order);
  if (power == 1) {
    // [x^n] = A/(1-z) z^n + B/(1-zb) zb^n
    Zeta zn(1), zbn(1);
    for (int n = 0; n <= xdeg; ++n) {
      SZ cn = A.scaled(u * zn) + B.scaled(ub * zbn);
      SQ re = real_part(cn);
      for (int m = 0; m <= out.order; ++m) out.c[m].add_term(re.c[m], n);
      zn = zn * z;
      zbn = zbn * zb;
    }
    return out;
  }
  if (power != 2) throw ring_error("pospole_extract: power must be 1 or 2");
  SLX fp = dx(f);
  SZ Ap = eval_at_zeta(fp), Bp = map_coeffs<LX, Zeta>(fp, [&](const LX& l) { return l.template eval<Zeta>(zb); });
  Zeta u2 = u * u, ub2 = ub * ub;
  Rat twothirds(2, 3);
  Zeta zn(1), zbn(1);
  for (int n = 0; n <= xdeg; ++n) {
    SZ cn = (A.scaled(u * zn) + B.scaled(ub * zbn)).scaled(Zeta(twothirds));
    cn += Ap.scaled(u2 * z * zn) + A.scaled(u2 * zn * Zeta(Rat(n + 1)));
    cn += Bp.scaled(ub2 * zb * zbn) + B.scaled(ub2 * zbn * Zeta(Rat(n + 1)));
    SQ re = real_part(cn);
    for (int m = 0; m <= out.order; ++m) out.c[m].add_term(re.c[m], n);
    zn = zn * z;
    zbn = zbn * zb;
  }
  return out;
}

}  // namespace walks
