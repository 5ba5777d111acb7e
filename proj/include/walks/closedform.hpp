#pragma once
// Algebraic closed forms for the king model in the three-quadrant cone: a
// tower of auxiliary series (u, v, w, wt) defined by small polynomial
// equations, and explicit rational expressions in them for the boundary and
// corner counting series.  The tower is templated over the coefficient ring so
// the same expressions can be expanded exactly over Q or over a prime field
// (the latter is used to generate long test sequences cheaply).

#include <utility>
#include <vector>

#include "walks/series.hpp"

namespace walks {

// Carries the ring's attached unit so generic code can lift integer constants
// (for Mod the unit fixes the modulus; for Rat this is just 1).
template <class R>
struct RingCtx {
  R one = R(1);
  R lift(long n) const { return one * R(n); }
  Series<R> t(int ord) const { return Series<R>::t_power(1, ord, one); }
  Series<R> constant(int ord, long n) const { return Series<R>(ord, lift(n)); }
  // integer polynomial in f, coefficients ascending
  Series<R> at(const Series<R>& f, const std::vector<long>& asc) const {
    Series<R> r(f.order);
    for (int i = (int)asc.size() - 1; i >= 0; --i) r = r * f + constant(f.order, asc[i]);
    return r;
  }
};

// u is the unique power-series root with u = t + O(t^2) of
//   (1-3u)^3 (1+u) t^2 + (1+18u^2-27u^4) t - u = 0.
template <class R>
Series<R> series_u(int ord, const RingCtx<R>& k) {
  Series<R> t = k.t(ord);
  Series<R> t2 = t * t;
  SeriesPoly<R> P;
  P.coef = {t + t2,
            t2.scaled(k.lift(-8)) - k.constant(ord, 1),
            (t + t2).scaled(k.lift(18)),
            Series<R>(ord),
            (t + t2).scaled(k.lift(-27))};
  return newton_solve(P, t, ord);
}

// v is the power-series root with v(0) = 0 of (1+3v-v^3) u = v (v^2+v+1),
// i.e. u + (3u-1) v - v^2 - (u+1) v^3 = 0; it satisfies v = t + 3t^2 + O(t^3).
template <class R>
Series<R> series_v(const Series<R>& u, const RingCtx<R>& k) {
  int ord = u.order;
  SeriesPoly<R> P;
  P.coef = {u, u.scaled(k.lift(3)) - k.constant(ord, 1), -k.constant(ord, 1),
            -(u + k.constant(ord, 1))};
  return newton_solve(P, k.t(ord), ord);
}

// w = sqrt(1 + 4v - 4v^3 - 4v^4), the branch with w = 1 + 2t + 4t^2 + O(t^3).
template <class R>
Series<R> series_w(const Series<R>& v, const RingCtx<R>& k) {
  return sqrt1(k.at(v, {1, 4, 0, -4, -4}));
}

// wt is the root with wt = 1/2 + O(t) of the quadratic
//   wt^2 + (2v+1)/(3(2v^3-4v-1)) wt
//       + n2 / (12 w^2 (1-2t)(2v^3+3v^2+6v+1)^2 (2v^3-4v-1)^2 (4v^3+3v^2-1)) = 0
// with n2 an explicit polynomial, linear in t.  It gives the boundary series
// S(1) = w*wt - 1/2.
template <class R>
Series<R> series_wtilde(const Series<R>& v, const Series<R>& w, const RingCtx<R>& k) {
  int ord = v.order;
  Series<R> t = k.t(ord);
  Series<R> one = k.constant(ord, 1);
  Series<R> q234 = k.at(v, {-1, -4, 0, 2});   // 2v^3 - 4v - 1
  Series<R> q431 = k.at(v, {-1, 0, 3, 4});    // 4v^3 + 3v^2 - 1
  Series<R> q236 = k.at(v, {1, 6, 3, 2});     // 2v^3 + 3v^2 + 6v + 1
  Series<R> n2 =
      q431 * k.at(v, {-7, -108, -682, -2300, -4495, -4756, -832, 4652, 6896, 5136, 2336, 576, 64}) *
          t.scaled(k.lift(2)) +
      k.at(v, {1, 4, -45, -220, 559, 5096, 11309, 10500, 2088, -5476, -6808, -4560, -2624, -1312,
               -608, -128});
  Series<R> b = k.at(v, {1, 2}) * inverse(q234.scaled(k.lift(3)));
  Series<R> den = (w * w * (one - t.scaled(k.lift(2))) * q236 * q236 * q234 * q234 * q431)
                      .scaled(k.lift(12));
  Series<R> c = n2 * inverse(den);
  SeriesPoly<R> P;
  P.coef = {c, b, one};
  return newton_solve(P, Series<R>(ord, halve(k.one)), ord);
}

// The four unknown scalars of the one-catalytic-variable system, in closed
// form over Q(t, v, w).
template <class R>
struct CatalyticScalars {
  Series<R> r0, r1, b1, b2;
};

template <class R>
CatalyticScalars<R> closed_scalars(const Series<R>& v, const Series<R>& w, const RingCtx<R>& k) {
  int ord = v.order;
  Series<R> t = k.t(ord);
  Series<R> one = k.constant(ord, 1);
  R half = halve(k.one);
  Series<R> p12 = k.at(v, {1, 2});            // 1 + 2v
  Series<R> q142 = k.at(v, {1, 4, 0, -2});    // 1 + 4v - 2v^3
  Series<R> q4831 = k.at(v, {1, 2, 6, 8, 1});  // v^4 + 8v^3 + 6v^2 + 2v + 1

  CatalyticScalars<R> s;
  s.r0 = (t * (w * p12 * inverse(q142) - one)).scaled(half);
  s.r1 = (one + t.scaled(k.lift(2)) +
          (one - t.scaled(k.lift(2))) * p12 * k.at(v, {-1, -10, -30, -24, 7, 24, 16}) *
              inverse(w * q4831 * q142))
             .scaled(inv(k.lift(6)));
  s.b1 = k.at(v, {0, 0, 3}) * (one - t.scaled(k.lift(8))) * k.at(v, {1, 4, 1}) *
         k.at(v, {-1, 0, 1}) * p12 *
         inverse((k.at(v, {1, 0, -3, -4}) * k.at(v, {1, 0, -3, -4}) * k.at(v, {1, 0, -3, -4}) *
                  q142).scaled(k.lift(2)));
  // numerator of B2: polynomial in v with coefficients linear in t
  static const std::vector<std::pair<long, long>> ab = {
      {0, -2},  {2, -24},  {19, -126}, {68, -388}, {113, -738}, {66, -788}, {-41, -286},
      {-80, 488}, {-25, 960}, {24, 804}, {16, 352}, {0, 68},   {0, 4}};
  Series<R> n(ord);
  for (int i = (int)ab.size() - 1; i >= 0; --i)
    n = n * v + k.constant(ord, ab[i].first) + t.scaled(k.lift(ab[i].second));
  s.b2 = p12 * (one - t.scaled(k.lift(2))) * n *
         inverse((w * q4831 * q4831 * k.at(v, {-1, -4, 0, 2})).scaled(k.lift(2)));
  return s;
}

// The variant model in which the two diagonal transitions across the corner
// are allowed has a different corner series; its closed form is
//   R0 = v(1-2t)/(2(v^4+8v^3+6v^2+2v+1)) * (1 + 2v + (2v^3-4v-1)/w).
// (Derived by fitting the enumerated series to an a(v)+b(v)/w ansatz and
// certified against the variant catalytic cubic; see the tests.)
template <class R>
Series<R> closed_variant_r0(const Series<R>& v, const Series<R>& w, const RingCtx<R>& k) {
  int ord = v.order;
  Series<R> t = k.t(ord);
  Series<R> one = k.constant(ord, 1);
  return v * (one - t.scaled(k.lift(2))) * inverse(k.at(v, {1, 2, 6, 8, 1})) *
         (one + v.scaled(k.lift(2)) + k.at(v, {-1, -4, 0, 2}) * inverse(w)).scaled(halve(k.one));
}

// ---- rational-coefficient front end (Q only) --------------------------------

// Everything univariate in one bundle, expanded to the requested order.
struct KingClosedForms {
  SQ u, v, w, wt;           // the tower
  SQ r0, r1, b1, b2;        // scalars of the catalytic system
  SQ m00, m10, a00;         // M_{0,0} = R0/t^2, M_{1,0} = R1/t^2, A_{0,0} = 2 R1/t^2
  SQ r_at_1;                // R(1) = t^2 M(1,0)
  SQ s_at_1;                // S(1) = t M(0,1) = w*wt - 1/2
  SQ a11;                   // A(1,1)
  SQ r0_variant;            // corner series of the variant edge rule
};
KingClosedForms king_closed_forms(int ord);

// U1(x0): the unique root with U1 = x0 t^2 + O(t^3) of the cubic obtained by
// clearing denominators in the parametrization yt = kappa N(U1) / (U1 N(r1/U1)),
// where yt = t(x0+1+1/x0)/(1-2t).
SQ u1_series(const Rat& x0, int ord);

// U0(x0) = (1-v^2)/w^2 (U1 + v^2 w^2 + r1/U1) = t/x0 + O(t^2), the companion
// parametrization variable (invariant under U1 -> r1/U1).
SQ u0_series(const Rat& x0, int ord);

// The symmetrized boundary series St(x) = ((x+1+1/x) S(x) - R0/t + 2x/3 + 1/(3x))
// / (x - 1/x), evaluated at a rational x0 via the U1 parametrization:
//   St(x0) + 1/3 = -v^2 w^2 (1+2v)(v^2+4v+1)^2 / ((2v^3-4v-1) D(U1) D(r1/U1)).
SQ closed_stilde_at(const Rat& x0, int ord);
// Same series via the U0 parametrization (independent route, for cross-checks).
SQ closed_stilde_at_alt(const Rat& x0, int ord);

// Numeric witness that the tower has 24 distinct branches: at t = 1/100,
// count the distinct complex triples (u, v, w) over all branch choices.
int distinct_tower_branches();

struct singular_evaluation_point : ring_error {
  using ring_error::ring_error;
};

// named access used by the CLI: names u, v, w, wt, r0, r1, b1, b2, m00, m10,
// a00, r1(1) ... see implementation for the list
SQ named_closed_series(const std::string& name, int ord, const Rat& x0 = Rat(2));
const std::vector<std::string>& named_closed_series_list();

}  // namespace walks
