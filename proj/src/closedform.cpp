#include "walks/closedform.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <map>

namespace walks {

namespace {
const RingCtx<Rat> K;

// tower with some working slack; callers truncate down to the requested order
struct Tower {
  SQ t, one, u, v, w;
  explicit Tower(int ord)
      : t(K.t(ord)),
        one(K.constant(ord, 1)),
        u(series_u(ord, K)),
        v(series_v(u, K)),
        w(series_w(v, K)) {}
};

// building blocks shared by the U1 parametrization formulas
struct Param {
  SQ yt, kappa, r1, v2w2, big;  // big = v^4 w^2 (v^2-1)(v^2+v+1)
  Param(const Tower& tw, const Rat& x0) {
    if (is_zero(x0) || x0 == Rat(1) || x0 == Rat(-1) || is_zero(Rat(1 + x0 + x0 * x0)))
      throw singular_evaluation_point("parametrization point must avoid 0, 1, -1 and 1+x+x^2=0");
    const SQ &v = tw.v, &w = tw.w;
    SQ w2 = w * w;
    SQ v2 = v * v;
    yt = tw.t.scaled(x0 + 1 + inv(x0)) * inverse(tw.one - tw.t.scaled(Rat(2)));
    kappa = v2 * K.at(v, {1, 1, 1}) * K.at(v, {-1, -3, 0, 1}) * K.at(v, {-1, -3, 0, 1}) *
            inverse(K.at(v, {1, 2, 6, 8, 1}));
    r1 = -(v2 * v * w2 * K.at(v, {1, 1, 1}) * K.at(v, {-1, -3, 0, 1}));
    v2w2 = v2 * w2;
    big = v2 * v2 * w2 * K.at(v, {-1, 0, 1}) * K.at(v, {1, 1, 1});
  }
};

SQ u1_at(const Tower& tw, const Param& pm, const Rat& x0) {
  int ord = tw.t.order;
  // cleared form of the parametrization: yt U M(U) - kappa r1 N(U) = 0 with
  // N(U) = U^2 + v^2w^2 U - big and M(U) = r1^2 + v^2w^2 r1 U - big U^2
  SeriesPoly<Rat> P;
  P.coef = {pm.kappa * pm.r1 * pm.big,
            pm.yt * pm.r1 * pm.r1 - pm.kappa * pm.r1 * pm.v2w2,
            pm.yt * pm.v2w2 * pm.r1 - pm.kappa * pm.r1,
            -(pm.yt * pm.big)};
  return newton_solve(P, SQ::t_power(2, ord, x0), ord);
}

SQ u0_at(const Tower& tw, const Param& pm, const SQ& u1) {
  const SQ& v = tw.v;
  SQ w2 = tw.w * tw.w;
  return K.at(v, {1, 0, -1}) * inverse(w2) * (u1 + pm.v2w2 + divide(pm.r1, u1));
}
}  // namespace

KingClosedForms king_closed_forms(int ord) {
  int ox = ord + 4;
  Tower tw(ox);
  const SQ &t = tw.t, &one = tw.one, &v = tw.v, &w = tw.w;

  KingClosedForms f;
  f.u = tw.u.truncated(ord);
  f.v = v.truncated(ord);
  f.w = w.truncated(ord);
  SQ wt = series_wtilde(v, w, K);
  f.wt = wt.truncated(ord);

  CatalyticScalars<Rat> sc = closed_scalars(v, w, K);
  f.r0 = sc.r0.truncated(ord);
  f.r1 = sc.r1.truncated(ord);
  f.b1 = sc.b1.truncated(ord);
  f.b2 = sc.b2.truncated(ord);
  f.m00 = sc.r0.shifted_down(2).truncated(ord);
  f.m10 = sc.r1.shifted_down(2).truncated(ord);
  f.a00 = f.m10.scaled(Rat(2));
  f.r0_variant = closed_variant_r0(v, w, K).truncated(ord);

  SQ q234 = K.at(v, {-1, -4, 0, 2});   // 2v^3 - 4v - 1
  SQ q431 = K.at(v, {-1, 0, 3, 4});    // 4v^3 + 3v^2 - 1
  SQ q236 = K.at(v, {1, 6, 3, 2});     // 2v^3 + 3v^2 + 6v + 1
  SQ q4831 = K.at(v, {1, 2, 6, 8, 1});  // v^4 + 8v^3 + 6v^2 + 2v + 1

  // R(1) + t/3 = -n / (3 w (2v^3-4v-1)(v^4+8v^3+6v^2+2v+1)(2v^3+3v^2+6v+1))
  SQ n = v * K.at(v, {1, 1}) * K.at(v, {1, 5, 4, 2}) * K.at(v, {2, 11, 12, -6, -8, 3, 4}) +
         K.at(v, {-1, -14, -87, -298, -553, -464, 3, 384, 446, 272, 96}) * t;
  f.r_at_1 = ((n * inverse(w * q234 * q4831 * q236)).scaled(ratio(-1, 3)) -
              t.scaled(ratio(1, 3)))
                 .truncated(ord);

  f.s_at_1 = (w * wt - one.scaled(ratio(1, 2))).truncated(ord);

  // A(1,1) + 1/(3t) = -w n' / (3t (1-2t)(4v^3+3v^2-1)^2 (2v^3-4v-1)(2v^3+3v^2+6v+1))
  SQ np = K.at(v, {1, 4, 3, 4}) * q431 * q431 * t.scaled(Rat(2)) +
          K.at(v, {1, 1}) * K.at(v, {1, 7, 24, 68, 61, 3, 86, 94, 72, 16});
  SQ X = (w * np * inverse((one - t.scaled(Rat(2))) * q431 * q431 * q234 * q236))
             .scaled(ratio(-1, 3));
  f.a11 = (X - one.scaled(ratio(1, 3))).shifted_down(1).truncated(ord);
  return f;
}

SQ u1_series(const Rat& x0, int ord) {
  // the derivative of the cleared cubic vanishes to order 7 at the root, so
  // the top coefficients of a Newton solution are not certified; add slack
  int ox = ord + 8;
  Tower tw(ox);
  Param pm(tw, x0);
  return u1_at(tw, pm, x0).truncated(ord);
}

SQ u0_series(const Rat& x0, int ord) {
  int ox = ord + 10;
  Tower tw(ox);
  Param pm(tw, x0);
  return u0_at(tw, pm, u1_at(tw, pm, x0)).truncated(ord);
}

SQ closed_stilde_at(const Rat& x0, int ord) {
  int ox = ord + 14;
  Tower tw(ox);
  const SQ &v = tw.v, &w = tw.w;
  Param pm(tw, x0);
  SQ u1 = u1_at(tw, pm, x0);
  SQ w2 = w * w;
  SQ vw2v21 = v * w2 * K.at(v, {-1, 0, 1});  // v w^2 (v^2-1)
  SQ f1 = K.at(v, {1, 1}) * u1 * u1 + vw2v21 * u1 + K.at(v, {-1, 1}) * pm.r1;
  SQ f2 = K.at(v, {1, 1}) * pm.r1 + vw2v21 * u1 + K.at(v, {-1, 1}) * u1 * u1;
  SQ num = -(v * v * w2 * K.at(v, {1, 2}) * K.at(v, {1, 4, 1}) * K.at(v, {1, 4, 1}) * u1 * u1);
  SQ den = K.at(v, {-1, -4, 0, 2}) * f1 * f2;
  return (divide(num, den) - tw.one.scaled(ratio(1, 3))).truncated(ord);
}

SQ closed_stilde_at_alt(const Rat& x0, int ord) {
  int ox = ord + 14;
  Tower tw(ox);
  const SQ &v = tw.v, &w = tw.w;
  Param pm(tw, x0);
  SQ u0 = u0_at(tw, pm, u1_at(tw, pm, x0));
  SQ w2 = w * w;
  SQ corefac = v * v * K.at(v, {-1, 0, 1}) * K.at(v, {1, 2});  // v^2 (v^2-1)(2v+1)
  SQ num = -(corefac * K.at(v, {1, 4, 1}) * K.at(v, {1, 4, 1}));
  SQ den = K.at(v, {-1, -4, 0, 2}) * (w2 * u0 * u0 + corefac * K.at(v, {1, 6, 3, 2}));
  return (divide(num, den) - tw.one.scaled(ratio(1, 3))).truncated(ord);
}

// ---- numeric branch count ----------------------------------------------------

namespace {
using C = std::complex<double>;

// Durand-Kerner roots of a polynomial given by ascending coefficients
std::vector<C> all_roots(std::vector<C> a) {
  while (!a.empty() && std::abs(a.back()) < 1e-14) a.pop_back();
  int n = (int)a.size() - 1;
  for (auto& c : a) c /= a[n];
  auto eval = [&](C z) {
    C r = 0;
    for (int i = n; i >= 0; --i) r = r * z + a[i];
    return r;
  };
  std::vector<C> z(n);
  C seed(0.4, 0.9);
  C p = 1;
  for (int i = 0; i < n; ++i, p *= seed) z[i] = p * seed;
  for (int it = 0; it < 500; ++it) {
    double moved = 0;
    for (int i = 0; i < n; ++i) {
      C d = 1;
      for (int j = 0; j < n; ++j)
        if (j != i) d *= z[i] - z[j];
      C step = eval(z[i]) / d;
      z[i] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-13) break;
  }
  return z;
}
}  // namespace

int distinct_tower_branches() {
  double t = 0.01;
  // quartic for u, cubic for v over each u, two square roots of w^2 over each v
  std::vector<C> us =
      all_roots({C(t * t + t), C(-1 - 8 * t * t), C(18 * (t * t + t)), C(0), C(-27 * (t * t + t))});
  std::vector<std::array<C, 3>> triples;
  for (C u : us) {
    std::vector<C> vs = all_roots({u, 3.0 * u - 1.0, C(-1), -(u + 1.0)});
    for (C v : vs) {
      C w2 = 1.0 + 4.0 * v - 4.0 * v * v * v - 4.0 * v * v * v * v;
      C w = std::sqrt(w2);
      triples.push_back({u, v, w});
      triples.push_back({u, v, -w});
    }
  }
  int distinct = 0;
  for (size_t i = 0; i < triples.size(); ++i) {
    bool dup = false;
    for (size_t j = 0; j < i && !dup; ++j) {
      double d = std::abs(triples[i][0] - triples[j][0]) + std::abs(triples[i][1] - triples[j][1]) +
                 std::abs(triples[i][2] - triples[j][2]);
      dup = d < 1e-7;
    }
    distinct += !dup;
  }
  return distinct;
}

// ---- named access ------------------------------------------------------------

const std::vector<std::string>& named_closed_series_list() {
  static const std::vector<std::string> names = {
      "u",   "v",   "w",   "wt",  "r0",  "r1",        "b1", "b2",
      "m00", "m10", "a00", "r1x", "s1x", "a11", "r0-variant", "u1", "u0", "stilde"};
  return names;
}

SQ named_closed_series(const std::string& name, int ord, const Rat& x0) {
  if (name == "u1") return u1_series(x0, ord);
  if (name == "u0") return u0_series(x0, ord);
  if (name == "stilde") return closed_stilde_at(x0, ord);
  KingClosedForms f = king_closed_forms(ord);
  static const std::map<std::string, SQ KingClosedForms::*> members = {
      {"u", &KingClosedForms::u},     {"v", &KingClosedForms::v},
      {"w", &KingClosedForms::w},     {"wt", &KingClosedForms::wt},
      {"r0", &KingClosedForms::r0},   {"r1", &KingClosedForms::r1},
      {"b1", &KingClosedForms::b1},   {"b2", &KingClosedForms::b2},
      {"m00", &KingClosedForms::m00}, {"m10", &KingClosedForms::m10},
      {"a00", &KingClosedForms::a00}, {"r1x", &KingClosedForms::r_at_1},
      {"s1x", &KingClosedForms::s_at_1}, {"a11", &KingClosedForms::a11},
      {"r0-variant", &KingClosedForms::r0_variant}};
  auto it = members.find(name);
  if (it == members.end()) throw ring_error("unknown closed-form series: " + name);
  return f.*(it->second);
}

}  // namespace walks
