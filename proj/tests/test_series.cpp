#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "walks/series.hpp"

using namespace walks;

namespace {
SQ random_series(std::mt19937_64& rng, int ord) {
  SQ s(ord);
  for (int n = 0; n <= ord; ++n) s.c[n] = ratio((long)(rng() % 19) - 9, (long)(rng() % 5) + 1);
  return s;
}
}  // namespace

TEST_CASE("series ring identities on random samples") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 25; ++i) {
    SQ a = random_series(rng, 12), b = random_series(rng, 12), c = random_series(rng, 12);
    CHECK((a * b).c == (b * a).c);
    CHECK(((a + b) * c).c == (a * c + b * c).c);
    CHECK(((a * b) * c).c == (a * (b * c)).c);
    if (!is_zero(a.c[0])) {
      SQ ia = inverse(a);
      CHECK((a * ia).c == SQ(12, Rat(1)).c);
    }
  }
}

TEST_CASE("geometric series inverse") {
  SQ one_minus_t(10, Rat(1));
  one_minus_t.c[1] = -1;
  SQ g = inverse(one_minus_t);
  for (int n = 0; n <= 10; ++n) CHECK(g.c[n] == 1);
}

TEST_CASE("sqrt of (1+t)^2 and random squares") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    SQ a = random_series(rng, 10);
    a.c[0] = 1;
    SQ s = sqrt1(a * a);
    CHECK(s.c == a.c);
    CHECK((sqrt1(a) * sqrt1(a)).c == a.c);
  }
}

TEST_CASE("valuation-aware division") {
  // (t^2 + t^3)/(t^2 - t^4) = (1+t)/(1-t^2) = 1/(1-t)
  SQ a(10);
  a.c[2] = 1;
  a.c[3] = 1;
  SQ b(10);
  b.c[2] = 1;
  b.c[4] = -1;
  SQ q = divide(a, b);
  for (int n = 0; n <= q.order; ++n) CHECK(q.c[n] == 1);
  CHECK_THROWS_AS(divide(b.shifted_down(2), a), no_formal_solution);
}

TEST_CASE("newton solve: Catalan series t F^2 - F + 1 = 0") {
  int N = 16;
  SeriesPoly<Rat> p;
  p.coef = {SQ(N, Rat(1)), SQ(N, Rat(-1)), SQ::t_power(1, N)};
  SQ seed(N, Rat(1));
  seed.c[1] = 1;
  SQ f = newton_solve(p, seed, N);
  // Catalan numbers
  Rat cat(1);
  for (int n = 0; n <= N; ++n) {
    CHECK(f.c[n] == cat);
    cat = cat * ratio(2 * (2 * n + 1), n + 2);
  }
  CHECK(p.eval(f).zero_to_order());
}

TEST_CASE("newton solve matches a two-way characterized quartic branch") {
  // u defined by t^2 (1-3u)^3 (1+u) + t (1+18u^2-27u^4) - u = 0, u = t + ...
  // independently characterized by u/((1+u)(1-3u)^3) = t(1+t)/(1-8t).
  int N = 24;
  auto C = [&](long k) { return SQ(N, Rat(k)); };
  SQ t = SQ::t_power(1, N), t2 = SQ::t_power(2, N);
  // expand coefficients of powers of u: build P directly
  SeriesPoly<Rat> p;
  // (1-3u)^3 (1+u) = 1 - 8u + 18u^2 - 27u^4
  p.coef.resize(5, SQ(N));
  p.coef[0] = t2 + t;
  p.coef[1] = t2.scaled(Rat(-8)) - SQ(N, Rat(1));
  p.coef[2] = t2.scaled(Rat(18)) + t.scaled(Rat(18));
  p.coef[3] = SQ(N);
  p.coef[4] = t2.scaled(Rat(-27)) + t.scaled(Rat(-27));
  SQ seed = t + t2;
  SQ u = newton_solve(p, seed, N);
  CHECK(u.c[1] == 1);
  CHECK(u.c[2] == 1);
  // cross-check against the rational parametrization (independent oracle)
  SQ lhs_num = u;
  SQ one_minus_3u = C(1) - u.scaled(Rat(3));
  SQ lhs_den = (C(1) + u) * one_minus_3u * one_minus_3u * one_minus_3u;
  SQ rhs_num = t * (C(1) + t);
  SQ rhs_den = C(1) - t.scaled(Rat(8));
  CHECK((lhs_num * rhs_den).c == (rhs_num * lhs_den).c);
}

TEST_CASE("newton solve rejects a stalled branch") {
  // F^2 - t = 0 has no power series solution
  int N = 8;
  SeriesPoly<Rat> p;
  p.coef = {SQ::t_power(1, N).scaled(Rat(-1)), SQ(N), SQ(N, Rat(1))};
  CHECK_THROWS_AS(newton_solve(p, SQ(N), N), no_formal_solution);
}

TEST_CASE("Laurent-coefficient series: filters, substitution, evaluation") {
  int N = 6;
  SLX f(N);
  // f = (x + 2 + 1/x) t + (x^2 - 1/x^2) t^3
  LX a;
  a.add_term(Rat(1), 1);
  a.add_term(Rat(2), 0);
  a.add_term(Rat(1), -1);
  LX b;
  b.add_term(Rat(1), 2);
  b.add_term(Rat(-1), -2);
  f.c[1] = a;
  f.c[3] = b;
  CHECK(coeff_of_x(f, -1).c[1] == 1);
  CHECK(coeff_of_x(keep_exponents(f, [](int e) { return e > 0; }), -2).zero_to_order());
  CHECK(subst_x_inverse(f).c[3].coeff(2) == -1);
  SQ at2 = eval_at_rat(f, Rat(2));
  CHECK(at2.c[1] == Rat(2) + 2 + Rat(1, 2));
  CHECK(at2.c[3] == Rat(4) - Rat(1, 4));
  // (x+2+1/x) at zeta: zeta + zetabar + 2 = 1
  SZ az = eval_at_zeta(f);
  CHECK(az.c[1] == Zeta(1));
}

namespace {
// dense oracle: expand F(1/x)/(1+x+x^2)^power per t-order with plain maps
std::vector<std::map<int, Rat>> pospole_oracle(const SLX& f, int power, int xdeg) {
  // 1/(1+x+x^2)^power as a power series in x, far enough to cover all shifts
  int guard = 40;
  std::vector<Rat> invser(xdeg + guard + 1, Rat(0));
  {
    std::vector<Rat> base(invser.size(), Rat(0));  // 1/(1+x+x^2) = (1-x)/(1-x^3)
    for (size_t k = 0; k < base.size(); k += 3) {
      base[k] += 1;
      if (k + 1 < base.size()) base[k + 1] -= 1;
    }
    invser = base;
    if (power == 2) {
      std::vector<Rat> sq(invser.size(), Rat(0));
      for (size_t i = 0; i < base.size(); ++i)
        for (size_t j = 0; i + j < base.size(); ++j) sq[i + j] += base[i] * base[j];
      invser = sq;
    }
  }
  std::vector<std::map<int, Rat>> out(f.order + 1);
  for (int n = 0; n <= f.order; ++n) {
    const LX& fn = f.c[n];
    if (fn.zero()) continue;
    for (int e = fn.deg_lo(); e <= fn.deg_hi(); ++e) {
      Rat c = fn.coeff(e);
      if (is_zero(c)) continue;
      int rev = -e;  // exponent in F(1/x)
      for (int m = 0; m <= xdeg; ++m) {
        int need = m - rev;
        if (need >= 0 && need < (int)invser.size()) out[n][m] += c * invser[need];
      }
    }
  }
  return out;
}
}  // namespace

TEST_CASE("positive-part extraction via cube roots of unity matches dense oracle") {
  std::mt19937_64 rng(77);
  for (int power : {1, 2}) {
    int min_lo = power == 1 ? -1 : -3;
    for (int trial = 0; trial < 8; ++trial) {
      SLX f(7);
      for (int n = 0; n <= 7; ++n) {
        int nt = rng() % 6;
        for (int k = 0; k < nt; ++k)
          f.c[n].add_term(Rat((long)(rng() % 13) - 6), min_lo + (int)(rng() % 10));
      }
      int xdeg = 9;
      SLX got = pospole_extract(f, power, xdeg);
      auto want = pospole_oracle(f, power, xdeg);
      for (int n = 0; n <= 7; ++n)
        for (int m = 0; m <= xdeg; ++m) {
          Rat w = want[n].count(m) ? want[n][m] : Rat(0);
          CHECK(got.c[n].coeff(m) == w);
        }
    }
  }
  // precondition violated: valuation too low
  SLX bad(3);
  bad.c[1].add_term(Rat(1), -2);
  CHECK_THROWS_AS(pospole_extract(bad, 1, 4), ring_error);
}
