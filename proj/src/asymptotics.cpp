#include "walks/asymptotics.hpp"

#include <mpfr.h>

#include <json.hpp>

#include <cmath>
#include <cstdio>

namespace walks {

namespace {

constexpr mpfr_prec_t kPrec = 384;  // ~115 decimal digits

// minimal RAII wrapper over mpfr_t for the handful of operations we need
struct Real {
  mpfr_t x;
  Real() {
    mpfr_init2(x, kPrec);
    mpfr_set_zero(x, 1);
  }
  explicit Real(long v) {
    mpfr_init2(x, kPrec);
    mpfr_set_si(x, v, MPFR_RNDN);
  }
  explicit Real(const Int& v) {
    mpfr_init2(x, kPrec);
    mpfr_set_z(x, v.get_mpz_t(), MPFR_RNDN);
  }
  Real(const Real& o) {
    mpfr_init2(x, kPrec);
    mpfr_set(x, o.x, MPFR_RNDN);
  }
  Real& operator=(const Real& o) {
    mpfr_set(x, o.x, MPFR_RNDN);
    return *this;
  }
  ~Real() { mpfr_clear(x); }
};

Real operator+(const Real& a, const Real& b) {
  Real r;
  mpfr_add(r.x, a.x, b.x, MPFR_RNDN);
  return r;
}
Real operator-(const Real& a, const Real& b) {
  Real r;
  mpfr_sub(r.x, a.x, b.x, MPFR_RNDN);
  return r;
}
Real operator*(const Real& a, const Real& b) {
  Real r;
  mpfr_mul(r.x, a.x, b.x, MPFR_RNDN);
  return r;
}
Real operator/(const Real& a, const Real& b) {
  Real r;
  mpfr_div(r.x, a.x, b.x, MPFR_RNDN);
  return r;
}
Real operator-(const Real& a) {
  Real r;
  mpfr_neg(r.x, a.x, MPFR_RNDN);
  return r;
}
bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.x, b.x) < 0; }
bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.x, b.x) > 0; }

int sign_of(const Real& a) { return mpfr_sgn(a.x); }
Real abs_r(const Real& a) {
  Real r;
  mpfr_abs(r.x, a.x, MPFR_RNDN);
  return r;
}
Real rootn(const Real& a, unsigned long n) {
  Real r;
  mpfr_rootn_ui(r.x, a.x, n, MPFR_RNDN);
  return r;
}
Real sqrt_r(const Real& a) { return rootn(a, 2); }
Real gamma_r(const Real& a) {
  Real r;
  mpfr_gamma(r.x, a.x, MPFR_RNDN);
  return r;
}
Real pi_r() {
  Real r;
  mpfr_const_pi(r.x, MPFR_RNDN);
  return r;
}
Real pow10(long e) {
  Real r;
  mpfr_set_si(r.x, 10, MPFR_RNDN);
  mpfr_pow_si(r.x, r.x, e, MPFR_RNDN);
  return r;
}
double to_double(const Real& a) { return mpfr_get_d(a.x, MPFR_RNDN); }

std::string decimal(const Real& a, int digits) {
  char buf[160];
  mpfr_snprintf(buf, sizeof buf, "%.*Re", digits - 1, a.x);
  return buf;
}

Real eval(const Cubic& c, const Real& x) {
  return ((Real(c.a3) * x + Real(c.a2)) * x + Real(c.a1)) * x + Real(c.a0);
}
Real eval_deriv(const Cubic& c, const Real& x) {
  return (Real(c.a3) * Real(3) * x + Real(c.a2) * Real(2)) * x + Real(c.a1);
}

Int pow_int(long base, unsigned long e) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), (unsigned long)base, e);
  return r;
}

Real gamma23() { return gamma_r(Real(2) / Real(3)); }

// leading and correction constants of both series, shared by predicted()
struct Constants {
  Real lead_total, corr_total, lead_origin, corr_origin;
};
Constants compute_constants() {
  Cubic ck = cubic_total_K(), cl = cubic_origin_L();
  RootIsolation rk = isolate_real_root(ck, 40), rl = isolate_real_root(cl, 40);
  Real K, L;
  mpfr_set_str(K.x, rk.value.c_str(), 10, MPFR_RNDN);
  mpfr_set_str(L.x, rl.value.c_str(), 10, MPFR_RNDN);
  Real g = gamma23(), pi = pi_r();
  Constants c{
      rootn(Real(pow_int(2, 32)) * K / Real(pow_int(3, 7)), 6) / g,
      -(Real(8) / (Real(9) * pi)),
      rootn(Real(pow_int(2, 29)) * K / Real(pow_int(3, 7)), 3) * g / pi,
      -(rootn(Real(pow_int(2, 62)) * L / Real(pow_int(3, 31)), 6) / g),
  };
  return c;
}

// singular values v_c (root of 4v^3+3v^2-1) and w_c = sqrt(3v_c^2+12v_c+3)/2
void singular_values(Real& vc, Real& wc) {
  RootIsolation rv = isolate_real_root(cubic_singular_vc(), 40);
  mpfr_set_str(vc.x, rv.value.c_str(), 10, MPFR_RNDN);
  wc = sqrt_r(Real(3) * vc * vc + Real(12) * vc + Real(3)) / Real(2);
}

Real singular_route(const std::string& series) {
  Real vc, wc;
  singular_values(vc, wc);
  if (series == "total") {
    // residue of the (1-8t)^(-2/3) term divided by Gamma(2/3)
    Real num = -(Real(32) * rootn(Real(6), 3) * wc *
                 (Real(28) * vc * vc + Real(61) * vc - Real(86)));
    return num / (Real(27) * Real(101)) / gamma23();
  }
  if (series == "origin") {
    // the (1-8t)^(2/3) term maps to n^(-5/3) with a Gamma(-2/3) factor
    Real num = -(Real(512) * rootn(Real(36), 3) * wc *
                 (Real(6716) * vc * vc + Real(2165) * vc - Real(1582)));
    return num / (Real(81) * Real(101 * 101) * gamma_r(Real(-2) / Real(3)));
  }
  throw asymptotics_error("unknown series: " + series);
}

}  // namespace

Cubic cubic_total_K() {
  return {pow_int(101, 6), Int(-601275603), Int(92811), Int(-1)};
}
Cubic cubic_origin_L() {
  Cubic c;
  c.a3 = pow_int(101, 18);
  c.a2 = -Int("342130847546623941461342020714770");
  c.a1 = Int("25258724190403343220341683641");
  c.a0 = -pow_int(5078, 6);
  return c;
}
Cubic cubic_singular_vc() { return {Int(4), Int(3), Int(0), Int(-1)}; }

bool has_unique_real_root(const Cubic& c) {
  const Int &a = c.a3, &b = c.a2, &cc = c.a1, &d = c.a0;
  Int disc = 18 * a * b * cc * d - 4 * b * b * b * d + b * b * cc * cc -
             4 * a * cc * cc * cc - 27 * a * a * d * d;
  return sgn(disc) < 0;
}

RootIsolation isolate_real_root(const Cubic& c, int digits) {
  Real lo(0), hi(1);
  int slo = sign_of(eval(c, lo)), shi = sign_of(eval(c, hi));
  if (slo == 0 || shi == 0 || slo == shi)
    throw asymptotics_error("isolate_real_root: no sign change on (0,1)");
  Real tol = pow10(-(long)digits - 5);
  int steps = 0;
  while (hi - lo > tol && steps < 4 * digits + 64) {
    ++steps;
    Real mid = (lo + hi) / Real(2);
    // try one Newton step from the midpoint, clipped into the bracket
    Real cand = mid;
    Real fp = eval_deriv(c, mid);
    if (sign_of(fp) != 0) {
      Real nw = mid - eval(c, mid) / fp;
      if (nw > lo && nw < hi) cand = nw;
    }
    // shrink with the candidate, then guarantee progress with the midpoint
    for (const Real& p : {cand, (lo + hi) / Real(2)}) {
      if (!(p > lo && p < hi)) continue;
      int sp = sign_of(eval(c, p));
      if (sp == 0) {
        lo = p - tol / Real(2);
        hi = p + tol / Real(2);
        break;
      }
      (sp == slo ? lo : hi) = p;
    }
  }
  Real mid = (lo + hi) / Real(2);
  return {decimal(mid, digits), decimal(hi - lo, 3), steps};
}

AsymptoticPrediction predicted(const std::string& series) {
  Constants k = compute_constants();
  AsymptoticPrediction p;
  p.series = series;
  p.growth = 8;
  if (series == "total") {
    p.exponent = ratio(-1, 3);
    p.constant = decimal(k.lead_total, 33);
    p.correction_exponent = Rat(-1);
    p.correction_constant = decimal(k.corr_total, 33);
  } else if (series == "origin") {
    p.exponent = ratio(-5, 3);
    p.constant = decimal(k.lead_origin, 33);
    p.correction_exponent = ratio(-7, 3);
    p.correction_constant = decimal(k.corr_origin, 33);
  } else {
    throw asymptotics_error("unknown series: " + series);
  }
  return p;
}

std::string singular_route_constant(const std::string& series, int digits) {
  return decimal(singular_route(series), digits);
}

double route_disagreement(const std::string& series) {
  Constants k = compute_constants();
  Real main = series == "total" ? k.lead_total : k.lead_origin;
  Real alt = singular_route(series);
  return to_double(abs_r(main - alt) / abs_r(main));
}

double gamma_reflection_error() {
  Real lhs = gamma23() * gamma_r(Real(1) / Real(3));
  Real rhs = Real(2) * pi_r() / sqrt_r(Real(3));
  return to_double(abs_r(lhs - rhs) / rhs);
}

RealSeries real_dp_normalized(const StepSet& s, RegionKind r, int N) {
  if (N < 0) throw asymptotics_error("real_dp_normalized: negative length");
  RealOps ops{(double)s.steps.size()};
  int W = N + 2;
  WalkTable<double> cur =
      initial_table<double>(r, s.edge_rule, W, StartDistribution::origin(), ops);
  WalkTable<double> nxt(r, s.edge_rule, W);
  RealSeries out;
  out.total.reserve(N + 1);
  out.origin.reserve(N + 1);
  auto record = [&](const WalkTable<double>& t) {
    double tot = 0;
    int b = std::min(t.W, t.radius);
    for (int i = -b; i <= b; ++i)
      for (int j = -b; j <= b; ++j) tot += t.at(i, j);
    out.total.push_back(tot);
    out.origin.push_back(t.at(0, 0));
  };
  record(cur);
  for (int n = 1; n <= N; ++n) {
    evolve_into(cur, nxt, s, ops);
    std::swap(cur, nxt);
    record(cur);
  }
  return out;
}

EmpiricalFit empirical_fit(const std::vector<double>& normalized, double alpha,
                           const std::function<double(int)>& correction) {
  if (normalized.size() < 200)
    throw sequence_too_short("empirical_fit: need at least 200 terms");
  int N = (int)normalized.size() - 1;
  auto b = [&](int n) {
    double v = normalized[n];
    if (correction) v -= correction(n);
    return v;
  };
  int n0 = N / 4, n1 = N / 2, n2 = N;
  double b0 = b(n0), b1 = b(n1), b2 = b(n2);
  if (!(b0 > 0 && b1 > 0 && b2 > 0) && !(b0 < 0 && b1 < 0 && b2 < 0))
    throw asymptotics_error("empirical_fit: sequence changes sign");
  double eA = std::log(b1 / b0) / std::log((double)n1 / n0);
  double eB = std::log(b2 / b1) / std::log((double)n2 / n1);
  double cA = b1 * std::pow((double)n1, -alpha);
  double cB = b2 * std::pow((double)n2, -alpha);
  EmpiricalFit f;
  f.exponent = 2 * eB - eA;  // one Richardson step on dyadic ratios
  f.exponent_spread = std::abs(eB - eA);
  f.constant = 2 * cB - cA;
  f.constant_spread = std::abs(cB - cA);
  return f;
}

std::string to_json(const AsymptoticPrediction& p) {
  nlohmann::json j;
  j["series"] = p.series;
  j["growth"] = p.growth;
  j["exponent"] = p.exponent.get_str();
  j["constant"] = p.constant;
  j["correction_exponent"] = p.correction_exponent.get_str();
  j["correction_constant"] = p.correction_constant;
  return j.dump();
}

}  // namespace walks
