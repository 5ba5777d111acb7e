#include "walks/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "walks/asymptotics.hpp"
#include "walks/closedform.hpp"
#include "walks/enumerate.hpp"
#include "walks/guess.hpp"
#include "walks/kernel.hpp"
#include "walks/model.hpp"
#include "walks/primes.hpp"
#include "walks/verify.hpp"

namespace walks {

namespace {

using Clock = std::chrono::steady_clock;

bool agree(const SQ& a, const SQ& b, int ord, std::string& detail, const std::string& what) {
  for (int n = 0; n <= ord; ++n)
    if (a.coeff_or_zero(n) != b.coeff_or_zero(n)) {
      detail = what + ": first mismatch at order " + std::to_string(n);
      return false;
    }
  return true;
}

// weighted sum over table cells as a series in the step count
SQ sum_cells(const std::vector<WalkTable<Int>>& ts, long scale,
             const std::function<Rat(int, int)>& weight) {
  SQ s((int)ts.size() - 1);
  for (size_t n = 0; n < ts.size(); ++n) {
    const auto& t = ts[n];
    int box = std::min(t.W, t.radius);
    Rat acc(0);
    for (int i = -box; i <= box; ++i)
      for (int j = -box; j <= box; ++j)
        if (sgn(t.at(i, j)) != 0) acc += Rat(t.at(i, j)) * weight(i, j);
    s.c[n] = acc / scale;
  }
  return s;
}

// ---- criterion bodies --------------------------------------------------------

// 1: the corner endpoint sequence matches its algebraic closed form
bool crit_corner_series(std::string& detail) {
  StepSet king = model_by_name("king");
  auto counts = count_sequence(king, RegionKind::ThreeQuadrant, StartDistribution::origin(),
                               Endpoint::at(-1, 0), 60);
  static const long want[] = {0, 1, 2, 17, 80, 536};
  for (int n = 0; n <= 5; ++n)
    if (counts[n] != Int(want[n])) {
      detail = "hand-checked values differ at n=" + std::to_string(n);
      return false;
    }
  KingClosedForms f = king_closed_forms(62);
  for (int n = 0; n <= 60; ++n)
    if (Rat(counts[n]) != f.m00.coeff(n)) {
      detail = "closed form differs at n=" + std::to_string(n);
      return false;
    }
  detail = "n<=60 exact";
  return true;
}

// 2: quadrant counts equal the positive part of (orbit sum of xy) / kernel
bool crit_quadrant_orbit_coeffs(std::string& detail) {
  const int N = 20;
  StepSet king = model_by_name("king");
  Group g = build_group(king);
  Laurent2 OS = orbit_sum(g, 0, 0);  // alternating orbit of x y (cell (0,0))
  Laurent2 S = step_polynomial(king);
  auto Q = exact_tables(king, RegionKind::Quadrant, StartDistribution::origin(), N);
  Laurent2 pw(1);  // S^n
  for (int n = 0; n <= N; ++n) {
    Laurent2 prod = OS * pw;  // [t^n] OS(xy)/K
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j)
        if (Rat(Q[n].at(i, j)) != prod.coeff(i + 1, j + 1)) {
          detail = "mismatch at n=" + std::to_string(n) + " cell (" + std::to_string(i) + "," +
                   std::to_string(j) + ")";
          return false;
        }
    if (n < N) pw *= S;
  }
  detail = "n<=20, all cells";
  return true;
}

// 3: the four step-by-step functional equations hold at order 15
bool crit_functional_equations(std::string& detail) {
  VerifyData vd = build_verify_data(model_by_name("king"), 15);
  for (EqTarget t :
       {EqTarget::Cone, EqTarget::Quadrant, EqTarget::Weighted, EqTarget::LeftBoundary}) {
    IdentityCheck c = check_functional_equation(vd, t);
    if (!c.pass) {
      detail = "failed: " + c.id;
      return false;
    }
  }
  detail = "4 equations, order 15";
  return true;
}

// 4: cone and quadrant orbit sums vanish/reduce for all Weyl models at order 12
bool crit_orbit_sums(std::string& detail) {
  for (const std::string& name : weyl_model_names()) {
    VerifyData vd = build_verify_data(model_by_name(name), 12);
    for (EqTarget t : {EqTarget::Cone, EqTarget::Quadrant}) {
      IdentityCheck c = check_orbit_sum(vd, t);
      if (!c.pass) {
        detail = "failed: " + c.id + " for " + name;
        return false;
      }
    }
  }
  detail = "7 models, order 12";
  return true;
}

// 5: endpoint reflection identities over models, edge rules and start points
bool crit_reflection(std::string& detail) {
  static const std::pair<int, int> starts[] = {{0, 0}, {-1, 0}, {-2, 0}, {0, -3}};
  for (const std::string& name : weyl_model_names()) {
    for (EdgeRule rule : {EdgeRule::ForbidDiagonalJumps, EdgeRule::AllowDiagonalJumps}) {
      StepSet m = model_by_name(name);
      m.edge_rule = rule;
      for (auto [a, b] : starts) {
        IdentityCheck c = check_reflection(m, a, b, 24, 12);
        if (!c.pass) {
          detail = "failed: " + name + " start (" + std::to_string(a) + "," + std::to_string(b) +
                   ")" + (rule == EdgeRule::AllowDiagonalJumps ? " variant rule" : "");
          return false;
        }
      }
    }
  }
  // the length-2 instance one can check by hand: the 7 cone walks returning to
  // the origin split as 2 + 2 + 3 across the signed orbit, leaving the 3
  // quadrant walks
  StepSet king = model_by_name("king");
  auto C = exact_tables(king, RegionKind::ThreeQuadrant, StartDistribution::origin(), 2);
  auto Q = exact_tables(king, RegionKind::Quadrant, StartDistribution::origin(), 2);
  bool hand = C[2].at(0, 0) == Int(7) && C[2].at(-2, 0) == Int(2) && C[2].at(0, -2) == Int(2) &&
              Q[2].at(0, 0) == Int(3) && Int(7) - Int(2) - Int(2) == Int(3);
  if (!hand) {
    detail = "length-2 hand instance failed";
    return false;
  }
  detail = "7 models x 2 rules x 4 starts, n<=24; 7-2-2=3 instance";
  return true;
}

// 6: the kernel pipeline certifies its identity chains to order >= 16
bool crit_kernel_pipeline(std::string& detail) {
  KernelContext ctx = build_context(18);
  std::vector<IdentityReport> rs = verify_kernel_root(ctx);
  for (auto& r : verify_kernel_cancellation(ctx)) rs.push_back(r);
  for (auto& r : verify_product_relation(ctx)) rs.push_back(r);
  rs.push_back(verify_catalytic_cubic(ctx));
  rs.push_back(verify_catalytic_cubic_at(ctx, Rat(2)));
  int min_order = 1 << 30;
  for (const auto& r : rs) {
    if (!r.ok()) {
      detail = "failed: " + r.identity;
      return false;
    }
    min_order = std::min(min_order, r.certified_order);
  }
  if (min_order < 16) {
    detail = "certified order " + std::to_string(min_order) + " < 16";
    return false;
  }
  // boundary series at a primitive cube root of unity: -t^2 - 11 t^4 - 30 t^5
  SZ sz = eval_at_zeta(ctx.S);
  for (int n = 0; n <= 5; ++n)
    if (!is_zero(sz.c[n].b)) {
      detail = "S(zeta) not real at order " + std::to_string(n);
      return false;
    }
  SQ szr = real_part(sz.truncated(5));
  static const long want[] = {0, 0, -1, 0, -11, -30};
  for (int n = 0; n <= 5; ++n)
    if (szr.c[n] != Rat(want[n])) {
      detail = "S(zeta) coefficient differs at order " + std::to_string(n);
      return false;
    }
  detail = std::to_string(rs.size()) + " identities, certified >= " + std::to_string(min_order);
  return true;
}

// 7: every closed form matches enumeration-derived series to order 30
bool crit_closed_forms(std::string& detail) {
  const int N = 30;
  KernelContext ctx = build_context(N);
  KingClosedForms f = king_closed_forms(N);
  if (!agree(ctx.r0, f.r0, N, detail, "r0")) return false;
  if (!agree(ctx.r1, f.r1, N, detail, "r1")) return false;
  if (!agree(ctx.b1, f.b1, N, detail, "b1")) return false;
  if (!agree(ctx.b2, f.b2, N, detail, "b2")) return false;
  if (!agree(ctx.r1.shifted_down(2), f.m10, N - 2, detail, "m10")) return false;
  if (!agree(eval_at_rat(ctx.R, Rat(1)), f.r_at_1, N, detail, "R(1)")) return false;
  if (!agree(eval_at_rat(ctx.S, Rat(1)), f.s_at_1, N, detail, "S(1)")) return false;

  StepSet king = model_by_name("king");
  auto tables = exact_tables(king, RegionKind::ThreeQuadrant, a_weighted_start(king), N);
  if (!agree(slice_total(tables, 3), f.a11, N, detail, "A(1,1)")) return false;
  if (!agree(slice_point(tables, 3, 0, 0), f.a00, N, detail, "A00")) return false;

  KernelContext ctxv = build_context(N, EdgeRule::AllowDiagonalJumps);
  if (!agree(ctxv.r0, f.r0_variant, N, detail, "variant r0")) return false;
  detail = "10 series, order 30";
  return true;
}

// 8: the symmetrized boundary series evaluated at x0 = 2
bool crit_stilde_spot(std::string& detail) {
  const int N = 25;
  StepSet king = model_by_name("king");
  auto tables = exact_tables(king, RegionKind::ThreeQuadrant, a_weighted_start(king), N);
  Rat x0(2), xb = inv(x0);
  SQ m0x = sum_cells(tables, 3, [&](int i, int j) {
    if (i != -1 || j < 0) return Rat(0);
    Rat p(1);
    for (int k = 0; k < j; ++k) p *= x0;
    return p;
  });
  SQ s_x0 = m0x.shifted_up(1).scaled(x0);
  SQ r0 = slice_point(tables, 3, -1, 0).shifted_up(2);
  RingCtx<Rat> K;
  SQ stilde_enum = (s_x0.scaled(x0 + 1 + xb) - r0.shifted_down(1) +
                    K.constant(s_x0.order, 1).scaled(x0 * ratio(2, 3) + xb * ratio(1, 3)))
                       .scaled(inv(x0 - xb));
  if (!agree(stilde_enum, closed_stilde_at(x0, N), N, detail, "Stilde(2)")) return false;
  detail = "order 25 exact";
  return true;
}

// 9a: small guesses succeed instantly
bool crit_guess_small(std::string& detail) {
  std::vector<Int> c(60);
  c[0] = 1;
  for (int k = 1; k < 60; ++k) {
    Int s(0);
    for (int i = 0; i < k; ++i) s += c[i] * c[k - 1 - i];
    c[k] = s;
  }
  GuessSpec sc;
  sc.sequence = std::vector<Rat>(c.begin(), c.end());
  sc.dF = 2;
  sc.dt = 1;
  CandidateEquation cat = guess_algebraic(sc);
  if (cat.terms.size() != 3 || !verify_candidate(cat, sc.sequence)) {
    detail = "catalan fit failed";
    return false;
  }

  RingCtx<Rat> k;
  Series<Rat> u = series_u(60, k);
  GuessSpec su;
  su.sequence = std::vector<Rat>(u.c.begin(), u.c.end());
  su.dF = 4;
  su.dt = 2;
  CandidateEquation cu = guess_algebraic(su);
  if (cu.terms.size() != 8 || !verify_candidate(cu, su.sequence)) {
    detail = "tower-root fit failed";
    return false;
  }
  detail = "catalan (2,1) and tower root (4,2)";
  return true;
}

// 9b: the extended corner-series fit on 1200 modular terms
bool crit_guess_corner(std::string& detail) {
  uint64_t p = prime_schedule(1)[0];
  RingCtx<Mod> k{Mod(1, p)};
  Series<Mod> u = series_u(1199, k);
  Series<Mod> v = series_v(u, k);
  Series<Mod> w = series_w(v, k);
  CatalyticScalars<Mod> s = closed_scalars(v, w, k);
  std::vector<uint64_t> seq(1200);
  for (int n = 0; n <= 1199; ++n) seq[n] = s.r0.coeff(n).attach(p);

  GuessSpec spec;
  spec.residues = seq;
  spec.prime = p;
  spec.dF = 24;
  spec.dt = 36;
  CandidateEquation c = guess_algebraic(spec);
  if (c.terms.size() != 323) {
    detail = "candidate has " + std::to_string(c.terms.size()) + " terms, expected 323";
    return false;
  }
  if (!verify_candidate_mod(c, seq, p)) {
    detail = "candidate fails on the full 1200 terms";
    return false;
  }
  detail = "degree (24,36), 323 nonzero terms";
  return true;
}

// 10: asymptotic constants isolated to 30 digits, fits within tolerance
bool crit_asymptotics(std::string& detail) {
  if (!has_unique_real_root(cubic_total_K()) || !has_unique_real_root(cubic_origin_L())) {
    detail = "cubic not uniquely solvable";
    return false;
  }
  for (const char* which : {"total", "origin"}) {
    Cubic c = std::string(which) == "total" ? cubic_total_K() : cubic_origin_L();
    RootIsolation iso = isolate_real_root(c, 33);
    if (std::strtod(iso.interval_width.c_str(), nullptr) >= 1e-30) {
      detail = std::string(which) + " root interval too wide";
      return false;
    }
    if (route_disagreement(which) > 1e-15) {
      detail = std::string(which) + " constant disagrees with the singular route";
      return false;
    }
  }

  RealSeries dp = real_dp_normalized(model_by_name("king"), RegionKind::ThreeQuadrant, 1000);
  struct Case {
    const char* series;
    const std::vector<double>* seq;
    double exp_tol, const_tol;
  } cases[] = {{"total", &dp.total, 0.02, 0.01}, {"origin", &dp.origin, 0.05, 0.03}};
  for (const Case& cs : cases) {
    AsymptoticPrediction p = predicted(cs.series);
    double alpha = p.exponent.get_d();
    double beta = p.correction_exponent.get_d();
    double cc = std::strtod(p.correction_constant.c_str(), nullptr);
    EmpiricalFit fit =
        empirical_fit(*cs.seq, alpha, [beta, cc](int n) { return cc * std::pow((double)n, beta); });
    double c0 = std::strtod(p.constant.c_str(), nullptr);
    if (std::fabs(fit.exponent - alpha) > cs.exp_tol) {
      detail = std::string(cs.series) + " exponent off: " + std::to_string(fit.exponent);
      return false;
    }
    if (std::fabs(fit.constant / c0 - 1.0) > cs.const_tol) {
      detail = std::string(cs.series) + " constant off: " + std::to_string(fit.constant);
      return false;
    }
  }
  detail = "roots < 1e-30, n=1000 fits in tolerance";
  return true;
}

// ---- criterion 11: mutation sensitivity --------------------------------------

// endpoint reflection identity directly on tables, start (0,0)
bool reflection_tables_hold(const VerifyData& vd, const Group& g, int box) {
  int d = g.d();
  for (int n = 0; n <= vd.N; ++n)
    for (int i = 0; i <= box; ++i)
      for (int j = 0; j <= box; ++j) {
        Rat lhs(0);
        for (const AffinePoint& ap : affine_orbit(g, i, j)) {
          if (ap.element->length == d) continue;  // extremal element excluded
          auto [ci, cj] = ap.point;
          if (!vd.C[n].inside(ci, cj)) return false;
          lhs += Rat(ap.sign) * Rat(vd.C[n].at(ci, cj));
        }
        if (lhs != Rat(vd.Q[n].at(i, j))) return false;
      }
  return true;
}

bool crit_mutation(std::string& detail) {
  std::mt19937 rng(20240817);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int N = 8, trials = 20;
  StepSet king = model_by_name("king");
  VerifyData vd = build_verify_data(king, N);
  Group g = build_group(king);

  // functional equation: any in-region cell is constrained
  for (int t = 0; t < trials; ++t) {
    VerifyData bad = vd;
    int n = pick(1, N);
    int i, j;
    do {
      i = pick(-n, n);
      j = pick(-n, n);
    } while (!region_contains(RegionKind::ThreeQuadrant, i, j));
    bad.C[n].at(i, j) += 1;
    if (check_functional_equation(bad, EqTarget::Cone).pass) {
      detail = "functional equation missed a perturbation";
      return false;
    }
  }

  // orbit sum: cells off the walls (where orbit terms cannot cancel in pairs)
  for (int t = 0; t < trials; ++t) {
    VerifyData bad = vd;
    int n = pick(1, N);
    int i = pick(0, n), j = pick(0, n);
    bad.C[n].at(i, j) += 1;
    if (check_orbit_sum(bad, EqTarget::Cone).pass) {
      detail = "orbit sum missed a perturbation";
      return false;
    }
  }

  // reflection: perturb either the quadrant cell or one cone orbit image
  if (!reflection_tables_hold(vd, g, 5)) {
    detail = "reflection fails on clean tables";
    return false;
  }
  for (int t = 0; t < trials; ++t) {
    VerifyData bad = vd;
    int n = pick(1, N);
    int i = pick(0, 5), j = pick(0, 5);
    if (pick(0, 1) == 0) {
      bad.Q[n].at(i, j) += 1;
    } else {
      std::vector<AffinePoint> orbit = affine_orbit(g, i, j);
      std::vector<std::pair<int, int>> images;
      for (const AffinePoint& ap : orbit)
        if (ap.element->length != g.d()) images.push_back(ap.point);
      auto [ci, cj] = images[(size_t)pick(0, (int)images.size() - 1)];
      bad.C[n].at(ci, cj) += 1;
    }
    if (reflection_tables_hold(bad, g, 5)) {
      detail = "reflection missed a perturbation";
      return false;
    }
  }

  // kernel pipeline: perturb one boundary-series coefficient
  KernelContext ctx = build_context(12);
  for (int t = 0; t < trials; ++t) {
    int n = pick(4, 9), e = pick(0, 2);
    SLX mx0 = ctx.Mx0, m0x = ctx.M0x;
    (pick(0, 1) == 0 ? mx0 : m0x).c[n].add_term(Rat(1), e);
    KernelContext bad = context_from_series(12, ctx.edge_rule, mx0, m0x);
    bool caught = false;
    for (const auto& r : verify_kernel_cancellation(bad)) caught = caught || !r.ok();
    for (const auto& r : verify_product_relation(bad)) caught = caught || !r.ok();
    caught = caught || !verify_catalytic_cubic(bad).ok();
    if (!caught) {
      detail = "kernel pipeline missed a perturbation";
      return false;
    }
  }
  detail = "4 x 20 trials, all perturbations detected";
  return true;
}

CriterionResult run_one(int id, const std::string& name, std::ostream& log,
                        const std::function<bool(std::string&)>& body) {
  CriterionResult r;
  r.id = id;
  r.name = name;
  auto t0 = Clock::now();
  try {
    r.pass = body(r.detail);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(1);
  line << (r.pass ? "PASS" : "FAIL") << " " << id << " " << name << " [" << r.seconds << "s]";
  if (!r.detail.empty()) line << " " << r.detail;
  log << line.str() << std::endl;  // flush: criteria can run for minutes
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::ostream& log) {
  std::vector<CriterionResult> rs;
  rs.push_back(run_one(1, "corner-endpoint-series", log, crit_corner_series));
  rs.push_back(run_one(2, "quadrant-orbit-coefficients", log, crit_quadrant_orbit_coeffs));
  rs.push_back(run_one(3, "functional-equations", log, crit_functional_equations));
  rs.push_back(run_one(4, "orbit-sums", log, crit_orbit_sums));
  rs.push_back(run_one(5, "reflection-identities", log, crit_reflection));
  rs.push_back(run_one(6, "kernel-pipeline", log, crit_kernel_pipeline));
  rs.push_back(run_one(7, "closed-forms", log, crit_closed_forms));
  rs.push_back(run_one(8, "boundary-series-spot-check", log, crit_stilde_spot));
  rs.push_back(run_one(9, "algebraic-guessing", log, [](std::string& d) {
    std::string d1, d2;
    bool ok = crit_guess_small(d1) && crit_guess_corner(d2);
    d = d1 + (d2.empty() ? "" : "; " + d2);
    return ok;
  }));
  rs.push_back(run_one(10, "asymptotics", log, crit_asymptotics));
  rs.push_back(run_one(11, "mutation-sensitivity", log, crit_mutation));
  int passed = 0;
  for (const auto& r : rs) passed += r.pass ? 1 : 0;
  log << "acceptance: " << passed << "/" << rs.size() << " criteria passed\n";
  return rs;
}

bool all_passed(const std::vector<CriterionResult>& rs) {
  for (const auto& r : rs)
    if (!r.pass) return false;
  return !rs.empty();
}

}  // namespace walks
