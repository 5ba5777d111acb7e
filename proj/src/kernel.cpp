#include "walks/kernel.hpp"

#include <json.hpp>

#include "walks/model.hpp"

namespace walks {

namespace {

// ---- reports ----------------------------------------------------------------

nlohmann::json report_json(const IdentityReport& r) {
  nlohmann::json j;
  j["identity"] = r.identity;
  j["certified_order"] = r.certified_order;
  if (r.first_failure) {
    j["first_failure"] = {{"t_order", r.first_failure->t_order},
                          {"x_exponent", r.first_failure->x_exponent},
                          {"delta", to_string(r.first_failure->delta)}};
  } else {
    j["first_failure"] = nullptr;
  }
  return j;
}

}  // namespace

std::string to_json(const IdentityReport& r) { return report_json(r).dump(); }

std::string to_json(const std::vector<IdentityReport>& rs) {
  nlohmann::json j = nlohmann::json::array();
  for (auto& r : rs) j.push_back(report_json(r));
  return j.dump();
}

IdentityReport residual_report(const std::string& name, const SLX& res) {
  IdentityReport r{name, res.order, std::nullopt};
  for (int n = 0; n <= res.order; ++n) {
    const LX& l = res.c[n];
    if (l.zero()) continue;
    for (int e = l.deg_lo(); e <= l.deg_hi(); ++e)
      if (!is_zero(l.coeff(e))) {
        r.first_failure = FirstFailure{n, e, l.coeff(e)};
        return r;
      }
  }
  return r;
}

IdentityReport residual_report(const std::string& name, const SQ& res) {
  IdentityReport r{name, res.order, std::nullopt};
  for (int n = 0; n <= res.order; ++n)
    if (!is_zero(res.c[n])) {
      r.first_failure = FirstFailure{n, 0, res.c[n]};
      return r;
    }
  return r;
}

IdentityReport residual_report(const std::string& name, const SZ& res) {
  IdentityReport r{name, res.order, std::nullopt};
  for (int n = 0; n <= res.order; ++n)
    if (!is_zero(res.c[n])) {
      const Zeta& z = res.c[n];
      r.first_failure = FirstFailure{n, 0, is_zero(z.a) ? z.b : z.a};
      return r;
    }
  return r;
}

// ---- context construction ---------------------------------------------------

namespace {

const LX kX = lx_x(1);
const LX kXb = lx_x(-1);
const LX kH = kX + LX(1) + kXb;       // x + 1 + 1/x
const LX kXpXb = kX + kXb;            // x + 1/x
const LX kD = kX - kXb;               // x - 1/x

SLX slx_t(int ord) { return SLX::t_power(1, ord, LX(1)); }

// power-series root of the kernel via the division-free fixed point
// Y = t(x+1+1/x)(1+Y^2) + t(x+1/x)Y
SLX kernel_root(int ord) {
  SLX y(ord);
  for (int it = 0; it <= ord; ++it) {
    SLX next = (mul_x(SLX(ord, LX(1)) + y * y, kH) + mul_x(y, kXpXb)).shifted_up(1);
    y = next.truncated(ord);
  }
  return y;
}

SLX discriminant(int ord) {
  SLX d1(ord, LX(1)), d2(ord, LX(1));
  if (ord >= 1) {
    d1.c[1] = -(kXpXb.scaled(Rat(3)) + LX(2));
    d2.c[1] = kXpXb + LX(2);
  }
  return d1 * d2;
}

SZ lift_zeta(const SQ& s) {
  return map_coeffs<Rat, Zeta>(s, [](const Rat& q) { return Zeta(q); });
}

}  // namespace

KernelContext context_from_series(int N, EdgeRule rule, const SLX& Mx0, const SLX& M0x) {
  KernelContext ctx;
  ctx.N = N;
  ctx.edge_rule = rule;
  ctx.Mx0 = Mx0;
  ctx.M0x = M0x;
  ctx.R = Mx0.shifted_up(2);
  ctx.S = mul_x(M0x, kX).shifted_up(1);
  ctx.r0 = coeff_of_x(ctx.R, 0);
  ctx.r1 = coeff_of_x(ctx.R, 1);
  ctx.s2 = coeff_of_x(ctx.S, 2);

  int W = N + 2;
  ctx.Y = kernel_root(W);
  ctx.sqrtDelta = sqrt1(discriminant(W));

  // G = 3t(x+1+1/x) S(x) - 3 R0 + t(2x+1/x); the variant rule drops the R0 term
  SLX g = mul_x(ctx.S, kH).shifted_up(1).scaled(Rat(3));
  SLX corr(W);
  if (W >= 1) corr.c[1] = kX.scaled(Rat(2)) + kXb;
  g = g + corr;
  if (rule == EdgeRule::ForbidDiagonalJumps) g = g - lift_x(ctx.r0).scaled(Rat(3));
  ctx.G = g;

  // (1+t)^2 zeta S'(zeta) = B1 + i sqrt(3) B2
  SZ sp = eval_at_zeta(dx(ctx.S));
  Zeta zeta(Rat(0), Rat(1));
  SZ onet(sp.order, Zeta(1));
  if (sp.order >= 1) onet.c[1] = Zeta(1);
  SZ val = sp.scaled(zeta) * onet * onet;
  ctx.b1 = map_coeffs<Zeta, Rat>(val, [](const Zeta& z) { return real_unit_part(z); });
  ctx.b2 = map_coeffs<Zeta, Rat>(val, [](const Zeta& z) { return imag_sqrt3_part(z); });

  SLX delta = ctx.sqrtDelta * ctx.sqrtDelta;
  ctx.p0 = coeff_of_x(delta * ctx.S * subst_x_inverse(ctx.S), 0);
  return ctx;
}

KernelContext build_context(int N, EdgeRule rule) {
  if (N < 6) throw kernel_error("build_context: order must be at least 6");
  StepSet king = model_by_name("king");
  king.edge_rule = rule;
  auto tables = exact_tables(king, RegionKind::ThreeQuadrant, a_weighted_start(king), N);
  SLX mx0(N), m0x(N);
  for (int n = 0; n <= N; ++n) {
    const auto& t = tables[n];
    int box = std::min(t.W, t.radius);
    for (int k = 1; k <= box; ++k)
      if (sgn(t.at(-k, 0)) != 0) mx0.c[n].add_term(Rat(t.at(-k, 0)) / 3, k - 1);
    for (int j = 0; j <= box; ++j)
      if (sgn(t.at(-1, j)) != 0) m0x.c[n].add_term(Rat(t.at(-1, j)) / 3, j);
  }
  return context_from_series(N, rule, mx0, m0x);
}

// ---- kernel root ------------------------------------------------------------

std::vector<IdentityReport> verify_kernel_root(const KernelContext& ctx) {
  int W = ctx.Y.order;
  const SLX& Y = ctx.Y;
  SLX one(W, LX(1));
  std::vector<IdentityReport> out;

  // t(x+1+1/x) Y^2 - (1 - t(x+1/x)) Y + t(x+1+1/x) = 0
  SLX quad = mul_x(Y * Y + one, kH).shifted_up(1) - Y + mul_x(Y, kXpXb).shifted_up(1);
  out.push_back(residual_report("kernel-root-quadratic", quad));

  out.push_back(residual_report("kernel-root-x-symmetry", Y - subst_x_inverse(Y)));

  SLX delta = discriminant(W);
  out.push_back(
      residual_report("discriminant-square-root", ctx.sqrtDelta * ctx.sqrtDelta - delta));

  // 2t(x+1+1/x) Y = 1 - t(x+1/x) - sqrt(Delta)
  SLX tXpXb(W);
  if (W >= 1) tXpXb.c[1] = kXpXb;
  SLX closed = mul_x(Y, kH).shifted_up(1).scaled(Rat(2)) - (one - tXpXb - ctx.sqrtDelta);
  out.push_back(residual_report("kernel-root-via-discriminant", closed));
  return out;
}

// ---- kernel cancellation chain ----------------------------------------------

namespace {
void require_standard_rule(const KernelContext& ctx, const char* what) {
  if (ctx.edge_rule != EdgeRule::ForbidDiagonalJumps)
    throw kernel_error(std::string(what) + ": identity holds for the standard edge rule only");
}

// t(1+x+x^2)(3(x+1+1/x)R(x) + 3R1 - (x+1/x)R0) + (1-t(x+1/x))(xR0 - t):
// the denominator-cleared right-hand side of the two-boundary-series relation
SLX cleared_rhat(const KernelContext& ctx) {
  int W = ctx.Y.order;
  LX C2 = kX * kH;  // 1 + x + x^2
  SLX inner = mul_x(ctx.R, kH).scaled(Rat(3)) + lift_x(ctx.r1).scaled(Rat(3)) -
              mul_x(lift_x(ctx.r0), kXpXb);
  SLX xr0mt = mul_x(lift_x(ctx.r0), kX) - slx_t(W);
  SLX one(W, LX(1));
  SLX tXpXb(W);
  if (W >= 1) tXpXb.c[1] = kXpXb;
  return mul_x(inner, C2).shifted_up(1) + (one - tXpXb) * xr0mt;
}
}  // namespace

std::vector<IdentityReport> verify_kernel_cancellation(const KernelContext& ctx) {
  require_standard_rule(ctx, "verify_kernel_cancellation");
  int W = ctx.Y.order;
  const SLX& Y = ctx.Y;
  SLX one(W, LX(1));
  SLX Sx = ctx.S, Sxb = subst_x_inverse(ctx.S);
  SQ m00 = coeff_of_x(ctx.Mx0, 0), m10 = coeff_of_x(ctx.Mx0, 1);
  std::vector<IdentityReport> out;

  // relation among M(0,x), M(0,1/x), M(x,0) after cancelling the kernel,
  // cleared by t Y; uses t x M(0,x) = S(x)
  {
    SLX res = mul_x(Y * Y - one, kH) * (Sx - Sxb.scaled(Rat(2))) +
              mul_x(ctx.Mx0, kH).shifted_up(1).scaled(Rat(3)) * Y -
              mul_x(Y * Y, kXb.scaled(Rat(2))) + lift_x(m10).shifted_up(1).scaled(Rat(3)) * Y +
              (Y.scaled(Rat(2)) - SLX(W, kXpXb)) * lift_x(m00).shifted_up(1) * Y;
    out.push_back(residual_report("three-boundary-series-relation", res));
  }

  // sqrt(Delta)(t(1+x+x^2)(S(x)-2S(1/x)) + xR0 - t) = cleared right-hand side
  SLX rhat = cleared_rhat(ctx);
  {
    LX C2 = kX * kH;
    SLX xr0mt = mul_x(lift_x(ctx.r0), kX) - slx_t(W);
    SLX lhs = ctx.sqrtDelta * (mul_x(Sx - Sxb.scaled(Rat(2)), C2).shifted_up(1) + xr0mt);
    out.push_back(residual_report("two-boundary-series-relation", lhs - rhat));
  }

  // symmetrized form: sqrt(Delta)(G(x) - 2G(1/x)) = (3/x) * cleared right side
  {
    SLX lhs = ctx.sqrtDelta * (ctx.G - subst_x_inverse(ctx.G).scaled(Rat(2)));
    out.push_back(residual_report("symmetrized-boundary-relation",
                                  lhs - mul_x(rhat, kXb.scaled(Rat(3)))));
  }

  // evaluation at a primitive cube root of unity: (1+t) S(zeta) + R0 + 3R1 = 0
  {
    SZ sz = eval_at_zeta(ctx.S);
    SZ onet(sz.order, Zeta(1));
    if (sz.order >= 1) onet.c[1] = Zeta(1);
    SZ res = sz * onet + lift_zeta(ctx.r0 + ctx.r1.scaled(Rat(3)));
    out.push_back(residual_report("evaluation-at-cube-root", res));
  }

  // corner bookkeeping: x^0 coefficient of S vanishes; t^2 M_{0,0} = t S_1
  out.push_back(residual_report("boundary-series-x0-vanishes", coeff_of_x(ctx.S, 0)));
  out.push_back(
      residual_report("corner-series-link", ctx.r0 - coeff_of_x(ctx.S, 1).shifted_up(1)));
  return out;
}

// ---- product relation -------------------------------------------------------

std::vector<IdentityReport> verify_product_relation(const KernelContext& ctx) {
  require_standard_rule(ctx, "verify_product_relation");
  int W = ctx.Y.order;
  SLX delta = ctx.sqrtDelta * ctx.sqrtDelta;
  SLX Sx = ctx.S, Sxb = subst_x_inverse(ctx.S);
  SQ t = SQ::t_power(1, W), one(W, Rat(1));
  std::vector<IdentityReport> out;

  // Delta(x) [ t(x+1+1/x)(S(x)^2 + S(1/x)^2 - S(x)S(1/x)) + S(x)(xt - R0)
  //            + S(1/x)(t/x - R0) ]
  SLX xtmr0 = SLX::t_power(1, W, kX) - lift_x(ctx.r0);
  SLX xbtmr0 = SLX::t_power(1, W, kXb) - lift_x(ctx.r0);
  SLX lhs = delta * (mul_x(Sx * Sx + Sxb * Sxb - Sx * Sxb, kH).shifted_up(1) + Sx * xtmr0 +
                     Sxb * xbtmr0);

  // (R0+3R1)[(2R0+t)(t(x+1/x)(x+1+1/x) + 1 + t) - (1+t) t(x+1+1/x)]
  // + t(x+1+1/x)[ -(1+4t)(x+1/x)R0 + (t^2+tR0+R0^2)(x^2+1/x^2) - P0 ]
  SLX tXXbH(W);
  if (W >= 1) tXXbH.c[1] = kXpXb * kH;
  SLX tH(W);
  if (W >= 1) tH.c[1] = kH;
  SLX onet = lift_x(one + t);
  SLX rhs1 = lift_x(ctx.r0 + ctx.r1.scaled(Rat(3))) *
             (lift_x(ctx.r0.scaled(Rat(2)) + t) * (tXXbH + onet) - onet * tH);
  LX x2pxb2 = kX * kX + kXb * kXb;
  SLX rhs2 = mul_x(lift_x((one + t.scaled(Rat(4))) * ctx.r0), kXpXb).scaled(Rat(-1)) +
             mul_x(lift_x(t * t + t * ctx.r0 + ctx.r0 * ctx.r0), x2pxb2) - lift_x(ctx.p0);
  SLX res = lhs - rhs1 - mul_x(rhs2, kH).shifted_up(1);
  out.push_back(residual_report("boundary-product-relation", res));

  // the left-hand side is invariant under x -> 1/x
  out.push_back(residual_report("product-relation-x-symmetry", lhs - subst_x_inverse(lhs)));

  // derived scalar relation: 3t^2 S2 + 3t R0 + 3t^2 + 2B1 = 0
  SQ s2rel = ctx.s2.shifted_up(2).scaled(Rat(3)) + ctx.r0.shifted_up(1).scaled(Rat(3)) +
             SQ::t_power(2, W + 2, Rat(3)) + ctx.b1.scaled(Rat(2));
  out.push_back(residual_report("second-moment-relation", s2rel));
  return out;
}

// ---- catalytic cubic --------------------------------------------------------

namespace {

// The cubic in the symmetrized boundary series St reads
//   0 = c3 St^3 + c1 St + c0,
// with c1, c0 quadratic polynomials in z = t(x+1+1/x) + (1+t)/(x+1+1/x) whose
// coefficients are polynomials in the four scalars, and c3 a product of two
// linear factors in z.  This struct holds the z-coefficients; the edge rule
// selects between the two coefficient sets.
struct CubicCoeffs {
  SQ a1, b1, c1;  // c1(z) = a1 + b1 z + c1 z^2
  SQ a0, b0, c0;  // c0(z) = a0 + b0 z + c0 z^2
  bool variant = false;  // c3 = 27 t^2 (2t+z+1)(10t-3z+1), or 27 (...) if variant
};

CubicCoeffs cubic_coeffs(const SQ& r0, const SQ& r1, const SQ& b1s, const SQ& b2s,
                         EdgeRule rule) {
  int ord = std::min(std::min(r0.order, r1.order), std::min(b1s.order, b2s.order));
  SQ t = SQ::t_power(1, ord), one(ord, Rat(1));
  SQ R0 = r0.truncated(ord), R1 = r1.truncated(ord);
  SQ B1 = b1s.truncated(ord), B2 = b2s.truncated(ord);
  CubicCoeffs c;
  if (rule == EdgeRule::ForbidDiagonalJumps) {
    c.a1 = R0 * R0 * (t * t).scaled(Rat(216)) + R0 * R0 * t.scaled(Rat(54)) +
           t * R0 *
               (R1 * t.scaled(Rat(6)) + (t * t).scaled(Rat(6)) + B2.scaled(Rat(2)) + t)
                   .scaled(Rat(27)) -
           (t * t) *
               ((R1 * R1).scaled(Rat(27)) - R1 * t.scaled(Rat(27)) + (t * t).scaled(Rat(5)) +
                B1.scaled(Rat(3)) - B2.scaled(Rat(3)) - R1.scaled(Rat(9)) + t.scaled(Rat(6)) +
                one)
                   .scaled(Rat(9));
    c.b1 = t * R0 * (one - R1.scaled(Rat(6)) + t.scaled(Rat(2))).scaled(Rat(27)) -
           (t * t) * (R1.scaled(Rat(9)) - t.scaled(Rat(2)) - one.scaled(Rat(2))).scaled(Rat(9));
    c.c1 = -(R0 * R0 + t * R0).scaled(Rat(27));
    c.a0 = R0 * R0 *
               ((t * t).scaled(Rat(72)) + B1.scaled(Rat(18)) + t.scaled(Rat(18))) +
           t * R0 *
               (R1 * t.scaled(Rat(6)) + (t * t).scaled(Rat(6)) + B1.scaled(Rat(2)) +
                B2.scaled(Rat(2)) + t)
                   .scaled(Rat(9)) -
           (t * t) * ((R1 * R1).scaled(Rat(81)) - R1 * t.scaled(Rat(81)) - (t * t).scaled(Rat(5)) -
                      B1.scaled(Rat(9)) - B2.scaled(Rat(9)) - R1.scaled(Rat(27)) +
                      t.scaled(Rat(6)) + one.scaled(Rat(2)));
    c.b0 = t * R0 * (one - R1.scaled(Rat(6)) + t.scaled(Rat(2))).scaled(Rat(9)) -
           (t * t) * (R1.scaled(Rat(27)) - t.scaled(Rat(10)) - one.scaled(Rat(4)));
    c.c0 = -(R0 * R0).scaled(Rat(9)) - (t * R0).scaled(Rat(9)) - (t * t).scaled(Rat(3));
    c.variant = false;
  } else {
    c.a1 = R0 * (one.scaled(Rat(54)) + t.scaled(Rat(54)) - R1.scaled(Rat(243))) -
           (R1 * R1).scaled(Rat(243)) + R1 * t.scaled(Rat(243)) - (t * t).scaled(Rat(45)) -
           B1.scaled(Rat(27)) + B2.scaled(Rat(27)) + R1.scaled(Rat(81)) - t.scaled(Rat(54)) -
           one.scaled(Rat(9));
    c.b1 = -R1.scaled(Rat(81)) + t.scaled(Rat(18)) + one.scaled(Rat(18));
    c.c1 = SQ(ord);
    c.a0 = -(R0 * R0).scaled(Rat(81)) +
           R0 * (t.scaled(Rat(81)) + one.scaled(Rat(27)) - R1.scaled(Rat(162))) -
           (R1 * R1).scaled(Rat(81)) + R1 * t.scaled(Rat(81)) + (t * t).scaled(Rat(5)) +
           B1.scaled(Rat(9)) + B2.scaled(Rat(9)) + R1.scaled(Rat(27)) - t.scaled(Rat(6)) -
           one.scaled(Rat(2));
    c.b0 = -R0.scaled(Rat(27)) - R1.scaled(Rat(27)) + t.scaled(Rat(10)) + one.scaled(Rat(4));
    c.c0 = one.scaled(Rat(-3));
    c.variant = true;
  }
  return c;
}

}  // namespace

IdentityReport verify_catalytic_cubic(const KernelContext& ctx) {
  int W = ctx.Y.order;
  CubicCoeffs cc = cubic_coeffs(ctx.r0, ctx.r1, ctx.b1, ctx.b2, ctx.edge_rule);

  // zc = z (x+1+1/x) = t(x+1+1/x)^2 + 1 + t, a Laurent-polynomial series; all
  // terms of the cubic are multiplied by (x+1+1/x)^2 (3t(x-1/x))^3 so that
  // St (x-1/x) 3t = G clears every denominator
  SLX zc(W, LX(1));
  if (W >= 1) zc.c[1] = kH * kH + LX(1);
  SLX hL(W, kH), h2L(W, kH * kH);

  auto quad = [&](const SQ& a, const SQ& b, const SQ& cq) {
    return lift_x(a) * h2L + lift_x(b) * zc * hL + lift_x(cq) * zc * zc;
  };

  // c3 (x+1+1/x)^2 = 27 t^2 ((2t+1)(x+1+1/x) + zc)((10t+1)(x+1+1/x) - 3 zc)
  SQ t = SQ::t_power(1, W), one(W, Rat(1));
  SLX A1 = lift_x(one + t.scaled(Rat(2))) * hL + zc;
  SLX A2 = lift_x(one + t.scaled(Rat(10))) * hL - zc.scaled(Rat(3));
  SLX c3h2 = (A1 * A2).scaled(Rat(27));
  if (!cc.variant) c3h2 = c3h2.shifted_up(2);

  LX D2 = kD * kD, D3 = kD * kD * kD;
  const SLX& G = ctx.G;
  SLX res = c3h2 * G * G * G +
            quad(cc.a1, cc.b1, cc.c1) * G * SLX::t_power(2, W, D2.scaled(Rat(9))) +
            quad(cc.a0, cc.b0, cc.c0) * SLX::t_power(3, W, D3.scaled(Rat(27)));
  return residual_report(cc.variant ? "catalytic-cubic-variant" : "catalytic-cubic", res);
}

IdentityReport verify_catalytic_cubic_at(const KernelContext& ctx, const Rat& x0,
                                         const ScalarOverride* alt) {
  if (is_zero(x0) || x0 == Rat(1) || x0 == Rat(-1) || is_zero(Rat(1 + x0 + x0 * x0)))
    throw kernel_error("verify_catalytic_cubic_at: x0 must avoid 0, 1, -1 and 1+x+x^2=0");
  int ord = ctx.N + 1;
  SQ t = SQ::t_power(1, ord), one(ord, Rat(1));
  Rat xb = inv(x0);
  Rat y0 = Rat(x0 + 1 + xb);
  SQ z = t.scaled(y0) + (one + t).scaled(inv(y0));

  SQ sx0 = eval_at_rat(ctx.M0x, x0).shifted_up(1).scaled(x0);
  SQ r0 = alt ? alt->r0 : ctx.r0;
  SQ st = sx0.scaled(y0) + one.scaled(x0 * ratio(2, 3) + xb * ratio(1, 3));
  if (ctx.edge_rule == EdgeRule::ForbidDiagonalJumps) st = st - r0.shifted_down(1);
  st = st.scaled(inv(Rat(x0 - xb)));

  CubicCoeffs cc = cubic_coeffs(r0, alt ? alt->r1 : ctx.r1, alt ? alt->b1 : ctx.b1,
                                alt ? alt->b2 : ctx.b2, ctx.edge_rule);
  SQ c3 = ((one + t.scaled(Rat(2)) + z) * (one + t.scaled(Rat(10)) - z.scaled(Rat(3))))
              .scaled(Rat(27));
  if (!cc.variant) c3 = c3.shifted_up(2);
  SQ c1 = cc.a1 + cc.b1 * z + cc.c1 * z * z;
  SQ c0 = cc.a0 + cc.b0 * z + cc.c0 * z * z;
  SQ res = c3 * st * st * st + c1 * st + c0;
  std::string name = std::string(cc.variant ? "catalytic-cubic-variant" : "catalytic-cubic") +
                     "-at-" + to_string(x0) + (alt ? "-closed-scalars" : "");
  return residual_report(name, res);
}

}  // namespace walks
