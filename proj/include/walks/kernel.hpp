#pragma once
// Consistency net for the king model in the three-quadrant cone: builds the
// boundary series M(x,0) and M(0,x) from enumeration tables, the power-series
// root of the kernel and the square root of its discriminant, and verifies (as
// truncated-series residuals) the chain of identities that reduces the model
// to a cubic equation in a single catalytic variable.  All identities are
// checked in denominator-cleared form so that every object stays a power
// series in t with Laurent-polynomial coefficients in x.

#include <optional>
#include <string>
#include <vector>

#include "walks/enumerate.hpp"
#include "walks/series.hpp"

namespace walks {

struct kernel_error : ring_error {
  using ring_error::ring_error;
};

// multiply every Laurent coefficient by a fixed Laurent polynomial
inline SLX mul_x(const SLX& s, const LX& m) {
  return map_coeffs<LX, LX>(s, [&](const LX& l) { return l * m; });
}
// view a scalar series as a series with constant-in-x coefficients
inline SLX lift_x(const SQ& s) {
  return map_coeffs<Rat, LX>(s, [](const Rat& q) { return LX(q); });
}

struct FirstFailure {
  int t_order = 0;
  int x_exponent = 0;
  Rat delta;  // offending coefficient of the residual
};

struct IdentityReport {
  std::string identity;
  int certified_order = -1;  // residual known to vanish through this t-order
  std::optional<FirstFailure> first_failure;
  bool ok() const { return !first_failure.has_value(); }
};

std::string to_json(const IdentityReport& r);
std::string to_json(const std::vector<IdentityReport>& rs);

// report helpers (used by other verification code as well)
IdentityReport residual_report(const std::string& name, const SLX& res);
IdentityReport residual_report(const std::string& name, const SQ& res);
IdentityReport residual_report(const std::string& name, const SZ& res);

struct KernelContext {
  int N = 0;                   // enumeration order: tables computed for 0..N
  EdgeRule edge_rule = EdgeRule::ForbidDiagonalJumps;
  SLX Mx0;                     // M(x,0): coefficient of x^i is the (-1-i, 0) cell
  SLX M0x;                     // M(0,x): coefficient of x^j is the (-1, j) cell
  SLX R;                       // R(x) = t^2 M(x,0)
  SLX S;                       // S(x) = t x M(0,x)
  SLX Y;                       // power-series root in y of the kernel
  SLX sqrtDelta;               // sqrt of the kernel discriminant in x
  SLX G;                       // 3t(x+1+1/x) * (shifted boundary series); the
                               // denominator-free form of the symmetrized S
  SQ r0, r1;                   // corner scalars t^2 M_{0,0}, t^2 M_{1,0}
  SQ b1, b2;                   // real / i*sqrt(3) parts of (1+t)^2 zeta S'(zeta)
  SQ s2;                       // coefficient of x^2 in S(x)
  SQ p0;                       // coefficient of x^0 in Delta(x) S(x) S(1/x)
};

// Enumerates the weighted cone tables for the king model up to length N and
// derives every series of the context.  N >= 6.
KernelContext build_context(int N, EdgeRule rule = EdgeRule::ForbidDiagonalJumps);

// Derive the context from given boundary series (used for mutation testing:
// tamper with a coefficient and check that the identities notice).
KernelContext context_from_series(int N, EdgeRule rule, const SLX& Mx0, const SLX& M0x);

// Kernel root and discriminant: the quadratic satisfied by Y, its x -> 1/x
// symmetry, the square root of the discriminant, and the closed form of Y in
// terms of it.  (Standard edge rule only for the later relations; these four
// hold for both rules since the kernel is the same.)
std::vector<IdentityReport> verify_kernel_root(const KernelContext&);

// The relation linking M(x,0), M(0,x) and M(0,1/x) obtained by cancelling the
// kernel, its rewriting with the discriminant square root on one side, the
// symmetrized version, the evaluation at a primitive cube root of unity, and
// the corner bookkeeping (x^0 coefficient of S vanishes, t^2 M_{0,0} = t S_1).
// Standard edge rule only.
std::vector<IdentityReport> verify_kernel_cancellation(const KernelContext&);

// The quadratic relation for Delta(x) S(x) S(1/x) free of M(x,0), its x -> 1/x
// symmetry, and the derived scalar relation for the x^2 coefficient of S.
// Standard edge rule only.
std::vector<IdentityReport> verify_product_relation(const KernelContext&);

// The cubic equation in one catalytic variable, verified symbolically in x in
// denominator-cleared form.  Uses the coefficient set matching the context's
// edge rule.
IdentityReport verify_catalytic_cubic(const KernelContext&);

// Same cubic evaluated at a rational point x0 (no clearing needed there).  The
// scalars default to the enumeration-derived ones from the context; pass an
// override to certify externally computed (e.g. closed-form) scalars.
struct ScalarOverride {
  SQ r0, r1, b1, b2;
};
IdentityReport verify_catalytic_cubic_at(const KernelContext&, const Rat& x0,
                                         const ScalarOverride* alt = nullptr);

}  // namespace walks
