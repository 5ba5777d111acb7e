#pragma once
// Predicted asymptotic constants for the king model in the three-quadrant
// cone (growth 8^n with polynomial corrections), computed by exact real-root
// isolation of small integer cubics plus high-precision evaluation, and
// empirical growth fits from normalized floating-point enumeration.

#include <functional>
#include <string>
#include <vector>

#include "walks/enumerate.hpp"

namespace walks {

struct asymptotics_error : ring_error {
  using ring_error::ring_error;
};
struct sequence_too_short : asymptotics_error {
  using asymptotics_error::asymptotics_error;
};

// a3 x^3 + a2 x^2 + a1 x + a0 with exact integer coefficients
struct Cubic {
  Int a3, a2, a1, a0;
};

Cubic cubic_total_K();    // constant of the all-endpoints series
Cubic cubic_origin_L();   // constant of the walks-to-origin correction term
Cubic cubic_singular_vc();  // 4v^3 + 3v^2 - 1, the singular value of v

// exact discriminant sign test: true iff the cubic has one real root
bool has_unique_real_root(const Cubic& c);

struct RootIsolation {
  std::string value;           // decimal, `digits` significant digits
  std::string interval_width;  // final bracket width (decimal)
  int newton_steps = 0;
};
// Bracketed Newton on (0,1): every iterate keeps a sign change across the
// interval, which shrinks below 10^-(digits+5).  Throws asymptotics_error if
// the cubic has no sign change on (0,1).
RootIsolation isolate_real_root(const Cubic& c, int digits = 33);

struct AsymptoticPrediction {
  std::string series;  // "total" | "origin"
  int growth = 8;
  Rat exponent;                     // -1/3 | -5/3
  std::string constant;             // leading constant, >= 30 digits
  Rat correction_exponent;          // -1 | -7/3
  std::string correction_constant;  // signed coefficient of the next term
};
// count ~ constant * 8^n * n^exponent
//       + correction_constant * 8^n * n^correction_exponent + ...
AsymptoticPrediction predicted(const std::string& series);

// The leading constant assembled along the independent singular-expansion
// route (v_c, w_c and a Gamma factor) instead of the K/L cubics.
std::string singular_route_constant(const std::string& series, int digits = 25);
// relative difference between the two routes (should be ~0)
double route_disagreement(const std::string& series);

// relative error of Gamma(2/3)*Gamma(1/3) against 2*pi/sqrt(3)
double gamma_reflection_error();

// counts / |steps|^n from a normalized floating-point DP
struct RealSeries {
  std::vector<double> total, origin;
};
RealSeries real_dp_normalized(const StepSet& s, RegionKind r, int N);

struct EmpiricalFit {
  double exponent = 0, constant = 0;
  double exponent_spread = 0, constant_spread = 0;  // last-two-iterate spread
};
// normalized[n] ~ C * n^alpha + correction(n): the known next-order term is
// subtracted, the exponent is estimated from dyadic ratios and the constant
// against n^alpha, both stabilized by one Richardson step.  Requires >= 200
// terms (throws sequence_too_short).
EmpiricalFit empirical_fit(const std::vector<double>& normalized, double alpha,
                           const std::function<double(int)>& correction = {});

std::string to_json(const AsymptoticPrediction& p);

}  // namespace walks
