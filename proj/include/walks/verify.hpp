#pragma once
// Exact cross-checks on enumeration tables: the step-by-step functional
// equations of the cone, quadrant and weighted-start series, orbit-sum
// identities, the cellwise decomposition of the cone table into a weighted
// part plus reflected quadrant images, chamber splits of the weighted table,
// and endpoint reflection identities for arbitrary starting points.  Every
// check is exact integer/rational arithmetic; a pass means the residual is
// identically zero on the examined window, and a failure reports the first
// offending (t-order, cell).

#include <optional>
#include <string>
#include <vector>

#include "walks/enumerate.hpp"

namespace walks {

struct verify_error : enumerate_error {
  using enumerate_error::enumerate_error;
};
struct start_outside_region : verify_error {
  using verify_error::verify_error;
};

struct CellFailure {
  int n = 0;  // t-order (walk length)
  int i = 0, j = 0;
  Rat delta;  // offending residual coefficient
};

struct IdentityCheck {
  std::string id;
  std::string model;
  std::string region;
  int N = 0;  // orders checked: 0..N
  int W = 0;  // window bound |i|,|j| <= W
  bool pass = true;
  std::optional<CellFailure> first_failure;
};

std::string to_json(const IdentityCheck& c);
std::string to_json(const std::vector<IdentityCheck>& cs);

// Which series the functional-equation / orbit-sum check targets.
enum class EqTarget {
  Cone,          // walks in the three-quadrant cone from the origin
  Quadrant,      // walks in the quarter plane from the origin
  Weighted,      // the weighted-start cone series with zero orbit sum
  LeftBoundary,  // the negative-abscissa part of the weighted table (king only)
};

// All tables one model needs for the table-level checks, enumerated once.
struct VerifyData {
  StepSet model;
  int N = 0;
  int W = 0;
  std::vector<WalkTable<Int>> C;  // cone, start (0,0)
  std::vector<WalkTable<Int>> Q;  // quadrant, start (0,0)
  std::vector<WalkTable<Int>> A;  // cone, weighted start (raw, scaled values)
  long a_scale = 1;               // A holds a_scale * (true weighted counts)
};

// Enumerates C/Q (and A when the group is finite) up to length N.  The window
// defaults to N+4 so that image cells of x/y-inverting substitutions stay
// inside it.
VerifyData build_verify_data(const StepSet& model, int N, int window = -1);

// K * F = initial - t * (boundary corrections), checked order by order.
// Cone supports both edge rules; Weighted/LeftBoundary require the standard
// rule (and a finite monomial group / the king model respectively).
IdentityCheck check_functional_equation(const VerifyData& vd, EqTarget target);

// K * sum_g sign(g) g(xy F) equals the alternating orbit sum of xy (target
// Cone or Quadrant).  For the zero-orbit-sum models this forces the
// alternating table sum to vanish identically.
IdentityCheck check_orbit_sum(const VerifyData& vd, EqTarget target);

// Cellwise: (2d-1) C = A + sum over the 2d-2 non-extremal group elements of
// signed quadrant-table images, plus the three boundary-slice identities
// (negative x-axis, negative y-axis, corner).  Standard edge rule only.
IdentityCheck check_decomposition(const VerifyData& vd);

// Splits the weighted table into chamber slices indexed by the group and
// checks that their alternating sum vanishes; for models symmetric in both
// axes also checks the equivalent split through the left/bottom parts.
std::vector<IdentityCheck> check_PM_relations(const VerifyData& vd);

// Reflection identity for walks started at (a,b) in the cone: for every
// endpoint (i,j) in the quadrant with i,j <= box and every n <= N, the signed
// sum of cone counts over the affine orbit of (i,j) (extremal element
// excluded) equals 0 when (a,b) lies on a wall, and otherwise equals the
// signed quadrant count from the reflected starting point.
IdentityCheck check_reflection(const StepSet& model, int a, int b, int N, int box);

// Named dispatch used by the CLI.
const std::vector<std::string>& verify_identity_names();
std::vector<IdentityCheck> run_identity(const std::string& id, const StepSet& model, int N);

}  // namespace walks
