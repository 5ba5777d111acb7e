#pragma once
// Step-set models, the dihedral group of a model, orbit sums, and the affine
// action on lattice points.
//
// With S(x,y) = H-(x)/y + H0(x) + H+(x) y = V-(y)/x + V0(y) + V+(y) x,
// the group is generated by the two involutions
//   phi: (u,v) -> (1/u * V-(v)/V+(v), v)
//   psi: (u,v) -> (u, 1/v * H-(u)/H+(u)),
// which fix S.  For all supported models both ratios are monomials, so every
// group element acts by a monomial pair with a rational coefficient.

#include <string>
#include <vector>

#include "walks/laurent.hpp"
#include "walks/laurent2.hpp"
#include "walks/ring.hpp"

namespace walks {

struct model_error : ring_error {
  using ring_error::ring_error;
};
struct degenerate_model : model_error {
  using model_error::model_error;
};
struct non_monomial_group : model_error {
  using model_error::model_error;
};

struct Step {
  int dx, dy;
  friend bool operator==(Step a, Step b) { return a.dx == b.dx && a.dy == b.dy; }
};

enum class EdgeRule { ForbidDiagonalJumps, AllowDiagonalJumps };

struct StepSet {
  std::vector<Step> steps;
  std::string name;
  EdgeRule edge_rule = EdgeRule::ForbidDiagonalJumps;

  bool has(int dx, int dy) const {
    for (auto s : steps)
      if (s.dx == dx && s.dy == dy) return true;
    return false;
  }
};

// registry of the models of Tables 1 and 2 (seven Weyl models and the four
// zero-orbit-sum models)
const std::vector<std::string>& builtin_model_names();
const std::vector<std::string>& weyl_model_names();
StepSet model_by_name(const std::string& name);
StepSet mirrored(const StepSet& s);  // x/y swap

Laurent2 step_polynomial(const StepSet& s);  // S(x,y)
Laurent2 kernel_polynomial_coeff(const StepSet& s);  // S again; K = 1 - t S

// rows of the decomposition above, as univariate Laurent polynomials
LX H_part(const StepSet& s, int dy);  // H_{dy}(x), dy in {-1,0,1}
LX V_part(const StepSet& s, int dx);  // V_{dx}(y)

struct GroupElement {
  std::string word;  // over {'p' (phi), 's' (psi)}, shortest representative
  int length = 0;
  int sign = 1;  // (-1)^length
  // x -> cx * x^xe[0] y^xe[1],  y -> cy * x^ye[0] y^ye[1]
  int xe[2] = {1, 0}, ye[2] = {0, 1};
  Rat cx = Rat(1), cy = Rat(1);

  std::pair<int, int> image_exponents(int p, int q) const {
    return {p * xe[0] + q * ye[0], p * xe[1] + q * ye[1]};
  }
  Rat image_coeff(int p, int q) const;
  // g(x^p y^q) as a one-term Laurent polynomial
  Laurent2 apply_monomial(int p, int q, const Rat& coeff = Rat(1)) const;
  Laurent2 apply(const Laurent2& f) const;
  // affine action: g'(a,b) defined by x^c y^d = (1/(xy)) g(x^(a+1) y^(b+1))
  std::pair<int, int> affine(int a, int b) const;
  bool on_wall(int a, int b) const { return affine(a, b) == std::make_pair(a, b); }
  bool identity() const { return xe[0] == 1 && xe[1] == 0 && ye[0] == 0 && ye[1] == 1 && cx == 1 && cy == 1; }
};

enum class GroupKind { Finite, Infinite, NonMonomial };

struct Group {
  GroupKind kind = GroupKind::Finite;
  std::vector<GroupElement> elements;  // sorted by word length, identity first
  int order() const { return (int)elements.size(); }
  int d() const { return order() / 2; }
  // the unique longest element when finite
  const GroupElement& omega() const;
};

Group build_group(const StepSet& s, int word_cap = 20);

Laurent2 orbit_sum(const Group& g, int a, int b);

struct AffinePoint {
  std::pair<int, int> point;
  int sign;
  const GroupElement* element;
};
std::vector<AffinePoint> affine_orbit(const Group& g, int a, int b);

enum class ModelClass { TrivialRational, HalfPlaneEquivalent, Singular, Interesting };
ModelClass classify_model(const StepSet& s);

// JSON loaders/savers (descriptor: {"name": str, "steps": [[dx,dy],...],
// "edge_rule": "forbid"|"allow"})
StepSet model_from_json(const std::string& text);
std::string model_to_json(const StepSet& s);

}  // namespace walks
