#include "walks/verify.hpp"

#include <json.hpp>

#include "walks/model.hpp"

namespace walks {

namespace {

nlohmann::json check_json(const IdentityCheck& c) {
  nlohmann::json j;
  j["id"] = c.id;
  j["model"] = c.model;
  j["region"] = c.region;
  j["order"] = c.N;
  j["window"] = c.W;
  j["pass"] = c.pass;
  if (c.first_failure) {
    j["first_failure"] = {{"n", c.first_failure->n},
                          {"i", c.first_failure->i},
                          {"j", c.first_failure->j},
                          {"delta", c.first_failure->delta.get_str()}};
  } else {
    j["first_failure"] = nullptr;
  }
  return j;
}

// record the first nonzero residual coefficient (lowest n, then lex cell)
void scan(IdentityCheck& chk, int n, const Laurent2& res) {
  if (!chk.pass || res.zero()) return;
  const auto& [e, c] = *res.m.begin();
  chk.pass = false;
  chk.first_failure = CellFailure{n, e.first, e.second, c};
}

void scan_value(IdentityCheck& chk, int n, int i, int j, const Rat& delta) {
  if (!chk.pass || is_zero(delta)) return;
  chk.pass = false;
  chk.first_failure = CellFailure{n, i, j, delta};
}

Laurent2 scaled(const Laurent2& f, const Rat& s) {
  Laurent2 r;
  if (is_zero(s)) return r;
  for (auto& [e, c] : f.m) r.m[e] = c * s;
  return r;
}

Rat cell(const WalkTable<Int>& t, int i, int j) {
  return t.inside(i, j) ? Rat(t.at(i, j)) : Rat(0);
}

Laurent2 table_poly(const WalkTable<Int>& t) {
  Laurent2 r;
  int box = std::min(t.W, t.radius);
  for (int i = -box; i <= box; ++i)
    for (int j = -box; j <= box; ++j)
      if (sgn(t.at(i, j)) != 0) r.m[{i, j}] = Rat(t.at(i, j));
  return r;
}

// sum_{i<0} c_{i,0} x^i  /  sum_{j<0} c_{0,j} y^j as bivariate polynomials
Laurent2 neg_x_axis(const WalkTable<Int>& t) {
  Laurent2 r;
  for (int i = -std::min(t.W, t.radius); i < 0; ++i) r.add_term(cell(t, i, 0), i, 0);
  return r;
}
Laurent2 neg_y_axis(const WalkTable<Int>& t) {
  Laurent2 r;
  for (int j = -std::min(t.W, t.radius); j < 0; ++j) r.add_term(cell(t, 0, j), 0, j);
  return r;
}
Laurent2 pos_x_axis(const WalkTable<Int>& t) {
  Laurent2 r;
  for (int i = 0; i <= std::min(t.W, t.radius); ++i) r.add_term(cell(t, i, 0), i, 0);
  return r;
}
Laurent2 pos_y_axis(const WalkTable<Int>& t) {
  Laurent2 r;
  for (int j = 0; j <= std::min(t.W, t.radius); ++j) r.add_term(cell(t, 0, j), 0, j);
  return r;
}

// univariate Laurent polynomial as a bivariate one, in x or in y
Laurent2 lx_to_l2(const LX& l, bool in_y) {
  Laurent2 r;
  if (l.zero()) return r;
  for (int e = l.deg_lo(); e <= l.deg_hi(); ++e) {
    const Rat& c = l.coeff(e);
    if (!is_zero(c)) r.m[in_y ? std::make_pair(0, e) : std::make_pair(e, 0)] = c;
  }
  return r;
}

// sum over the group of sign(g) * g(xy * F) for a table polynomial F
Laurent2 signed_orbit_image(const Group& g, const Laurent2& f) {
  Laurent2 r;
  for (auto& e : g.elements)
    for (auto& [exp, c] : f.m) r += e.apply_monomial(exp.first + 1, exp.second + 1, c * e.sign);
  return r;
}

bool vh_symmetric(const StepSet& s) {
  for (auto st : s.steps)
    if (!s.has(-st.dx, st.dy) || !s.has(st.dx, -st.dy)) return false;
  return true;
}

bool is_weyl(const StepSet& s) {
  for (auto& n : weyl_model_names())
    if (n == s.name) return true;
  return false;
}

void require_standard_rule(const StepSet& s, const char* what) {
  if (s.edge_rule != EdgeRule::ForbidDiagonalJumps)
    throw verify_error(std::string(what) + ": supported for the standard edge rule only");
}

IdentityCheck make_check(std::string id, const VerifyData& vd, const char* region) {
  return IdentityCheck{std::move(id), vd.model.name, region, vd.N, vd.W, true, std::nullopt};
}

}  // namespace

std::string to_json(const IdentityCheck& c) { return check_json(c).dump(); }

std::string to_json(const std::vector<IdentityCheck>& cs) {
  nlohmann::json j = nlohmann::json::array();
  for (auto& c : cs) j.push_back(check_json(c));
  return j.dump();
}

VerifyData build_verify_data(const StepSet& model, int N, int window) {
  if (N < 1) throw verify_error("build_verify_data: need N >= 1");
  VerifyData vd;
  vd.model = model;
  vd.N = N;
  Group g = build_group(model);
  StartDistribution ws;
  bool weighted = g.kind == GroupKind::Finite && is_weyl(model);
  int reach = N + 4;  // room for the x/y-inverting image cells
  if (weighted) {
    ws = a_weighted_start(model);
    for (auto& [i, j, w] : ws.entries)
      reach = std::max({reach, N + 3 + std::abs(i), N + 3 + std::abs(j)});
  }
  vd.W = window > 0 ? window : reach;
  if (vd.W < reach) throw verify_error("build_verify_data: window too small for this model");
  vd.C = exact_tables(model, RegionKind::ThreeQuadrant, StartDistribution::origin(), N, vd.W);
  vd.Q = exact_tables(model, RegionKind::Quadrant, StartDistribution::origin(), N, vd.W);
  if (weighted) {
    vd.a_scale = ws.scale;
    vd.A = exact_tables(model, RegionKind::ThreeQuadrant, ws, N, vd.W);
  }
  return vd;
}

IdentityCheck check_functional_equation(const VerifyData& vd, EqTarget target) {
  const StepSet& s = vd.model;
  Laurent2 S = step_polynomial(s);
  Laurent2 Hm = lx_to_l2(H_part(s, -1), false);  // H_-(x)
  Laurent2 Vm = lx_to_l2(V_part(s, -1), true);   // V_-(y)
  Laurent2 ybar = Laurent2::term(Rat(1), 0, -1);
  Laurent2 xbar = Laurent2::term(Rat(1), -1, 0);
  bool diag = s.has(-1, -1);

  switch (target) {
    case EqTarget::Cone: {
      IdentityCheck chk = make_check("functional-equation-cone", vd, "three-quadrant");
      bool variant = s.edge_rule == EdgeRule::AllowDiagonalJumps;
      for (int n = 0; n <= vd.N; ++n) {
        Laurent2 res = table_poly(vd.C[n]);
        if (n == 0) {
          res -= Laurent2(1);
        } else {
          const WalkTable<Int>& prev = vd.C[n - 1];
          res -= S * table_poly(prev);
          res += ybar * Hm * neg_x_axis(prev);
          res += xbar * Vm * neg_y_axis(prev);
          if (diag) res += Laurent2::term(cell(prev, 0, 0), -1, -1);
          if (variant) {
            if (s.has(1, -1)) res -= Laurent2::term(cell(prev, -1, 0), 0, -1);
            if (s.has(-1, 1)) res -= Laurent2::term(cell(prev, 0, -1), -1, 0);
          }
        }
        scan(chk, n, res);
        if (!chk.pass) break;
      }
      return chk;
    }

    case EqTarget::Quadrant: {
      IdentityCheck chk = make_check("functional-equation-quadrant", vd, "quadrant");
      for (int n = 0; n <= vd.N; ++n) {
        Laurent2 res = table_poly(vd.Q[n]);
        if (n == 0) {
          res -= Laurent2(1);
        } else {
          const WalkTable<Int>& prev = vd.Q[n - 1];
          res -= S * table_poly(prev);
          res += ybar * Hm * pos_x_axis(prev);
          res += xbar * Vm * pos_y_axis(prev);
          if (diag) res -= Laurent2::term(cell(prev, 0, 0), -1, -1);
        }
        scan(chk, n, res);
        if (!chk.pass) break;
      }
      return chk;
    }

    case EqTarget::Weighted: {
      require_standard_rule(s, "functional-equation-weighted");
      if (vd.A.empty()) throw verify_error("functional-equation-weighted: group not finite");
      IdentityCheck chk = make_check("functional-equation-weighted", vd, "three-quadrant");
      Group g = build_group(s);
      int d = g.d();
      // scaled initial term: (2d-1) - (1/(xy)) OS(xy) + (-1)^d / (xy)^2
      Laurent2 init(2 * d - 1);
      init -= xbar * ybar * orbit_sum(g, 0, 0);
      init += Laurent2::term(Rat(d % 2 == 0 ? 1 : -1), -2, -2);
      for (int n = 0; n <= vd.N; ++n) {
        Laurent2 res = table_poly(vd.A[n]);
        if (n == 0) {
          res -= init;
        } else {
          const WalkTable<Int>& prev = vd.A[n - 1];
          res -= S * table_poly(prev);
          res += ybar * Hm * neg_x_axis(prev);
          res += xbar * Vm * neg_y_axis(prev);
          if (diag) res += Laurent2::term(cell(prev, 0, 0), -1, -1);
        }
        scan(chk, n, res);
        if (!chk.pass) break;
      }
      return chk;
    }

    case EqTarget::LeftBoundary: {
      require_standard_rule(s, "functional-equation-left-boundary");
      if (s.name != "king")
        throw verify_error("functional-equation-left-boundary: king model only");
      IdentityCheck chk = make_check("functional-equation-left-boundary", vd, "three-quadrant");
      Laurent2 Hx = lx_to_l2(H_part(s, -1), false);  // x + 1 + 1/x
      Laurent2 Hy = lx_to_l2(H_part(s, -1), true);   // y + 1 + 1/y
      Laurent2 xmxb = Laurent2::term(Rat(1), 1, 0) - xbar;
      // 1 + 1/y^2 - 2/(xy)
      Laurent2 corner = Laurent2(1) + Laurent2::term(Rat(1), 0, -2) - Laurent2::term(Rat(2), -1, -1);
      // M slices of the raw weighted table: M_{i,j} = A_{-1-i, j}
      auto m_full = [&](const WalkTable<Int>& t) {
        Laurent2 r;
        for (int i = 0; i < t.W; ++i)
          for (int j = 0; j <= std::min(t.W, t.radius); ++j) r.add_term(cell(t, -1 - i, j), i, j);
        return r;
      };
      auto m_row = [&](const WalkTable<Int>& t, bool in_y) {  // M(x,0) or M(y,0)
        Laurent2 r;
        for (int i = 0; i < t.W; ++i)
          r += in_y ? Laurent2::term(cell(t, -1 - i, 0), 0, i)
                    : Laurent2::term(cell(t, -1 - i, 0), i, 0);
        return r;
      };
      auto m_col = [&](const WalkTable<Int>& t) {  // M(0,y)
        Laurent2 r;
        for (int j = 0; j <= std::min(t.W, t.radius); ++j) r.add_term(cell(t, -1, j), 0, j);
        return r;
      };
      for (int n = 0; n <= vd.N; ++n) {
        // target series: 2 M(x,y) - M(0,y), with raw (3x) values throughout
        Laurent2 res = scaled(m_full(vd.A[n]), Rat(2)) - m_col(vd.A[n]);
        if (n == 0) {
          res -= Laurent2::term(Rat(2), 1, 0);
        } else {
          const WalkTable<Int>& prev = vd.A[n - 1];
          res -= S * (scaled(m_full(prev), Rat(2)) - m_col(prev));
          res += ybar * Hx * m_row(prev, false) * Laurent2(2);
          res -= ybar * Hy * m_row(prev, true);
          res -= xmxb * Hy * m_col(prev);
          res += corner * Laurent2::term(cell(prev, -1, 0), 0, 0);
          res += ybar * Laurent2::term(cell(prev, -2, 0), 0, 0);
        }
        scan(chk, n, res);
        if (!chk.pass) break;
      }
      return chk;
    }
  }
  throw verify_error("check_functional_equation: unknown target");
}

IdentityCheck check_orbit_sum(const VerifyData& vd, EqTarget target) {
  if (target != EqTarget::Cone && target != EqTarget::Quadrant)
    throw verify_error("check_orbit_sum: target must be Cone or Quadrant");
  bool cone = target == EqTarget::Cone;
  const auto& tables = cone ? vd.C : vd.Q;
  IdentityCheck chk = make_check(cone ? "orbit-sum-cone" : "orbit-sum-quadrant", vd,
                                 cone ? "three-quadrant" : "quadrant");
  Group g = build_group(vd.model);
  Laurent2 S = step_polynomial(vd.model);
  Laurent2 os = orbit_sum(g, 0, 0);
  Laurent2 prev_img;
  for (int n = 0; n <= vd.N; ++n) {
    Laurent2 img = signed_orbit_image(g, table_poly(tables[n]));
    Laurent2 res = img;
    if (n == 0)
      res -= os;
    else
      res -= S * prev_img;
    scan(chk, n, res);
    if (!chk.pass) break;
    prev_img = std::move(img);
  }
  return chk;
}

IdentityCheck check_decomposition(const VerifyData& vd) {
  require_standard_rule(vd.model, "check_decomposition");
  if (!is_weyl(vd.model)) throw verify_error("check_decomposition: not a Weyl model");
  IdentityCheck chk = make_check("decomposition", vd, "three-quadrant");
  Group g = build_group(vd.model);
  int d = g.d();
  Rat scale(2 * d - 1);
  Laurent2 xbybar = Laurent2::term(Rat(1), -1, -1);
  int sgn_lo = d % 2 == 0 ? -1 : 1;  // (-1)^(d-1)

  for (int n = 0; n <= vd.N; ++n) {
    // cellwise: (2d-1) C = A + sum_{h != omega} sign(h) * (1/(xy)) h(xy Q)
    Laurent2 rhs = table_poly(vd.A[n]);
    Laurent2 qpoly = table_poly(vd.Q[n]);
    for (auto& e : g.elements) {
      if (e.length == d) continue;
      for (auto& [exp, c] : qpoly.m)
        rhs += xbybar * e.apply_monomial(exp.first + 1, exp.second + 1, c * e.sign);
    }
    scan(chk, n, scaled(table_poly(vd.C[n]), scale) - rhs);
    if (!chk.pass) return chk;

    // negative x-axis slice
    Laurent2 resx = scaled(neg_x_axis(vd.C[n]), scale) - neg_x_axis(vd.A[n]);
    for (int k = 0; k <= std::min(vd.W, vd.Q[n].radius); ++k) {
      Rat q = d == 3 ? cell(vd.Q[n], 0, k) : cell(vd.Q[n], k, 0);
      resx -= Laurent2::term(q * sgn_lo, -d - k, 0);
    }
    scan(chk, n, resx);
    if (!chk.pass) return chk;

    // negative y-axis slice
    Laurent2 resy = scaled(neg_y_axis(vd.C[n]), scale) - neg_y_axis(vd.A[n]);
    int m = d == 2 ? 2 : 3;
    for (int k = 0; k <= std::min(vd.W, vd.Q[n].radius); ++k) {
      Rat q = d == 3 ? cell(vd.Q[n], k, 0) : cell(vd.Q[n], 0, k);
      resy -= Laurent2::term(q * sgn_lo, 0, -m - k);
    }
    scan(chk, n, resy);
    if (!chk.pass) return chk;

    // corner
    scan_value(chk, n, 0, 0,
               cell(vd.C[n], 0, 0) * scale - cell(vd.A[n], 0, 0) - cell(vd.Q[n], 0, 0));
    if (!chk.pass) return chk;
  }
  return chk;
}

std::vector<IdentityCheck> check_PM_relations(const VerifyData& vd) {
  if (vd.A.empty() || !is_weyl(vd.model))
    throw verify_error("check_PM_relations: not a Weyl model");
  std::vector<IdentityCheck> out;
  Group g = build_group(vd.model);
  int d = g.d();

  IdentityCheck alt = make_check("chamber-alternating-sum", vd, "three-quadrant");
  for (int n = 0; n <= vd.N && alt.pass; ++n) {
    Laurent2 res;
    for (auto& e : g.elements) {
      if (e.length == d) continue;
      for (int i = 0; i <= vd.W; ++i)
        for (int j = 0; j <= vd.W; ++j) {
          auto [k, l] = e.affine(i, j);
          res.add_term(cell(vd.A[n], k, l) * e.sign, i, j);
        }
    }
    scan(alt, n, res);
  }
  out.push_back(std::move(alt));

  if (vh_symmetric(vd.model)) {
    IdentityCheck plb = make_check("chamber-left-bottom-split", vd, "three-quadrant");
    for (int n = 0; n <= vd.N && plb.pass; ++n) {
      const WalkTable<Int>& t = vd.A[n];
      int box = std::min(vd.W, t.radius);
      Laurent2 res;
      for (int i = 0; i <= box; ++i)
        for (int j = 0; j <= box; ++j) res.add_term(cell(t, i, j), i, j);  // quadrant part
      // (1/x)(L(x,y) - L(0,y)): cells (-1-i, j) with i >= 1, shifted to (i-1, j)
      for (int i = 1; i <= box; ++i)
        for (int j = 0; j <= box; ++j) res.add_term(-cell(t, -1 - i, j), i - 1, j);
      // (1/y)(B(x,y) - B(x,0)): cells (i, -1-j) with j >= 1, shifted to (i, j-1)
      for (int i = 0; i <= box; ++i)
        for (int j = 1; j <= box; ++j) res.add_term(-cell(t, i, -1 - j), i, j - 1);
      scan(plb, n, res);
    }
    out.push_back(std::move(plb));
  }
  return out;
}

IdentityCheck check_reflection(const StepSet& model, int a, int b, int N, int box) {
  if (!region_contains(RegionKind::ThreeQuadrant, a, b))
    throw start_outside_region("check_reflection: start outside the cone");
  if (!is_weyl(model)) throw verify_error("check_reflection: not a Weyl model");
  Group g = build_group(model);
  int d = g.d();

  // classify the start: on a wall (fixed by an odd element), or in the domain
  // of a unique h with the reflected start h(a,b) in the quadrant
  bool on_wall = false;
  const GroupElement* h = nullptr;
  for (auto& e : g.elements) {
    if (e.sign == -1 && e.affine(a, b) == std::make_pair(a, b)) on_wall = true;
    auto [c0, d0] = e.affine(a, b);
    if (c0 >= 0 && d0 >= 0 && !h) h = &e;
  }
  if (!on_wall && !h)
    throw verify_error("check_reflection: start neither on a wall nor in a reflected quadrant");

  int need = 0;
  for (auto& e : g.elements)
    for (int i : {0, box})
      for (int j : {0, box}) {
        auto [k, l] = e.affine(i, j);
        need = std::max({need, std::abs(k), std::abs(l)});
      }
  int sr = std::max(std::abs(a), std::abs(b));
  int W = std::max(N + 2 + sr, need + 1);

  auto C = exact_tables(model, RegionKind::ThreeQuadrant, StartDistribution::point(a, b), N, W);
  std::vector<WalkTable<Int>> Q;
  if (!on_wall) {
    auto [qa, qb] = h->affine(a, b);
    Q = exact_tables(model, RegionKind::Quadrant, StartDistribution::point(qa, qb), N,
                     N + 2 + std::max(qa, qb));
  }

  IdentityCheck chk{"reflection(" + std::to_string(a) + "," + std::to_string(b) + ")",
                    model.name, "three-quadrant", N, W, true, std::nullopt};
  for (int n = 0; n <= N && chk.pass; ++n)
    for (int i = 0; i <= box && chk.pass; ++i)
      for (int j = 0; j <= box; ++j) {
        Rat lhs(0);
        for (auto& e : g.elements) {
          if (e.length == d) continue;
          auto [k, l] = e.affine(i, j);
          lhs += cell(C[n], k, l) * e.sign;
        }
        Rat rhs = on_wall ? Rat(0) : cell(Q[n], i, j) * h->sign;
        scan_value(chk, n, i, j, Rat(lhs - rhs));
        if (!chk.pass) break;
      }
  return chk;
}

const std::vector<std::string>& verify_identity_names() {
  static const std::vector<std::string> names = {
      "functional-equation-cone",     "functional-equation-quadrant",
      "functional-equation-weighted", "functional-equation-left-boundary",
      "orbit-sum-cone",               "orbit-sum-quadrant",
      "decomposition",                "chamber-relations",
      "reflection"};
  return names;
}

std::vector<IdentityCheck> run_identity(const std::string& id, const StepSet& model, int N) {
  if (id == "reflection") {
    std::vector<IdentityCheck> out;
    static const std::pair<int, int> starts[] = {{0, 0}, {-1, 0}, {-2, 0}, {0, -3}};
    for (auto [a, b] : starts) out.push_back(check_reflection(model, a, b, N, 6));
    return out;
  }
  VerifyData vd = build_verify_data(model, N);
  if (id == "functional-equation-cone") return {check_functional_equation(vd, EqTarget::Cone)};
  if (id == "functional-equation-quadrant")
    return {check_functional_equation(vd, EqTarget::Quadrant)};
  if (id == "functional-equation-weighted")
    return {check_functional_equation(vd, EqTarget::Weighted)};
  if (id == "functional-equation-left-boundary")
    return {check_functional_equation(vd, EqTarget::LeftBoundary)};
  if (id == "orbit-sum-cone") return {check_orbit_sum(vd, EqTarget::Cone)};
  if (id == "orbit-sum-quadrant") return {check_orbit_sum(vd, EqTarget::Quadrant)};
  if (id == "decomposition") return {check_decomposition(vd)};
  if (id == "chamber-relations") return check_PM_relations(vd);
  throw verify_error("unknown identity: " + id);
}

}  // namespace walks
