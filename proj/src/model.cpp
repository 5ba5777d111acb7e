#include "walks/model.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>

namespace walks {

namespace {
StepSet make(const std::string& name, std::initializer_list<Step> steps) {
  StepSet s;
  s.name = name;
  s.steps = steps;
  return s;
}

const std::vector<std::pair<std::string, StepSet>>& registry() {
  static const std::vector<std::pair<std::string, StepSet>> r = {
      {"simple", make("simple", {{1, 0}, {0, 1}, {-1, 0}, {0, -1}})},
      {"diagonal", make("diagonal", {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}})},
      {"king", make("king", {{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}})},
      {"diabolo", make("diabolo", {{1, 0}, {-1, 0}, {1, 1}, {-1, 1}, {1, -1}, {-1, -1}})},
      {"tandem", make("tandem", {{1, 0}, {-1, 1}, {0, -1}})},
      {"double-tandem", make("double-tandem", {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}})},
      {"gouyou-beauchamps", make("gouyou-beauchamps", {{1, 0}, {-1, 0}, {-1, 1}, {1, -1}})},
      {"kreweras", make("kreweras", {{-1, 0}, {0, -1}, {1, 1}})},
      {"reverse-kreweras", make("reverse-kreweras", {{1, 0}, {0, 1}, {-1, -1}})},
      {"double-kreweras", make("double-kreweras", {{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 1}, {-1, -1}})},
      {"gessel", make("gessel", {{1, 0}, {-1, 0}, {1, 1}, {-1, -1}})},
  };
  return r;
}
}  // namespace

const std::vector<std::string>& builtin_model_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (auto& [n, s] : registry()) v.push_back(n);
    return v;
  }();
  return names;
}

const std::vector<std::string>& weyl_model_names() {
  static const std::vector<std::string> names = {
      "simple", "diagonal", "king", "diabolo", "tandem", "double-tandem", "gouyou-beauchamps"};
  return names;
}

StepSet model_by_name(const std::string& name) {
  for (auto& [n, s] : registry())
    if (n == name) return s;
  throw model_error("unknown model: " + name);
}

StepSet mirrored(const StepSet& s) {
  StepSet m = s;
  m.name = s.name + "-mirror";
  for (auto& st : m.steps) std::swap(st.dx, st.dy);
  return m;
}

Laurent2 step_polynomial(const StepSet& s) {
  Laurent2 p;
  for (auto st : s.steps) p.add_term(Rat(1), st.dx, st.dy);
  return p;
}

Laurent2 kernel_polynomial_coeff(const StepSet& s) { return step_polynomial(s); }

LX H_part(const StepSet& s, int dy) {
  LX h;
  for (auto st : s.steps)
    if (st.dy == dy) h.add_term(Rat(1), st.dx);
  return h;
}

LX V_part(const StepSet& s, int dx) {
  LX v;
  for (auto st : s.steps)
    if (st.dx == dx) v.add_term(Rat(1), st.dy);
  return v;
}

Rat GroupElement::image_coeff(int p, int q) const {
  auto powq = [](const Rat& b, int e) {
    Rat r(1);
    Rat base = e >= 0 ? b : inv(b);
    for (int i = 0; i < std::abs(e); ++i) r *= base;
    return r;
  };
  return powq(cx, p) * powq(cy, q);
}

Laurent2 GroupElement::apply_monomial(int p, int q, const Rat& coeff) const {
  auto [i, j] = image_exponents(p, q);
  return Laurent2::term(coeff * image_coeff(p, q), i, j);
}

Laurent2 GroupElement::apply(const Laurent2& f) const {
  Laurent2 r;
  for (auto& [e, c] : f.m) r += apply_monomial(e.first, e.second, c);
  return r;
}

std::pair<int, int> GroupElement::affine(int a, int b) const {
  auto [i, j] = image_exponents(a + 1, b + 1);
  return {i - 1, j - 1};
}

const GroupElement& Group::omega() const {
  if (kind != GroupKind::Finite) throw non_monomial_group("omega: group not finite/monomial");
  return elements.back();
}

namespace {
// ratio a/b of two Laurent polynomials when it is a single term c*x^k
bool monomial_ratio(const LX& a, const LX& b, Rat& c, int& k) {
  if (a.zero() || b.zero()) return false;
  k = a.deg_lo() - b.deg_lo();
  c = a.c.front() / b.c.front();
  return b * LX::term(c, k) == a;
}

struct Key {
  int xe0, xe1, ye0, ye1;
  std::string cx, cy;
  bool operator<(const Key& o) const {
    return std::tie(xe0, xe1, ye0, ye1, cx, cy) <
           std::tie(o.xe0, o.xe1, o.ye0, o.ye1, o.cx, o.cy);
  }
};
Key key_of(const GroupElement& g) {
  return {g.xe[0], g.xe[1], g.ye[0], g.ye[1], g.cx.get_str(), g.cy.get_str()};
}
}  // namespace

Group build_group(const StepSet& s, int word_cap) {
  LX hm = H_part(s, -1), hp = H_part(s, 1), vm = V_part(s, -1), vp = V_part(s, 1);
  if (hm.zero() || hp.zero() || vm.zero() || vp.zero())
    throw degenerate_model("model lacks steps in some axis direction: " + s.name);

  Rat cphi, cpsi;
  int kphi, kpsi;
  bool mono = monomial_ratio(vm, vp, cphi, kphi) && monomial_ratio(hm, hp, cpsi, kpsi);
  Group g;
  if (!mono) {
    g.kind = GroupKind::NonMonomial;
    return g;
  }

  auto apply_phi = [&](const GroupElement& e) {
    // u -> 1/u * cphi * v^kphi applied to image pair (U, V)
    GroupElement r = e;
    r.word = e.word + 'p';
    r.length = e.length + 1;
    r.sign = -e.sign;
    r.xe[0] = -e.xe[0] + kphi * e.ye[0];
    r.xe[1] = -e.xe[1] + kphi * e.ye[1];
    auto powq = [](const Rat& b, int k) {
      Rat t(1);
      Rat base = k >= 0 ? b : inv(b);
      for (int i = 0; i < std::abs(k); ++i) t *= base;
      return t;
    };
    r.cx = inv(e.cx) * cphi * powq(e.cy, kphi);
    return r;
  };
  auto apply_psi = [&](const GroupElement& e) {
    GroupElement r = e;
    r.word = e.word + 's';
    r.length = e.length + 1;
    r.sign = -e.sign;
    r.ye[0] = -e.ye[0] + kpsi * e.xe[0];
    r.ye[1] = -e.ye[1] + kpsi * e.xe[1];
    auto powq = [](const Rat& b, int k) {
      Rat t(1);
      Rat base = k >= 0 ? b : inv(b);
      for (int i = 0; i < std::abs(k); ++i) t *= base;
      return t;
    };
    r.cy = inv(e.cy) * cpsi * powq(e.cx, kpsi);
    return r;
  };

  std::map<Key, GroupElement> seen;
  GroupElement id;
  seen[key_of(id)] = id;
  std::vector<GroupElement> frontier = {id};
  for (int len = 1; len <= word_cap && !frontier.empty(); ++len) {
    std::vector<GroupElement> next;
    for (auto& e : frontier)
      for (auto& cand : {apply_phi(e), apply_psi(e)}) {
        Key k = key_of(cand);
        if (!seen.count(k)) {
          seen[k] = cand;
          next.push_back(cand);
        }
      }
    frontier = std::move(next);
  }
  if (!frontier.empty()) {
    g.kind = GroupKind::Infinite;
    return g;
  }
  for (auto& [k, e] : seen) g.elements.push_back(e);
  std::sort(g.elements.begin(), g.elements.end(),
            [](const GroupElement& a, const GroupElement& b) {
              return std::tie(a.length, a.word) < std::tie(b.length, b.word);
            });
  return g;
}

Laurent2 orbit_sum(const Group& g, int a, int b) {
  if (g.kind != GroupKind::Finite)
    throw non_monomial_group("orbit_sum: group not finite/monomial");
  Laurent2 os;
  for (auto& e : g.elements) os += e.apply_monomial(a + 1, b + 1, Rat(e.sign));
  return os;
}

std::vector<AffinePoint> affine_orbit(const Group& g, int a, int b) {
  if (g.kind != GroupKind::Finite)
    throw non_monomial_group("affine_orbit: group not finite/monomial");
  std::vector<AffinePoint> out;
  for (auto& e : g.elements) out.push_back({e.affine(a, b), e.sign, &e});
  return out;
}

ModelClass classify_model(const StepSet& s) {
  auto all = [&](auto pred) {
    for (auto st : s.steps)
      if (!pred(st)) return false;
    return true;
  };
  // bullets in the order of the source text, each tried together with its
  // x/y-mirror counterpart (the cone is mirror-symmetric)
  if (all([](Step t) { return t.dx >= 0; }) || all([](Step t) { return t.dy >= 0; }))
    return ModelClass::TrivialRational;
  if (all([](Step t) { return t.dx <= 0; }) || all([](Step t) { return t.dy <= 0; }))
    return ModelClass::HalfPlaneEquivalent;
  if (all([](Step t) { return t.dy >= t.dx; }) || all([](Step t) { return t.dy <= t.dx; }))
    return ModelClass::HalfPlaneEquivalent;
  if (all([](Step t) { return t.dx + t.dy >= 0; })) return ModelClass::Singular;
  if (all([](Step t) { return t.dx + t.dy <= 0; })) return ModelClass::HalfPlaneEquivalent;
  return ModelClass::Interesting;
}

StepSet model_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  StepSet s;
  s.name = j.at("name").get<std::string>();
  for (auto& st : j.at("steps")) {
    int dx = st.at(0).get<int>(), dy = st.at(1).get<int>();
    if (dx < -1 || dx > 1 || dy < -1 || dy > 1 || (dx == 0 && dy == 0))
      throw model_error("model JSON: step out of range");
    s.steps.push_back({dx, dy});
  }
  std::string er = j.value("edge_rule", "forbid");
  if (er == "forbid") s.edge_rule = EdgeRule::ForbidDiagonalJumps;
  else if (er == "allow") s.edge_rule = EdgeRule::AllowDiagonalJumps;
  else throw model_error("model JSON: edge_rule must be 'forbid' or 'allow'");
  if (s.steps.empty()) throw model_error("model JSON: empty step set");
  return s;
}

std::string model_to_json(const StepSet& s) {
  nlohmann::json j;
  j["name"] = s.name;
  j["steps"] = nlohmann::json::array();
  for (auto st : s.steps) j["steps"].push_back({st.dx, st.dy});
  j["edge_rule"] = s.edge_rule == EdgeRule::ForbidDiagonalJumps ? "forbid" : "allow";
  return j.dump();
}

}  // namespace walks
