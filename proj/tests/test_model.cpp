#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <map>
#include <set>

#include "walks/model.hpp"

using namespace walks;

TEST_CASE("step polynomial decomposition") {
  StepSet king = model_by_name("king");
  // S = (x+1+1/x)(y+1+1/y) - 1
  Laurent2 want;
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j)
      if (i || j) want.add_term(Rat(1), i, j);
  CHECK(step_polynomial(king) == want);

  StepSet simple = model_by_name("simple");
  CHECK(H_part(simple, -1) == LX(1));
  CHECK(H_part(simple, 1) == LX(1));
  LX h0 = H_part(simple, 0);
  CHECK(h0.coeff(1) == 1);
  CHECK(h0.coeff(-1) == 1);
  CHECK(h0.coeff(0) == 0);
  StepSet single;
  single.steps = {{1, 0}};
  CHECK(step_polynomial(single) == Laurent2::term(Rat(1), 1, 0));
}

TEST_CASE("group orders match the model tables") {
  std::map<std::string, int> expect = {
      {"simple", 4},          {"diagonal", 4},        {"king", 4},
      {"diabolo", 4},         {"tandem", 6},          {"double-tandem", 6},
      {"gouyou-beauchamps", 8}, {"kreweras", 6},      {"reverse-kreweras", 6},
      {"double-kreweras", 6}, {"gessel", 8},
  };
  for (auto& [name, order] : expect) {
    Group g = build_group(model_by_name(name));
    REQUIRE(g.kind == GroupKind::Finite);
    CHECK(g.order() == order);
    // phi, psi are involutions; omega is the unique longest element
    CHECK(g.elements[0].identity());
    int maxlen = g.elements.back().length;
    CHECK(maxlen == g.d());
    int at_max = 0;
    for (auto& e : g.elements) at_max += e.length == maxlen;
    CHECK(at_max == 1);
  }
}

TEST_CASE("specific group images from the model tables") {
  Group simple = build_group(model_by_name("simple"));
  std::set<std::array<int, 4>> images;
  for (auto& e : simple.elements) images.insert({e.xe[0], e.xe[1], e.ye[0], e.ye[1]});
  // (x,y), (1/x,y), (1/x,1/y), (x,1/y)
  CHECK(images == std::set<std::array<int, 4>>{
                      {1, 0, 0, 1}, {-1, 0, 0, 1}, {-1, 0, 0, -1}, {1, 0, 0, -1}});

  Group gb = build_group(model_by_name("gouyou-beauchamps"));
  bool found = false;  // image (x/y, x^2/y) from the table
  for (auto& e : gb.elements)
    found |= e.xe[0] == 1 && e.xe[1] == -1 && e.ye[0] == 2 && e.ye[1] == -1 && e.cx == 1 && e.cy == 1;
  CHECK(found);

  Group tandem = build_group(model_by_name("tandem"));
  bool found_t = false;  // image (1/y, 1/x)
  for (auto& e : tandem.elements)
    found_t |= e.xe[0] == 0 && e.xe[1] == -1 && e.ye[0] == -1 && e.ye[1] == 0;
  CHECK(found_t);
}

TEST_CASE("every group element fixes the step polynomial") {
  for (auto& name : builtin_model_names()) {
    StepSet s = model_by_name(name);
    Group g = build_group(s);
    REQUIRE(g.kind == GroupKind::Finite);
    Laurent2 sp = step_polynomial(s);
    for (auto& e : g.elements) CHECK(e.apply(sp) == sp);
  }
}

TEST_CASE("orbit sums") {
  Group king = build_group(model_by_name("king"));
  Laurent2 os = orbit_sum(king, 0, 0);
  // (x - 1/x)(y - 1/y)
  Laurent2 want;
  want.add_term(Rat(1), 1, 1);
  want.add_term(Rat(-1), -1, 1);
  want.add_term(Rat(-1), 1, -1);
  want.add_term(Rat(1), -1, -1);
  CHECK(os == want);

  for (auto& name : {"kreweras", "reverse-kreweras", "double-kreweras", "gessel"}) {
    Group g = build_group(model_by_name(name));
    CHECK(orbit_sum(g, 0, 0).zero());
  }
  // alternating: composing every element with phi flips the sum
  for (auto& name : weyl_model_names()) {
    Group g = build_group(model_by_name(name));
    Laurent2 sum = orbit_sum(g, 2, 1);
    Laurent2 phi_sum;
    // pair each element with its phi-coset partner: epsilon flips, images swap
    for (auto& e : g.elements) phi_sum += e.apply_monomial(3, 2, Rat(-e.sign));
    CHECK(phi_sum == -sum);
  }
}

TEST_CASE("affine orbit of the origin for king") {
  Group king = build_group(model_by_name("king"));
  auto orbit = affine_orbit(king, 0, 0);
  REQUIRE(orbit.size() == 4);
  std::map<std::pair<int, int>, int> pts;
  for (auto& p : orbit) pts[p.point] = p.sign;
  CHECK(pts.at({0, 0}) == 1);
  CHECK(pts.at({-2, 0}) == -1);
  CHECK(pts.at({0, -2}) == -1);
  CHECK(pts.at({-2, -2}) == 1);
}

TEST_CASE("walls: generators fix their reflection lines") {
  for (auto& name : weyl_model_names()) {
    Group g = build_group(model_by_name(name));
    const GroupElement *phi = nullptr, *psi = nullptr;
    for (auto& e : g.elements) {
      if (e.word == "p") phi = &e;
      if (e.word == "s") psi = &e;
    }
    REQUIRE(phi);
    REQUIRE(psi);
    for (int b = -3; b <= 3; ++b) CHECK(phi->on_wall(-1, b));
    for (int a = -3; a <= 3; ++a) CHECK(psi->on_wall(a, -1));
  }
}

TEST_CASE("affine orbits of quadrant points are distinct for Weyl models") {
  for (auto& name : weyl_model_names()) {
    Group g = build_group(model_by_name(name));
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; b <= 3; ++b) {
        auto orbit = affine_orbit(g, a, b);
        std::set<std::pair<int, int>> pts;
        for (auto& p : orbit) pts.insert(p.point);
        CHECK((int)pts.size() == g.order());
      }
  }
}

TEST_CASE("identity affine action") {
  Group g = build_group(model_by_name("simple"));
  CHECK(g.elements[0].affine(3, 5) == std::make_pair(3, 5));
  CHECK(g.elements[0].sign == 1);
}

TEST_CASE("degenerate, infinite, and non-monomial groups") {
  StepSet right;
  right.steps = {{1, 0}, {1, 1}};
  CHECK_THROWS_AS(build_group(right), degenerate_model);

  StepSet anti;  // steps on the antidiagonal only: parabolic rotation, infinite group
  anti.steps = {{-1, 1}, {1, -1}};
  CHECK(build_group(anti).kind == GroupKind::Infinite);

  StepSet nm;  // H-/H+ = (x + 1/x) is not a monomial
  nm.steps = {{0, 1}, {1, -1}, {-1, -1}};
  CHECK(build_group(nm).kind == GroupKind::NonMonomial);
  CHECK_THROWS_AS(orbit_sum(build_group(nm), 0, 0), non_monomial_group);
}

TEST_CASE("model classification") {
  StepSet right;
  right.steps = {{1, 0}, {1, 1}};
  CHECK(classify_model(right) == ModelClass::TrivialRational);
  StepSet upper;  // mirror of the previous case
  upper.steps = {{0, 1}, {1, 1}};
  CHECK(classify_model(upper) == ModelClass::TrivialRational);
  StepSet left;
  left.steps = {{-1, 0}, {-1, 1}, {0, -1}};
  CHECK(classify_model(left) == ModelClass::HalfPlaneEquivalent);
  StepSet sing;  // weakly above the antidiagonal, not in any half-plane
  sing.steps = {{1, -1}, {-1, 1}, {1, 1}};
  CHECK(classify_model(sing) == ModelClass::Singular);
  StepSet below;  // weakly below the antidiagonal
  below.steps = {{1, -1}, {-1, 1}, {-1, -1}};
  CHECK(classify_model(below) == ModelClass::HalfPlaneEquivalent);
  for (auto& name : builtin_model_names())
    CHECK(classify_model(model_by_name(name)) == ModelClass::Interesting);
}

TEST_CASE("mirror helper and JSON round trip") {
  StepSet d = model_by_name("diabolo");
  StepSet m = mirrored(d);
  CHECK(m.has(0, 1));
  CHECK(!m.has(1, 0));
  std::string js = model_to_json(d);
  StepSet back = model_from_json(js);
  CHECK(back.steps.size() == d.steps.size());
  for (auto st : d.steps) CHECK(back.has(st.dx, st.dy));
  CHECK(back.edge_rule == EdgeRule::ForbidDiagonalJumps);

  CHECK_THROWS_AS(model_from_json(R"({"name":"bad","steps":[[2,0]]})"), model_error);
  StepSet allow = model_from_json(R"({"name":"king8","steps":[[1,0],[0,1],[-1,0],[0,-1],[1,1],[-1,1],[1,-1],[-1,-1]],"edge_rule":"allow"})");
  CHECK(allow.edge_rule == EdgeRule::AllowDiagonalJumps);
  CHECK_THROWS_AS(model_by_name("no-such-model"), model_error);
}
