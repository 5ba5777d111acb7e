#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "walks/verify.hpp"

using namespace walks;

namespace {
void expect_pass(const IdentityCheck& c) {
  CAPTURE(to_json(c));
  CHECK(c.pass);
}
}  // namespace

TEST_CASE("functional equations on enumeration tables") {
  VerifyData king = build_verify_data(model_by_name("king"), 15);
  expect_pass(check_functional_equation(king, EqTarget::Cone));
  expect_pass(check_functional_equation(king, EqTarget::Quadrant));
  expect_pass(check_functional_equation(king, EqTarget::Weighted));
  expect_pass(check_functional_equation(king, EqTarget::LeftBoundary));

  VerifyData simple = build_verify_data(model_by_name("simple"), 15);
  expect_pass(check_functional_equation(simple, EqTarget::Cone));
  expect_pass(check_functional_equation(simple, EqTarget::Quadrant));
  expect_pass(check_functional_equation(simple, EqTarget::Weighted));
  CHECK_THROWS_AS(check_functional_equation(simple, EqTarget::LeftBoundary), verify_error);

  // models with a diagonal step exercise the corner term
  VerifyData dk = build_verify_data(model_by_name("double-kreweras"), 12);
  expect_pass(check_functional_equation(dk, EqTarget::Cone));
  expect_pass(check_functional_equation(dk, EqTarget::Quadrant));
}

TEST_CASE("functional equation for the variant edge rule") {
  StepSet king = model_by_name("king");
  king.edge_rule = EdgeRule::AllowDiagonalJumps;
  VerifyData vd = build_verify_data(king, 12);
  expect_pass(check_functional_equation(vd, EqTarget::Cone));
  expect_pass(check_functional_equation(vd, EqTarget::Quadrant));  // quadrant unaffected
  CHECK_THROWS_AS(check_functional_equation(vd, EqTarget::Weighted), verify_error);
  CHECK_THROWS_AS(check_functional_equation(vd, EqTarget::LeftBoundary), verify_error);
}

TEST_CASE("orbit sums") {
  VerifyData king = build_verify_data(model_by_name("king"), 12);
  expect_pass(check_orbit_sum(king, EqTarget::Cone));
  expect_pass(check_orbit_sum(king, EqTarget::Quadrant));

  // zero-orbit-sum model: the identity forces the alternating table sum to
  // vanish at every order
  VerifyData kw = build_verify_data(model_by_name("kreweras"), 10);
  Group g = build_group(kw.model);
  CHECK(orbit_sum(g, 0, 0).zero());
  expect_pass(check_orbit_sum(kw, EqTarget::Cone));
  expect_pass(check_orbit_sum(kw, EqTarget::Quadrant));

  VerifyData gessel = build_verify_data(model_by_name("gessel"), 10);
  CHECK(orbit_sum(build_group(gessel.model), 0, 0).zero());
  expect_pass(check_orbit_sum(gessel, EqTarget::Cone));

  // the variant edge rule keeps the same orbit-sum identity
  StepSet vk = model_by_name("king");
  vk.edge_rule = EdgeRule::AllowDiagonalJumps;
  VerifyData vkd = build_verify_data(vk, 10);
  expect_pass(check_orbit_sum(vkd, EqTarget::Cone));
}

TEST_CASE("decomposition of the cone table") {
  VerifyData king = build_verify_data(model_by_name("king"), 14);
  expect_pass(check_decomposition(king));

  // named scalar instances: 3 C00 = A00 + Q00, C(-1,j) = A(-1,j)/3,
  // 3 C(-2,0) = A(-2,0) - Q00
  for (int n = 0; n <= king.N; ++n) {
    Int c00 = king.C[n].at(0, 0), a00 = king.A[n].at(0, 0), q00 = king.Q[n].at(0, 0);
    CHECK(c00 * 3 == a00 + q00);
    CHECK(king.C[n].at(-2, 0) * 3 == king.A[n].at(-2, 0) - q00);
    for (int j = 0; j <= king.N; ++j) CHECK(king.C[n].at(-1, j) * 3 == king.A[n].at(-1, j));
  }

  expect_pass(check_decomposition(build_verify_data(model_by_name("simple"), 12)));
  expect_pass(check_decomposition(build_verify_data(model_by_name("diagonal"), 12)));
  expect_pass(check_decomposition(build_verify_data(model_by_name("diabolo"), 12)));
  expect_pass(check_decomposition(build_verify_data(model_by_name("tandem"), 12)));
  expect_pass(check_decomposition(build_verify_data(model_by_name("double-tandem"), 12)));
  expect_pass(check_decomposition(build_verify_data(model_by_name("gouyou-beauchamps"), 12)));

  CHECK_THROWS_AS(check_decomposition(build_verify_data(model_by_name("kreweras"), 6)),
                  verify_error);
}

TEST_CASE("chamber relations") {
  auto king = check_PM_relations(build_verify_data(model_by_name("king"), 15));
  CHECK(king.size() == 2);  // alternating sum + left/bottom split
  for (auto& c : king) expect_pass(c);

  auto tandem = check_PM_relations(build_verify_data(model_by_name("tandem"), 15));
  CHECK(tandem.size() == 1);  // not symmetric in both axes
  expect_pass(tandem[0]);

  auto gb = check_PM_relations(build_verify_data(model_by_name("gouyou-beauchamps"), 12));
  CHECK(gb.size() == 1);
  expect_pass(gb[0]);

  auto diag = check_PM_relations(build_verify_data(model_by_name("diagonal"), 12));
  CHECK(diag.size() == 2);
  for (auto& c : diag) expect_pass(c);
}

TEST_CASE("reflection identities for all Weyl models and both edge rules") {
  const std::pair<int, int> starts[] = {{0, 0}, {-1, 0}, {-2, 0}, {0, -3}};
  for (const auto& name : weyl_model_names()) {
    for (EdgeRule rule : {EdgeRule::ForbidDiagonalJumps, EdgeRule::AllowDiagonalJumps}) {
      StepSet s = model_by_name(name);
      s.edge_rule = rule;
      for (auto [a, b] : starts) {
        IdentityCheck c = check_reflection(s, a, b, 10, 8);
        CAPTURE(name);
        CAPTURE((int)rule);
        CAPTURE(a);
        CAPTURE(b);
        expect_pass(c);
      }
    }
  }
  CHECK_THROWS_AS(check_reflection(model_by_name("king"), -1, -1, 4, 2), start_outside_region);
  CHECK_THROWS_AS(check_reflection(model_by_name("kreweras"), 0, 0, 4, 2), verify_error);
}

TEST_CASE("two-step king instance of the reflection identity") {
  VerifyData king = build_verify_data(model_by_name("king"), 2);
  Int c00 = king.C[2].at(0, 0);
  Int cm20 = king.C[2].at(-2, 0);
  Int c0m2 = king.C[2].at(0, -2);
  Int q00 = king.Q[2].at(0, 0);
  CHECK(c00 == 7);
  CHECK(cm20 == 2);
  CHECK(c0m2 == 2);
  CHECK(q00 == 3);
  CHECK(c00 == cm20 + c0m2 + q00);
}

TEST_CASE("a single tampered cell is caught") {
  std::mt19937 rng(20240817);
  for (const auto& name : builtin_model_names()) {
    VerifyData vd = build_verify_data(model_by_name(name), 8);
    for (int trial = 0; trial < 20; ++trial) {
      VerifyData bad = vd;
      int n = 1 + (int)(rng() % vd.N);
      bool quadrant = rng() % 2 == 0;
      auto& t = quadrant ? bad.Q[n] : bad.C[n];
      int r = std::min(t.W - 1, t.radius);
      int i = (int)(rng() % (2 * r + 1)) - r;
      int j = (int)(rng() % (2 * r + 1)) - r;
      t.at(i, j) += 1;
      IdentityCheck c = check_functional_equation(
          bad, quadrant ? EqTarget::Quadrant : EqTarget::Cone);
      CAPTURE(name);
      CAPTURE(n);
      CAPTURE(i);
      CAPTURE(j);
      CHECK_FALSE(c.pass);
      CHECK(c.first_failure.has_value());
    }
  }
}

TEST_CASE("a tampered weighted table breaks the downstream checks") {
  VerifyData vd = build_verify_data(model_by_name("king"), 8);
  vd.A[4].at(-2, 1) += 1;
  CHECK_FALSE(check_functional_equation(vd, EqTarget::Weighted).pass);
  CHECK_FALSE(check_decomposition(vd).pass);
  bool chamber_failed = false;
  for (auto& c : check_PM_relations(vd)) chamber_failed = chamber_failed || !c.pass;
  CHECK(chamber_failed);
}

TEST_CASE("dispatcher and JSON reports") {
  CHECK(verify_identity_names().size() == 9);
  for (const auto& id : verify_identity_names()) {
    auto cs = run_identity(id, model_by_name("king"), 8);
    CHECK(!cs.empty());
    for (auto& c : cs) expect_pass(c);
    std::string js = to_json(cs);
    CHECK(js.find("\"pass\":true") != std::string::npos);
    CHECK(js.find("\"model\":\"king\"") != std::string::npos);
  }
  CHECK_THROWS_AS(run_identity("no-such-identity", model_by_name("king"), 6), verify_error);

  VerifyData vd = build_verify_data(model_by_name("simple"), 6);
  vd.C[3].at(2, 1) += 1;
  IdentityCheck c = check_functional_equation(vd, EqTarget::Cone);
  std::string js = to_json(c);
  CHECK_FALSE(c.pass);
  CHECK(js.find("\"first_failure\":{") != std::string::npos);
  CHECK(js.find("\"n\":3") != std::string::npos);
}
