#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "walks/asymptotics.hpp"

using namespace walks;

namespace {
// the n <= 1000 normalized king DP is shared between test cases
const RealSeries& king_series() {
  static RealSeries rs =
      real_dp_normalized(model_by_name("king"), RegionKind::ThreeQuadrant, 1000);
  return rs;
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0;
}
}  // namespace

TEST_CASE("each cubic has exactly one real root") {
  CHECK(has_unique_real_root(cubic_total_K()));
  CHECK(has_unique_real_root(cubic_origin_L()));
  CHECK(has_unique_real_root(cubic_singular_vc()));
  // a cubic with three real roots is rejected: (x-1)(x-2)(x-3)
  CHECK_FALSE(has_unique_real_root({Int(1), Int(-6), Int(11), Int(-6)}));
}

TEST_CASE("root isolation reaches 30+ digits with a certified bracket") {
  RootIsolation k = isolate_real_root(cubic_total_K());
  CHECK(starts_with(k.value, "1.163334282495865848949192870662"));
  CHECK(k.value.find("e-05") != std::string::npos);
  CHECK(std::abs(std::strtod(k.interval_width.c_str(), nullptr)) < 1e-30);
  CHECK(k.newton_steps > 0);

  RootIsolation l = isolate_real_root(cubic_origin_L());
  CHECK(starts_with(l.value, "6.851477780229104518531806670596"));
  CHECK(l.value.find("e-07") != std::string::npos);
  CHECK(std::abs(std::strtod(l.interval_width.c_str(), nullptr)) < 1e-30);

  RootIsolation v = isolate_real_root(cubic_singular_vc());
  CHECK(starts_with(v.value, "4.554100411010284672111720348287"));
  CHECK(v.value.find("e-01") != std::string::npos);

  // no sign change on (0,1): x^3 + 1
  CHECK_THROWS_AS(isolate_real_root({Int(1), Int(0), Int(0), Int(1)}),
                  asymptotics_error);
}

TEST_CASE("predicted constants to 30 digits") {
  AsymptoticPrediction t = predicted("total");
  CHECK(t.growth == 8);
  CHECK(t.exponent == ratio(-1, 3));
  CHECK(starts_with(t.constant, "1.24397821752867567564748076101"));
  CHECK(t.correction_exponent == Rat(-1));
  CHECK(starts_with(t.correction_constant, "-2.82942121052258374700237801551"));

  AsymptoticPrediction o = predicted("origin");
  CHECK(o.exponent == ratio(-5, 3));
  CHECK(starts_with(o.constant, "6.11526326354172468565083884157"));
  CHECK(o.correction_exponent == ratio(-7, 3));
  CHECK(starts_with(o.correction_constant, "-3.06542731588927479828148813400"));

  CHECK_THROWS_AS(predicted("sideways"), asymptotics_error);

  std::string js = to_json(t);
  CHECK(js.find("\"series\":\"total\"") != std::string::npos);
  CHECK(js.find("\"exponent\":\"-1/3\"") != std::string::npos);
}

TEST_CASE("the singular-expansion route agrees to 20+ digits") {
  CHECK(route_disagreement("total") < 1e-20);
  CHECK(route_disagreement("origin") < 1e-20);
}

TEST_CASE("gamma evaluation satisfies the reflection identity") {
  CHECK(gamma_reflection_error() < 1e-30);
}

TEST_CASE("normalized DP matches exact counts at small length") {
  const RealSeries& rs = king_series();
  REQUIRE(rs.total.size() == 1001);
  // 1, 7, 50 walks of length 0, 1, 2 in the cone
  CHECK(rs.total[0] == doctest::Approx(1.0));
  CHECK(rs.total[1] == doctest::Approx(7.0 / 8));
  CHECK(rs.total[2] == doctest::Approx(50.0 / 64));

  StepSet king = model_by_name("king");
  std::vector<Int> tot = count_sequence(king, RegionKind::ThreeQuadrant,
                                        StartDistribution::origin(),
                                        Endpoint::total_sum(), 12);
  std::vector<Int> org = count_sequence(king, RegionKind::ThreeQuadrant,
                                        StartDistribution::origin(),
                                        Endpoint::at(0, 0), 12);
  double scale = 1.0;
  for (int n = 0; n <= 12; ++n) {
    CHECK(rs.total[n] * scale == doctest::Approx(tot[n].get_d()).epsilon(1e-12));
    CHECK(rs.origin[n] * scale == doctest::Approx(org[n].get_d()).epsilon(1e-12));
    scale *= 8.0;
  }
}

TEST_CASE("empirical fit basics") {
  std::vector<double> ones(250, 1.0);
  EmpiricalFit f = empirical_fit(ones, 0.0);
  CHECK(f.exponent == doctest::Approx(0.0));
  CHECK(f.constant == doctest::Approx(1.0));

  CHECK_THROWS_AS(empirical_fit(std::vector<double>(150, 1.0), 0.0),
                  sequence_too_short);
}

TEST_CASE("empirical growth of all walks matches the prediction") {
  AsymptoticPrediction p = predicted("total");
  double lead = std::strtod(p.constant.c_str(), nullptr);
  double corr = std::strtod(p.correction_constant.c_str(), nullptr);
  EmpiricalFit f = empirical_fit(king_series().total, -1.0 / 3,
                                 [&](int n) { return corr / n; });
  CHECK(std::abs(f.exponent + 1.0 / 3) < 0.02);
  CHECK(std::abs(f.constant - lead) / lead < 0.01);
}

TEST_CASE("empirical growth of walks back to the origin matches the prediction") {
  AsymptoticPrediction p = predicted("origin");
  double lead = std::strtod(p.constant.c_str(), nullptr);
  double corr = std::strtod(p.correction_constant.c_str(), nullptr);
  EmpiricalFit f = empirical_fit(king_series().origin, -5.0 / 3,
                                 [&](int n) { return corr * std::pow(n, -7.0 / 3); });
  CHECK(std::abs(f.exponent + 5.0 / 3) < 0.05);
  CHECK(std::abs(f.constant - lead) / lead < 0.03);
}
