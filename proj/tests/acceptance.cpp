#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <iostream>

#include "walks/acceptance.hpp"

TEST_CASE("acceptance criteria") {
  std::vector<walks::CriterionResult> rs = walks::run_acceptance(std::cout);
  CHECK(rs.size() == 11);
  for (const walks::CriterionResult& r : rs) {
    CAPTURE(r.id);
    CAPTURE(r.name);
    CAPTURE(r.detail);
    CHECK(r.pass);
  }
  CHECK(walks::all_passed(rs));
}
