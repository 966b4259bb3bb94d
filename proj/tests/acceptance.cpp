#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>

#include "qgr/verify.hpp"

using namespace qgr;

TEST_CASE("verification suite") {
  auto results = run_verification();
  std::fputs(scoreboard_text(results).c_str(), stdout);
  for (auto& r : results) {
    INFO("[", r.id, "] ", r.name, " -- ", r.detail);
    CHECK(r.pass);
  }
  CHECK(results.size() == 10);
}
