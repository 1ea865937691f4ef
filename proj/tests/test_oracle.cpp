// Copyright 2026 The chkpt Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "chkpt/error.hpp"
#include "chkpt/mixed.hpp"
#include "chkpt/oracle.hpp"
#include "chkpt/revolve.hpp"

using namespace chkpt;

TEST_CASE("oracle anchors") {
  CHECK(brute_force_optimum(4, 2) == 6);
  CHECK(brute_force_optimum(5, 2) == 8);
  CHECK(brute_force_optimum(3, 1) == 5);
  for (StepIndex s = 1; s <= 4; ++s) {
    for (StepIndex n = 1; n <= s + 1; ++n) CHECK(brute_force_optimum(n, s) == n);
  }
}

TEST_CASE("oracle agrees with the dynamic program on small instances") {
  for (StepIndex n = 1; n <= 8; ++n) {
    for (StepIndex s = 1; s <= 3; ++s) {
      INFO("n=" << n << " s=" << s);
      const auto optimum = brute_force_optimum(n, s);
      CHECK(optimum == mixed_cost(n, s));
      CHECK(optimum <= revolve_cost(n, s));
    }
  }
}

TEST_CASE("oracle budget and domain") {
  CHECK_THROWS_AS(brute_force_optimum(6, 2, {.max_nodes = 10}), SearchBudgetExceeded);
  CHECK_THROWS_AS(brute_force_optimum(0, 1), InvalidConfig);
  CHECK_THROWS_AS(brute_force_optimum(3, 0), InvalidConfig);
  CHECK_THROWS_AS(brute_force_optimum(kOracleMaxSteps + 1, 1), InvalidConfig);
}
