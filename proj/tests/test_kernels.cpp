// Copyright 2026 The chkpt Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdlib>
#include <cstring>
#include <random>
#include <vector>

#include "chkpt/kernels/split_min.hpp"
#include "chkpt/mixed.hpp"
#include "chkpt/revolve.hpp"

using namespace chkpt;
using namespace chkpt::kernels;

namespace {

// Restores the variant active before the test.
struct IsaGuard {
  Isa saved = active_isa();
  ~IsaGuard() { select_isa(saved); }
};

bool avx2_available() { return detected_isa() == Isa::avx2; }

}  // namespace

TEST_CASE("scalar kernel on a hand-checked row") {
  const std::vector<std::int32_t> head{0, 1, 3, 6, 10};
  const std::vector<std::int32_t> tail{0, 1, 2, 3, 4};
  // m + head[m] + tail[4 - m] for m = 1..3: 1+1+3=5, 2+3+2=7, 3+6+1=10
  CHECK(split_min_scalar(head, tail, 4, 1, 3, TieBreak::smallest) == SplitMin{5, 1});
  // m + 0 + tie_tail[4 - m]: m=1: 1+4=5, m=2: 2+3=5, m=3: 3+2=5
  const std::vector<std::int32_t> flat{0, 0, 0, 0, 0};
  const std::vector<std::int32_t> tie_tail{0, 2, 3, 4, 0};
  CHECK(split_min_scalar(flat, tie_tail, 4, 1, 3, TieBreak::smallest) == SplitMin{5, 1});
  CHECK(split_min_scalar(flat, tie_tail, 4, 1, 3, TieBreak::largest) == SplitMin{5, 3});
}

TEST_CASE("the forced-scalar environment selects the scalar variant") {
  if (const char* env = std::getenv("CHKPT_KERNEL"); env && std::strcmp(env, "scalar") == 0) {
    CHECK(active_isa() == Isa::scalar);
  } else {
    CHECK(active_isa() == detected_isa());
  }
  IsaGuard guard;
  CHECK(select_isa(Isa::scalar) == Isa::scalar);
  CHECK(active_isa() == Isa::scalar);
  CHECK(select_isa(Isa::avx2) == detected_isa());
}

#if defined(CHKPT_HAVE_AVX2)
TEST_CASE("avx2 kernel matches scalar on random rows") {
  if (!avx2_available()) {
    MESSAGE("CPU lacks AVX2; equivalence not exercised");
    return;
  }
  std::mt19937 rng(20260415);
  for (int trial = 0; trial < 20000; ++trial) {
    const int total = std::uniform_int_distribution<int>(2, 90)(rng);
    const int lo = std::uniform_int_distribution<int>(1, total - 1)(rng);
    const int hi = std::uniform_int_distribution<int>(lo, total - 1)(rng);
    // Narrow value ranges create many equal costs.
    const int spread = trial % 3 == 0 ? 3 : (trial % 3 == 1 ? 40 : 1'000'000);
    std::uniform_int_distribution<int> value(0, spread);
    std::vector<std::int32_t> head(static_cast<std::size_t>(total) + 1);
    std::vector<std::int32_t> tail(static_cast<std::size_t>(total) + 1);
    for (auto& v : head) v = value(rng);
    for (auto& v : tail) v = value(rng);
    for (auto tie : {TieBreak::smallest, TieBreak::largest}) {
      INFO("trial=" << trial << " total=" << total << " lo=" << lo << " hi=" << hi);
      CHECK(split_min_avx2(head, tail, total, lo, hi, tie) ==
            split_min_scalar(head, tail, total, lo, hi, tie));
    }
  }
}

TEST_CASE("avx2 kernel handles equal costs at lane and block boundaries") {
  if (!avx2_available()) return;
  for (int total = 2; total <= 40; ++total) {
    for (int lo = 1; lo < total; ++lo) {
      for (int hi = lo; hi < total; ++hi) {
        // m + head[m] + tail[total - m] == total for every m.
        std::vector<std::int32_t> head(static_cast<std::size_t>(total) + 1, 0);
        std::vector<std::int32_t> tail(static_cast<std::size_t>(total) + 1);
        for (int k = 0; k <= total; ++k) tail[static_cast<std::size_t>(k)] = k;
        CHECK(split_min_avx2(head, tail, total, lo, hi, TieBreak::smallest) == SplitMin{total, lo});
        CHECK(split_min_avx2(head, tail, total, lo, hi, TieBreak::largest) == SplitMin{total, hi});
      }
    }
  }
}
#endif

TEST_CASE("cost tables are identical under both kernel variants") {
  IsaGuard guard;
  select_isa(Isa::scalar);
  const MixedTable mixed_scalar(400, 40);
  const RevolveTable revolve_scalar(400, 40);
  select_isa(Isa::avx2);
  const MixedTable mixed_vector(400, 40);
  const RevolveTable revolve_vector(400, 40);
  for (StepIndex n = 1; n <= 400; ++n) {
    for (StepIndex s = 1; s <= 40; ++s) {
      CHECK(mixed_scalar.cost(n, s) == mixed_vector.cost(n, s));
      CHECK(mixed_scalar.decision(n, s) == mixed_vector.decision(n, s));
      CHECK(revolve_scalar.cost(n, s) == revolve_vector.cost(n, s));
      if (n > 1) CHECK(revolve_scalar.split(n, s) == revolve_vector.split(n, s));
    }
  }
}
