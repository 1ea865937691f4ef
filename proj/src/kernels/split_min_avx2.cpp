// Copyright 2026 The chkpt Authors
// SPDX-License-Identifier: Apache-2.0
//
// Compiled with -mavx2; only reached through the runtime dispatcher.

#include <immintrin.h>

#include <limits>

#include "chkpt/kernels/split_min.hpp"

namespace chkpt::kernels {

SplitMin split_min_avx2(std::span<const std::int32_t> head, std::span<const std::int32_t> tail,
                        std::int32_t total, std::int32_t lo, std::int32_t hi, TieBreak tie) {
  constexpr std::int32_t kLanes = 8;
  constexpr std::int32_t kNone = std::numeric_limits<std::int32_t>::max();

  const __m256i lane = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
  const __m256i reversed = _mm256_setr_epi32(7, 6, 5, 4, 3, 2, 1, 0);
  const __m256i all_ones = _mm256_set1_epi32(-1);
  const bool keep_largest = tie == TieBreak::largest;

  __m256i best_cost = _mm256_set1_epi32(kNone);
  __m256i best_split = _mm256_set1_epi32(lo);

  std::int32_t m = lo;
  for (; m + kLanes - 1 <= hi; m += kLanes) {
    const __m256i h = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(head.data() + m));
    // tail[total - m - 7 .. total - m], flipped so lane i holds tail[total - m - i].
    __m256i t = _mm256_loadu_si256(
        reinterpret_cast<const __m256i*>(tail.data() + (total - m - (kLanes - 1))));
    t = _mm256_permutevar8x32_epi32(t, reversed);
    const __m256i split = _mm256_add_epi32(_mm256_set1_epi32(m), lane);
    const __m256i cost = _mm256_add_epi32(_mm256_add_epi32(h, t), split);

    // Later m in a lane are larger, so "<=" keeps the largest and "<" the smallest.
    const __m256i take = keep_largest
                             ? _mm256_xor_si256(_mm256_cmpgt_epi32(cost, best_cost), all_ones)
                             : _mm256_cmpgt_epi32(best_cost, cost);
    best_cost = _mm256_blendv_epi8(best_cost, cost, take);
    best_split = _mm256_blendv_epi8(best_split, split, take);
  }

  SplitMin best{kNone, lo};
  if (m > lo) {
    alignas(32) std::int32_t costs[kLanes];
    alignas(32) std::int32_t splits[kLanes];
    _mm256_store_si256(reinterpret_cast<__m256i*>(costs), best_cost);
    _mm256_store_si256(reinterpret_cast<__m256i*>(splits), best_split);
    best = {costs[0], splits[0]};
    for (int i = 1; i < kLanes; ++i) {
      const bool better = costs[i] < best.cost ||
                          (costs[i] == best.cost &&
                           (keep_largest ? splits[i] > best.split : splits[i] < best.split));
      if (better) best = {costs[i], splits[i]};
    }
  }

  for (; m <= hi; ++m) {
    const std::int32_t cost = m + head[m] + tail[total - m];
    if (cost < best.cost || (keep_largest && cost == best.cost)) best = {cost, m};
  }
  return best;
}

}  // namespace chkpt::kernels
