// Copyright 2026 The chkpt Authors
// SPDX-License-Identifier: Apache-2.0

#include "chkpt/kernels/split_min.hpp"

#include <limits>

namespace chkpt::kernels {

SplitMin split_min_scalar(std::span<const std::int32_t> head, std::span<const std::int32_t> tail,
                          std::int32_t total, std::int32_t lo, std::int32_t hi, TieBreak tie) {
  SplitMin best{std::numeric_limits<std::int32_t>::max(), lo};
  for (std::int32_t m = lo; m <= hi; ++m) {
    const std::int32_t cost = m + head[m] + tail[total - m];
    if (cost < best.cost || (tie == TieBreak::largest && cost == best.cost)) {
      best = {cost, m};
    }
  }
  return best;
}

}  // namespace chkpt::kernels
