// Copyright 2026 The chkpt Authors
// SPDX-License-Identifier: Apache-2.0
//
// Inner minimisation shared by the checkpointing dynamic programs:
//
//   min over m in [lo, hi] of  m + head[m] + tail[total - m]
//
// `head` and `tail` are rows of a cost table indexed by step count. The
// scalar routine is the reference; the AVX2 routine must return the same
// cost and the same split for every input.

#pragma once

#include <cstdint>
#include <span>
#include <string_view>

namespace chkpt::kernels {

struct SplitMin {
  std::int32_t cost;
  std::int32_t split;
  friend bool operator==(const SplitMin&, const SplitMin&) = default;
};

/// Which split wins among equal costs.
enum class TieBreak { smallest, largest };

/// Preconditions: lo <= hi, hi < head.size(), total - lo < tail.size(),
/// total - hi >= 0, and every sum fits in int32.
SplitMin split_min_scalar(std::span<const std::int32_t> head, std::span<const std::int32_t> tail,
                          std::int32_t total, std::int32_t lo, std::int32_t hi, TieBreak tie);

#if defined(CHKPT_HAVE_AVX2)
SplitMin split_min_avx2(std::span<const std::int32_t> head, std::span<const std::int32_t> tail,
                        std::int32_t total, std::int32_t lo, std::int32_t hi, TieBreak tie);
#endif

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

/// Best variant compiled in and supported by this CPU.
Isa detected_isa();

/// Variant used by `split_min`. Defaults to detected_isa(), or scalar when
/// the environment variable CHKPT_KERNEL=scalar is set.
Isa active_isa();

/// Overrides the active variant; falls back to scalar when `isa` is not
/// available. Returns the variant actually selected.
Isa select_isa(Isa isa);

SplitMin split_min(std::span<const std::int32_t> head, std::span<const std::int32_t> tail,
                   std::int32_t total, std::int32_t lo, std::int32_t hi, TieBreak tie);

}  // namespace chkpt::kernels
