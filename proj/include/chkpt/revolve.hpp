// Copyright 2026 The chkpt Authors
// SPDX-License-Identifier: Apache-2.0
//
// Binomial (revolve) checkpointing expressed in the schedule action language.
// Only forward restart data is checkpointed; the checkpoint at the start of a
// segment is written after the forward has advanced over it.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "chkpt/producer.hpp"

namespace chkpt {

/// Largest step count the cost tables accept (keeps every cost in int32).
inline constexpr StepIndex kMaxTableSteps = 30000;

/// Minimal total forward steps (original pass plus recomputation) for the
/// revolve schedule with at most `snapshots` simultaneous checkpoints,
/// tabulated for every n <= max_n and s <= snapshots.
///
/// cost(1, s) = 1, cost(n, 1) = n(n+1)/2, and otherwise
///   cost(n, s) = min over 1 <= m < n of m + cost(m, s) + cost(n - m, s - 1)
/// where m is the step at which the next checkpoint is stored. Among optimal
/// m the smallest is recorded.
class RevolveTable {
 public:
  RevolveTable(StepIndex max_n, StepIndex snapshots);

  std::int64_t cost(StepIndex n, StepIndex s) const;
  /// Optimal advance length before the next checkpoint (n >= 2).
  StepIndex split(StepIndex n, StepIndex s) const;

  StepIndex max_n() const { return max_n_; }

 private:
  std::size_t at(StepIndex n, StepIndex s) const;

  StepIndex max_n_;
  StepIndex rows_;  // snapshot counts 0..rows_-1 are stored
  std::vector<std::int32_t> cost_;
  std::vector<std::int32_t> split_;
};

/// Throws InvalidConfig for n < 1, s < 1 or n > kMaxTableSteps.
std::int64_t revolve_cost(StepIndex n, StepIndex s);

struct RevolveConfig {
  /// When unset the producer asks for Initialize(max_n).
  std::optional<StepIndex> max_n;
  StepIndex snapshots = 1;
  StorageKind storage = StorageKind::disk;
};

/// takeshot + advance    -> Configure(True, False); Forward; Write; Clear
/// advance only          -> Configure(False, False); Forward; Clear
/// firsturn / youturn    -> Configure(False, True); Forward(1 step); Reverse; Clear
/// restore               -> Read (deleting on last use); Clear
/// Terminates with EndReverse(True).
std::unique_ptr<ScheduleProducer> make_revolve(const RevolveConfig& config);

}  // namespace chkpt
