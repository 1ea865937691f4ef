// Copyright 2026 The chkpt Authors
// SPDX-License-Identifier: Apache-2.0
//
// Schedules whose checkpointing units hold either forward restart data or a
// single step of non-linear dependency data, both of unit size, plus one
// extra unit of intermediate storage for the data of the step the adjoint is
// about to advance over.
//
// p(n, s) is the minimal total number of forward steps to advance the adjoint
// over n steps when the forward is at the start of the first of them, no
// restart checkpoint is held for that step, and s units are free:
//
//   p(n, s) = n                                if n <= s + 1
//           = n(n+1)/2 - 1                     if s == 1 and n > 2
//           = min( min_{2<=m<n} m + p(m, s) + p(n-m, s-1),
//                  1 + p(n-1, s-1) )           otherwise
//
// defined for n >= 1 and s >= min(1, n - 1).

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chkpt/producer.hpp"
#include "chkpt/revolve.hpp"

namespace chkpt {

/// Which branch of p(n, s) is taken.
enum class MixedCase {
  /// n <= s + 1: store dependency data for every step.
  store_all_data,
  /// s == 1, n > 2: one restart checkpoint, rerun repeatedly.
  rerun_from_restart,
  /// Store a restart checkpoint and advance `split` steps.
  restart_split,
  /// Store one step of dependency data and continue with one unit fewer.
  store_data_step,
};

struct MixedDecision {
  MixedCase kind;
  StepIndex split = 0;  // only for restart_split
  friend bool operator==(const MixedDecision&, const MixedDecision&) = default;
};

/// Tabulated p(n', s') for 1 <= n' <= max_n, 0 <= s' <= max_units, with the
/// winning branch of each entry. Ties prefer storing dependency data over a
/// restart checkpoint, then the largest restart split.
class MixedTable {
 public:
  MixedTable(StepIndex max_n, StepIndex max_units);

  std::int64_t cost(StepIndex n, StepIndex s) const;
  MixedDecision decision(StepIndex n, StepIndex s) const;

  /// p0(n, s): total forward steps when a restart checkpoint for the first
  /// step is already held and s further units are free, for n > s + 1:
  ///   p0(n, 0) = n(n+1)/2 - 1
  ///   p0(n, s) = min_{1<=m<n} m + p(m, s+1) + p(n-m, s)
  /// Requires the table to cover s + 1 units.
  std::int64_t restart_held_cost(StepIndex n, StepIndex s) const;

  StepIndex max_n() const { return max_n_; }

 private:
  std::size_t at(StepIndex n, StepIndex s) const;
  StepIndex row(StepIndex n, StepIndex s) const;

  StepIndex max_n_;
  StepIndex rows_;
  std::vector<std::int32_t> cost_;
  std::vector<std::int32_t> choice_;
};

/// p(n, s). Throws InvalidConfig outside n >= 1, s >= min(1, n - 1).
std::int64_t mixed_cost(StepIndex n, StepIndex s);

/// p0(n, s). Throws InvalidConfig outside n > s + 1, s >= 0.
std::int64_t mixed_cost_restart_held(StepIndex n, StepIndex s);

struct MixedConfig {
  /// When unset the producer asks for Initialize(max_n).
  std::optional<StepIndex> max_n;
  StepIndex units = 1;
  StorageKind storage = StorageKind::disk;
};

/// Builds a schedule whose total forward step count equals p(max_n, units).
/// The original forward follows the recorded branches of p. During the
/// adjoint, each loaded restart checkpoint is deleted when the remaining
/// segment fits in storage as dependency data (or when the branch stores
/// dependency data for its first step) and kept otherwise.
/// Terminates with EndReverse(True).
std::unique_ptr<ScheduleProducer> make_mixed(const MixedConfig& config);

struct CostCurve {
  struct Row {
    StepIndex units;
    std::int64_t revolve;
    std::int64_t mixed;
    double ratio;  // revolve / mixed
  };
  StepIndex max_n = 0;
  std::vector<Row> rows;

  /// Header `s,revolve,mixed,ratio`; ratio in shortest round-trip form.
  std::string to_csv() const;
};

/// Revolve versus mixed total forward steps for each s in [units_min, units_max].
CostCurve compare_costs(StepIndex max_n, StepIndex units_min, StepIndex units_max);

}  // namespace chkpt
