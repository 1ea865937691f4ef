// Copyright 2026 The chkpt Authors
// SPDX-License-Identifier: Apache-2.0
//
// Replays an action sequence against an abstract model of forward/adjoint
// positions, intermediate storage and checkpoints. Reports every rule
// violation and accumulates a cost report.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chkpt/action.hpp"
#include "chkpt/producer.hpp"

namespace chkpt {

enum class CheckpointContent { forward_restart, nonlinear_dependency, combined };

std::string_view to_string(CheckpointContent content);

/// Half-open step range [from, to).
struct StepRange {
  StepIndex from = 0;
  StepIndex to = 0;
  friend bool operator==(const StepRange&, const StepRange&) = default;
};

struct CheckpointRecord {
  CheckpointContent content = CheckpointContent::forward_restart;
  /// Steps the stored restart data was buffered over; `from` is the restart step.
  std::optional<StepRange> ics_range;
  std::set<StepIndex> data_steps;

  /// Checkpointing units occupied: one for restart data plus one per step
  /// of dependency data.
  std::int64_t units() const;
};

using CheckpointKey = std::pair<StepIndex, StorageKind>;

struct StorageState {
  std::optional<StepIndex> forward_pos = 0;  // nullopt: cannot restart from here
  StepIndex adjoint_pos = 0;
  StepIndex max_n = 0;
  bool store_ics = false;
  bool store_data = false;
  std::optional<StepRange> buffered_ics;
  std::set<StepIndex> buffered_data;
  std::map<CheckpointKey, CheckpointRecord> checkpoints;
  std::set<CheckpointKey> deleted;
  bool forward_ended = false;
  bool terminated = false;
  std::int64_t reverse_passes = 0;

  std::int64_t units_in(StorageKind kind) const;
};

struct Violation {
  std::size_t index = 0;  // action index; one past the end for end-of-schedule checks
  std::string rule;
  std::string message;
  friend bool operator==(const Violation&, const Violation&) = default;
};

namespace rules {
inline constexpr const char* kMalformedAction = "MALFORMED_ACTION";
inline constexpr const char* kForwardPosMismatch = "FORWARD_POS_MISMATCH";
inline constexpr const char* kForwardPastEnd = "FORWARD_PAST_END";
inline constexpr const char* kWriteEmpty = "WRITE_EMPTY";
inline constexpr const char* kWriteStepMismatch = "WRITE_STEP_MISMATCH";
inline constexpr const char* kCheckpointExists = "CHECKPOINT_EXISTS";
inline constexpr const char* kUnitLimit = "UNIT_LIMIT";
inline constexpr const char* kReadMissing = "READ_MISSING";
inline constexpr const char* kReadAfterDelete = "READ_AFTER_DELETE";
inline constexpr const char* kReverseOrder = "REVERSE_ORDER";
inline constexpr const char* kReverseMissingData = "REVERSE_MISSING_DATA";
inline constexpr const char* kReverseBeforeEndForward = "REVERSE_BEFORE_END_FORWARD";
inline constexpr const char* kExclusionSameStep = "EXCLUSION_SAME_STEP";
inline constexpr const char* kEndState = "END_STATE";
}  // namespace rules

struct CostReport {
  std::int64_t total_forward_steps = 0;
  std::int64_t forward_steps_original = 0;
  std::map<StorageKind, std::int64_t> peak_units{{StorageKind::ram, 0}, {StorageKind::disk, 0}};
  std::int64_t peak_intermediate_data_steps = 0;
  std::map<std::string, std::int64_t> action_counts;
};

struct ReplayOptions {
  /// Maximum checkpointing units per storage kind; absent kinds are unlimited.
  std::map<StorageKind, std::int64_t> unit_limits;
  bool check_exclusion = true;
};

struct ReplayResult {
  CostReport report;
  std::vector<Violation> violations;
  /// Per action: forward and adjoint state changes, "-" when unchanged.
  std::vector<std::pair<std::string, std::string>> annotations;
  StorageState final_state;

  bool ok() const { return violations.empty(); }
};

/// Incremental replay; `replay` wraps it for whole sequences.
class Simulator {
 public:
  Simulator(StepIndex max_n, ReplayOptions options = {});

  void apply(const Action& a);
  /// End-of-schedule checks; call once after the last action.
  void finish();

  const StorageState& state() const { return state_; }
  ReplayResult take_result() &&;

 private:
  void violate(const char* rule, std::string message);
  void note_intermediate();

  void on(const action::Clear& a);
  void on(const action::Configure& a);
  void on(const action::Write& a);
  void on(const action::Forward& a);
  void on(const action::Read& a);
  void on(const action::Reverse& a);
  void on(const action::EndForward& a);
  void on(const action::EndReverse& a);

  ReplayOptions options_;
  StorageState state_;
  ReplayResult result_;
  std::size_t index_ = 0;
  bool last_was_end_reverse_ = false;
  std::string forward_note_;
  std::string adjoint_note_;
};

/// Replays `actions` for a model of `max_n` steps. Throws InvalidConfig for
/// max_n < 1; schedule defects are returned as violations.
ReplayResult replay(std::span<const Action> actions, StepIndex max_n,
                    const ReplayOptions& options = {});

/// EXCLUSION_SAME_STEP when some step has a restart checkpoint and a
/// separate dependency-data checkpoint at the same time.
std::optional<Violation> check_exclusion(const StorageState& state, std::size_t index = 0);

/// Trace table: index | action(parameters) | forward state | adjoint state.
/// Feedback events appear as rows with index "-".
std::string render_table(const ScheduleTrace& trace);

/// "key value" lines followed by action counts.
std::string report_to_text(const CostReport& report);
/// One line per violation: "INDEX RULE message".
std::string violations_to_text(std::span<const Violation> violations);
/// JSON document with "ok", "report" and "violations".
std::string result_to_json(const ReplayResult& result);

}  // namespace chkpt
