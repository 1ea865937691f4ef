// Copyright 2026 The chkpt Authors
// SPDX-License-Identifier: Apache-2.0
//
// The checkpointing schedule action language. A schedule is a sequence of
// actions controlling forward advancement, adjoint advancement, checkpoint
// storage and an intermediate storage buffer.

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace chkpt {

using StepIndex = std::int64_t;

/// Forward upper bound meaning "advance until the model ends".
inline constexpr StepIndex kUnboundedStep = std::numeric_limits<StepIndex>::max();

enum class StorageKind { ram, disk };

std::string_view to_string(StorageKind kind);
std::optional<StorageKind> storage_kind_from_string(std::string_view text);

namespace action {

/// Clear the intermediate storage: the forward restart buffer and/or the
/// non-linear dependency data.
struct Clear {
  bool clear_ics = true;
  bool clear_data = true;
  friend bool operator==(const Clear&, const Clear&) = default;
};

/// Enable or disable buffering of forward restart data and storage of
/// non-linear dependency data while the forward advances.
struct Configure {
  bool store_ics = false;
  bool store_data = false;
  friend bool operator==(const Configure&, const Configure&) = default;
};

/// Transfer the intermediate storage to a checkpoint associated with `step`.
struct Write {
  StepIndex step = 0;
  StorageKind storage = StorageKind::disk;
  friend bool operator==(const Write&, const Write&) = default;
};

/// Advance the forward from the start of step `from` to the start of `to`.
struct Forward {
  StepIndex from = 0;
  StepIndex to = 0;
  friend bool operator==(const Forward&, const Forward&) = default;
};

/// Load the checkpoint for `step` into the intermediate storage, deleting it
/// afterwards when `delete_after` is set.
struct Read {
  StepIndex step = 0;
  StorageKind storage = StorageKind::disk;
  bool delete_after = false;
  friend bool operator==(const Read&, const Read&) = default;
};

/// Advance the adjoint from the start of step `from` to the start of `to`,
/// i.e. over steps from - 1 down to to inclusive. Requires to < from.
struct Reverse {
  StepIndex from = 0;
  StepIndex to = 0;
  friend bool operator==(const Reverse&, const Reverse&) = default;
};

struct EndForward {
  friend bool operator==(const EndForward&, const EndForward&) = default;
};

/// `exhausted` means no further adjoint pass is possible without rerunning
/// the original forward.
struct EndReverse {
  bool exhausted = true;
  friend bool operator==(const EndReverse&, const EndReverse&) = default;
};

}  // namespace action

using Action = std::variant<action::Clear, action::Configure, action::Write, action::Forward,
                            action::Read, action::Reverse, action::EndForward,
                            action::EndReverse>;

/// Action name as used in schedule documents ("Forward", "Read", ...).
std::string_view action_name(const Action& a);

/// `Name(arg, arg, ...)` with booleans as True/False and storage as ram/disk.
std::string to_string(const Action& a);

/// Structural validity of a single action (step indices non-negative,
/// Forward/Reverse ranges non-empty). Returns a diagnostic on failure.
std::optional<std::string> check_action(const Action& a);

/// Feedback supplied to a producer by the application driving it.
enum class FeedbackKind { initialize, finalize };

struct FeedbackEvent {
  FeedbackKind kind = FeedbackKind::initialize;
  StepIndex max_n = 0;
  friend bool operator==(const FeedbackEvent&, const FeedbackEvent&) = default;
};

std::string_view to_string(FeedbackKind kind);
std::string to_string(const FeedbackEvent& event);

}  // namespace chkpt
