// Copyright 2026 The chkpt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "chkpt/action.hpp"

namespace chkpt {

/// Returned by a producer that cannot continue until the application tells
/// it the number of steps.
struct NeedsFeedback {
  FeedbackKind kind = FeedbackKind::initialize;
  friend bool operator==(const NeedsFeedback&, const NeedsFeedback&) = default;
};

using ProducerOutput = std::variant<Action, NeedsFeedback>;

/// A lazy, stateful source of schedule actions.
///
/// Offline producers (revolve, mixed) need Initialize(max_n) before their
/// first action. Online producers (store-everything, periodic) start
/// emitting immediately and accept Finalize(max_n) once the original forward
/// reaches the end of the model. A producer is single-owner; two producers
/// with the same configuration fed the same events emit identical sequences.
class ScheduleProducer {
 public:
  virtual ~ScheduleProducer() = default;

  /// Throws ProtocolError once the producer has emitted EndReverse(True).
  virtual ProducerOutput next_action() = 0;

  /// Throws InvalidConfig for max_n < 1 and ProtocolError for an event the
  /// producer cannot accept in its current state.
  virtual void provide_feedback(const FeedbackEvent& event) = 0;

  virtual std::string_view strategy() const = 0;
  virtual bool online() const = 0;
};

/// Base for offline producers: the full sequence is built once max_n is known
/// and then handed out one action at a time.
class PlannedProducer : public ScheduleProducer {
 public:
  ProducerOutput next_action() final;
  void provide_feedback(const FeedbackEvent& event) final;
  bool online() const final { return false; }

 protected:
  /// `preset_max_n` skips the Initialize handshake.
  explicit PlannedProducer(std::optional<StepIndex> preset_max_n);

  virtual std::vector<Action> plan(StepIndex max_n) const = 0;

 private:
  std::optional<StepIndex> max_n_;
  std::vector<Action> actions_;
  std::size_t cursor_ = 0;
  bool planned_ = false;
};

/// One event in the interaction between an application and a producer.
using TraceEntry = std::variant<Action, FeedbackEvent>;

/// What `drive` recorded: every action in order, with feedback events
/// interleaved where they were delivered.
struct ScheduleTrace {
  StepIndex max_n = 0;
  std::vector<TraceEntry> entries;

  std::vector<Action> actions() const;
};

struct DriveOptions {
  /// Stop after this many EndReverse actions (relevant for producers that
  /// allow repeated adjoint passes).
  int reverse_passes = 1;
  /// Guard against producers that never terminate.
  std::size_t max_actions = 50'000'000;
};

/// Runs `producer` for a model of `max_n` steps, supplying Initialize when
/// requested and Finalize when the original forward reaches max_n. Every
/// action is passed to `on_action` together with its index before the next
/// one is requested.
void drive(ScheduleProducer& producer, StepIndex max_n,
           const std::function<void(std::size_t, const Action&)>& on_action,
           const std::function<void(const FeedbackEvent&)>& on_feedback = {},
           const DriveOptions& options = {});

/// Convenience wrapper around `drive` that records the trace.
ScheduleTrace generate_schedule(ScheduleProducer& producer, StepIndex max_n,
                                const DriveOptions& options = {});

}  // namespace chkpt
