// Copyright 2026 The chkpt Authors
// SPDX-License-Identifier: Apache-2.0

#include "chkpt/producer.hpp"

#include <string>

#include "chkpt/error.hpp"

namespace chkpt {

PlannedProducer::PlannedProducer(std::optional<StepIndex> preset_max_n) : max_n_(preset_max_n) {
  if (max_n_ && *max_n_ < 1) {
    throw InvalidConfig("max_n must be positive, got " + std::to_string(*max_n_));
  }
}

ProducerOutput PlannedProducer::next_action() {
  if (!planned_) {
    if (!max_n_) return NeedsFeedback{FeedbackKind::initialize};
    actions_ = plan(*max_n_);
    planned_ = true;
  }
  if (cursor_ >= actions_.size()) {
    throw ProtocolError(std::string(strategy()) + " schedule already terminated");
  }
  return actions_[cursor_++];
}

void PlannedProducer::provide_feedback(const FeedbackEvent& event) {
  if (event.max_n < 1) {
    throw InvalidConfig("max_n must be positive, got " + std::to_string(event.max_n));
  }
  if (event.kind == FeedbackKind::finalize) {
    throw ProtocolError(std::string(strategy()) + " is an offline schedule; Finalize not accepted");
  }
  if (planned_ || max_n_) {
    throw ProtocolError("Initialize after the schedule has started");
  }
  actions_ = plan(event.max_n);
  max_n_ = event.max_n;
  planned_ = true;
}

std::vector<Action> ScheduleTrace::actions() const {
  std::vector<Action> out;
  out.reserve(entries.size());
  for (const auto& entry : entries) {
    if (const auto* a = std::get_if<Action>(&entry)) out.push_back(*a);
  }
  return out;
}

void drive(ScheduleProducer& producer, StepIndex max_n,
           const std::function<void(std::size_t, const Action&)>& on_action,
           const std::function<void(const FeedbackEvent&)>& on_feedback,
           const DriveOptions& options) {
  if (max_n < 1) throw InvalidConfig("max_n must be positive, got " + std::to_string(max_n));

  bool finalized = false;
  bool forward_ended = false;
  int passes = 0;
  std::size_t index = 0;

  auto deliver = [&](FeedbackKind kind) {
    const FeedbackEvent event{kind, max_n};
    if (on_feedback) on_feedback(event);
    producer.provide_feedback(event);
  };

  while (true) {
    ProducerOutput out = producer.next_action();
    if (const auto* request = std::get_if<NeedsFeedback>(&out)) {
      if (request->kind == FeedbackKind::finalize) {
        if (finalized) throw ProtocolError("producer requested Finalize twice");
        finalized = true;
      }
      deliver(request->kind);
      continue;
    }

    const Action& a = std::get<Action>(out);
    if (index >= options.max_actions) {
      throw ProtocolError("schedule exceeded " + std::to_string(options.max_actions) +
                          " actions");
    }
    on_action(index++, a);

    if (const auto* f = std::get_if<action::Forward>(&a)) {
      if (producer.online() && !finalized && !forward_ended && f->to >= max_n) {
        finalized = true;
        deliver(FeedbackKind::finalize);
      }
    } else if (std::holds_alternative<action::EndForward>(a)) {
      forward_ended = true;
    } else if (const auto* end = std::get_if<action::EndReverse>(&a)) {
      ++passes;
      if (end->exhausted || passes >= options.reverse_passes) break;
    }
  }
}

ScheduleTrace generate_schedule(ScheduleProducer& producer, StepIndex max_n,
                                const DriveOptions& options) {
  ScheduleTrace trace;
  trace.max_n = max_n;
  drive(
      producer, max_n, [&](std::size_t, const Action& a) { trace.entries.emplace_back(a); },
      [&](const FeedbackEvent& e) { trace.entries.emplace_back(e); }, options);
  return trace;
}

}  // namespace chkpt
