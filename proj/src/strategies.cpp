// Copyright 2026 The chkpt Authors
// SPDX-License-Identifier: Apache-2.0

#include "chkpt/strategies.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "chkpt/error.hpp"

namespace chkpt {
namespace {

void check_max_n(const FeedbackEvent& event) {
  if (event.max_n < 1) {
    throw InvalidConfig("max_n must be positive, got " + std::to_string(event.max_n));
  }
}

class StoreEverything final : public ScheduleProducer {
 public:
  ProducerOutput next_action() override {
    switch (stage_) {
      case Stage::configure:
        stage_ = Stage::forward;
        return Action{action::Configure{true, true}};
      case Stage::forward:
        stage_ = Stage::awaiting_end;
        return Action{action::Forward{0, kUnboundedStep}};
      case Stage::awaiting_end:
        if (!max_n_) return NeedsFeedback{FeedbackKind::finalize};
        stage_ = Stage::reverse;
        return Action{action::EndForward{}};
      case Stage::reverse:
        stage_ = Stage::end_reverse;
        return Action{action::Reverse{*max_n_, 0}};
      case Stage::end_reverse:
        stage_ = Stage::reverse;
        return Action{action::EndReverse{false}};
    }
    throw ProtocolError("unreachable producer state");
  }

  void provide_feedback(const FeedbackEvent& event) override {
    check_max_n(event);
    if (event.kind != FeedbackKind::finalize) {
      throw ProtocolError("store-everything is an online schedule; Initialize not accepted");
    }
    if (max_n_) throw ProtocolError("Finalize already received");
    if (stage_ != Stage::awaiting_end) {
      throw ProtocolError("Finalize is only accepted while the original forward is running");
    }
    max_n_ = event.max_n;
  }

  std::string_view strategy() const override { return "store-everything"; }
  bool online() const override { return true; }

 private:
  enum class Stage { configure, forward, awaiting_end, reverse, end_reverse };
  Stage stage_ = Stage::configure;
  std::optional<StepIndex> max_n_;
};

class PeriodicDisk final : public ScheduleProducer {
 public:
  explicit PeriodicDisk(const PeriodicConfig& config) : config_(config) {
    if (config_.period < 1) {
      throw InvalidConfig("period must be at least 1, got " + std::to_string(config_.period));
    }
  }

  ProducerOutput next_action() override {
    if (pending_.empty()) refill();
    Action a = pending_.front();
    pending_.pop_front();
    if (const auto* f = std::get_if<action::Forward>(&a); f && !forward_done_) {
      last_block_ = f->from;
    }
    return a;
  }

  void provide_feedback(const FeedbackEvent& event) override {
    check_max_n(event);
    if (event.kind != FeedbackKind::finalize) {
      throw ProtocolError("periodic is an online schedule; Initialize not accepted");
    }
    if (max_n_) throw ProtocolError("Finalize already received");
    if (forward_done_ || !last_block_) {
      throw ProtocolError("Finalize is only accepted while the original forward is running");
    }
    if (!(*last_block_ < event.max_n && event.max_n <= *last_block_ + config_.period)) {
      throw ProtocolError("Finalize(" + std::to_string(event.max_n) +
                          ") does not lie in the current forward block starting at step " +
                          std::to_string(*last_block_));
    }
    max_n_ = event.max_n;
    // Drop a next block that was started but cannot run.
    if (!pending_.empty()) {
      if (const auto* f = std::get_if<action::Forward>(&pending_.front());
          f && f->from >= *max_n_) {
        pending_.clear();
      }
    }
  }

  std::string_view strategy() const override { return "periodic"; }
  bool online() const override { return true; }

 private:
  void refill() {
    if (!forward_done_) {
      if (max_n_) {
        forward_done_ = true;
        pending_.push_back(action::EndForward{});
        return;
      }
      const StepIndex k = next_block_;
      next_block_ += config_.period;
      pending_.push_back(action::Configure{true, false});
      pending_.push_back(action::Forward{k, k + config_.period});
      pending_.push_back(action::Write{k, config_.storage});
      pending_.push_back(action::Clear{true, true});
      return;
    }

    // Reverse phase, repeated for every further adjoint pass.
    const StepIndex n = *max_n_;
    const StepIndex last = ((n - 1) / config_.period) * config_.period;
    for (StepIndex k = last; k >= 0; k -= config_.period) {
      const StepIndex end = std::min(k + config_.period, n);
      pending_.push_back(action::Read{k, config_.storage, false});
      pending_.push_back(action::Clear{true, true});
      pending_.push_back(action::Configure{false, true});
      pending_.push_back(action::Forward{k, end});
      pending_.push_back(action::Reverse{end, k});
      pending_.push_back(action::Clear{true, true});
    }
    pending_.push_back(action::EndReverse{false});
  }

  PeriodicConfig config_;
  std::deque<Action> pending_;
  StepIndex next_block_ = 0;
  std::optional<StepIndex> last_block_;
  std::optional<StepIndex> max_n_;
  bool forward_done_ = false;
};

}  // namespace

std::unique_ptr<ScheduleProducer> make_store_everything() {
  return std::make_unique<StoreEverything>();
}

std::unique_ptr<ScheduleProducer> make_periodic_disk(const PeriodicConfig& config) {
  return std::make_unique<PeriodicDisk>(config);
}

}  // namespace chkpt
