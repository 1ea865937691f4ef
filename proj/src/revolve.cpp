// Copyright 2026 The chkpt Authors
// SPDX-License-Identifier: Apache-2.0

#include "chkpt/revolve.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "chkpt/error.hpp"
#include "chkpt/kernels/split_min.hpp"
#include "emitter.hpp"

namespace chkpt {
namespace {

constexpr std::int32_t kInfinite = std::numeric_limits<std::int32_t>::max();

void check_table_domain(StepIndex n, StepIndex s) {
  if (n < 1) throw InvalidConfig("step count must be at least 1, got " + std::to_string(n));
  if (s < 1) throw InvalidConfig("snapshot count must be at least 1, got " + std::to_string(s));
  if (n > kMaxTableSteps) {
    throw InvalidConfig("step count " + std::to_string(n) + " exceeds the supported maximum " +
                        std::to_string(kMaxTableSteps));
  }
}

}  // namespace

RevolveTable::RevolveTable(StepIndex max_n, StepIndex snapshots) : max_n_(max_n) {
  check_table_domain(max_n, snapshots);
  // More than max_n - 1 snapshots never helps.
  const StepIndex top = std::min<StepIndex>(snapshots, std::max<StepIndex>(1, max_n - 1));
  rows_ = top + 1;
  const auto width = static_cast<std::size_t>(max_n + 1);
  cost_.assign(static_cast<std::size_t>(rows_) * width, kInfinite);
  split_.assign(cost_.size(), 0);

  cost_[at(1, 0)] = 1;
  for (StepIndex s = 1; s <= top; ++s) {
    cost_[at(1, s)] = 1;
    for (StepIndex n = 2; n <= max_n; ++n) {
      if (s == 1) {
        cost_[at(n, s)] = static_cast<std::int32_t>(n * (n + 1) / 2);
        split_[at(n, s)] = static_cast<std::int32_t>(n - 1);
        continue;
      }
      const std::span<const std::int32_t> head(cost_.data() + at(0, s), width);
      const std::span<const std::int32_t> tail(cost_.data() + at(0, s - 1), width);
      const auto best = kernels::split_min(head, tail, static_cast<std::int32_t>(n), 1,
                                           static_cast<std::int32_t>(n - 1),
                                           kernels::TieBreak::smallest);
      cost_[at(n, s)] = best.cost;
      split_[at(n, s)] = best.split;
    }
  }
}

std::size_t RevolveTable::at(StepIndex n, StepIndex s) const {
  return static_cast<std::size_t>(s) * static_cast<std::size_t>(max_n_ + 1) +
         static_cast<std::size_t>(n);
}

std::int64_t RevolveTable::cost(StepIndex n, StepIndex s) const {
  if (n < 1 || n > max_n_ || s < 1) {
    throw InvalidConfig("revolve cost queried outside its table: n=" + std::to_string(n) +
                        ", s=" + std::to_string(s));
  }
  if (s >= rows_ && rows_ - 1 < n - 1) {
    throw InvalidConfig("revolve table built for fewer snapshots than requested");
  }
  return cost_[at(n, std::min(s, rows_ - 1))];
}

StepIndex RevolveTable::split(StepIndex n, StepIndex s) const {
  if (n < 2) throw InvalidConfig("a single step has no split");
  (void)cost(n, s);
  return split_[at(n, std::min(s, rows_ - 1))];
}

std::int64_t revolve_cost(StepIndex n, StepIndex s) {
  check_table_domain(n, s);
  return RevolveTable(n, s).cost(n, s);
}

namespace {

class RevolveProducer final : public PlannedProducer {
 public:
  explicit RevolveProducer(const RevolveConfig& config)
      : PlannedProducer(config.max_n), config_(config) {
    if (config_.snapshots < 1) {
      throw InvalidConfig("snapshots must be at least 1, got " +
                          std::to_string(config_.snapshots));
    }
    if (config_.max_n) check_table_domain(*config_.max_n, config_.snapshots);
  }

  std::string_view strategy() const override { return "revolve"; }

 protected:
  std::vector<Action> plan(StepIndex max_n) const override {
    check_table_domain(max_n, config_.snapshots);
    const RevolveTable table(max_n, config_.snapshots);
    detail::Emitter emit(max_n, config_.storage);

    // A segment [start, start + steps) has a restart checkpoint at `start`
    // (still to be written when `need_shot`) and `snapshots` slots including
    // that one. After its right part is reversed, the checkpoint is restored
    // and the left part of length `split` is handled in the same way.
    struct Resume {
      StepIndex start;
      StepIndex split;
      StepIndex snapshots;
    };
    std::vector<Resume> resume;

    StepIndex start = 0;
    StepIndex steps = max_n;
    StepIndex snapshots = std::min<StepIndex>(config_.snapshots, std::max<StepIndex>(1, max_n - 1));
    bool need_shot = true;
    while (true) {
      if (steps == 1) {
        emit.step_and_reverse(start);
        if (resume.empty()) break;
        const Resume r = resume.back();
        resume.pop_back();
        emit.read(r.start, r.split == 1);
        emit.clear();
        start = r.start;
        steps = r.split;
        snapshots = r.snapshots;
        need_shot = false;
        continue;
      }

      const StepIndex m = table.split(steps, snapshots);
      emit.configure(need_shot, false);
      emit.forward(start, start + m);
      if (need_shot) emit.write(start);
      emit.clear();

      resume.push_back({start, m, snapshots});
      start += m;
      steps -= m;
      snapshots -= 1;
      need_shot = true;
    }
    return emit.finish(true);
  }

 private:
  RevolveConfig config_;
};

}  // namespace

std::unique_ptr<ScheduleProducer> make_revolve(const RevolveConfig& config) {
  return std::make_unique<RevolveProducer>(config);
}

}  // namespace chkpt
