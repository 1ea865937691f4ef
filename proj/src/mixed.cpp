// Copyright 2026 The chkpt Authors
// SPDX-License-Identifier: Apache-2.0

#include "chkpt/mixed.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <string>
#include <variant>

#include "chkpt/error.hpp"
#include "chkpt/kernels/split_min.hpp"
#include "emitter.hpp"

namespace chkpt {
namespace {

constexpr std::int32_t kInfinite = std::numeric_limits<std::int32_t>::max();

// Decision codes stored in the choice table; values >= 2 are restart splits.
constexpr std::int32_t kAllData = -1;
constexpr std::int32_t kRerun = -2;
constexpr std::int32_t kDataStep = -3;

// Upper bound on table cells per array, to keep memory in the hundreds of MB.
constexpr std::size_t kMaxCells = std::size_t{1} << 25;

std::int32_t triangle_minus_one(StepIndex n) { return static_cast<std::int32_t>(n * (n + 1) / 2 - 1); }

void check_steps(StepIndex n) {
  if (n < 1) throw InvalidConfig("step count must be at least 1, got " + std::to_string(n));
  if (n > kMaxTableSteps) {
    throw InvalidConfig("step count " + std::to_string(n) + " exceeds the supported maximum " +
                        std::to_string(kMaxTableSteps));
  }
}

void check_mixed_domain(StepIndex n, StepIndex s) {
  check_steps(n);
  if (s < std::min<StepIndex>(1, n - 1)) {
    throw InvalidConfig("mixed cost needs s >= min(1, n - 1); got n=" + std::to_string(n) +
                        ", s=" + std::to_string(s));
  }
}

}  // namespace

MixedTable::MixedTable(StepIndex max_n, StepIndex max_units) : max_n_(max_n) {
  check_steps(max_n);
  if (max_units < 0) throw InvalidConfig("unit count must be non-negative");
  // p(n, s) = n once s >= n - 1, so rows beyond max_n - 1 repeat.
  const StepIndex top = std::min<StepIndex>(max_units, std::max<StepIndex>(1, max_n - 1));
  rows_ = top + 1;
  const auto width = static_cast<std::size_t>(max_n + 1);
  if (static_cast<std::size_t>(rows_) * width > kMaxCells) {
    throw InvalidConfig("mixed table for n=" + std::to_string(max_n) + ", s=" +
                        std::to_string(top) + " exceeds the supported size");
  }
  cost_.assign(static_cast<std::size_t>(rows_) * width, kInfinite);
  choice_.assign(cost_.size(), 0);

  for (StepIndex s = 0; s <= top; ++s) {
    for (StepIndex n = 1; n <= max_n; ++n) {
      const std::size_t i = at(n, s);
      if (n <= s + 1) {
        cost_[i] = static_cast<std::int32_t>(n);
        choice_[i] = kAllData;
      } else if (s == 1) {
        cost_[i] = triangle_minus_one(n);
        choice_[i] = kRerun;
      } else if (s >= 2) {
        const std::int32_t data = 1 + cost_[at(n - 1, s - 1)];
        const std::span<const std::int32_t> head(cost_.data() + at(0, s), width);
        const std::span<const std::int32_t> tail(cost_.data() + at(0, s - 1), width);
        const auto best = kernels::split_min(head, tail, static_cast<std::int32_t>(n), 2,
                                             static_cast<std::int32_t>(n - 1),
                                             kernels::TieBreak::largest);
        if (data <= best.cost) {
          cost_[i] = data;
          choice_[i] = kDataStep;
        } else {
          cost_[i] = best.cost;
          choice_[i] = best.split;
        }
      }
      // s == 0 with n > 1 stays infinite: no schedule exists.
    }
  }
}

std::size_t MixedTable::at(StepIndex n, StepIndex s) const {
  return static_cast<std::size_t>(s) * static_cast<std::size_t>(max_n_ + 1) +
         static_cast<std::size_t>(n);
}

StepIndex MixedTable::row(StepIndex n, StepIndex s) const {
  if (n < 1 || n > max_n_ || s < std::min<StepIndex>(1, n - 1)) {
    throw InvalidConfig("mixed cost queried outside its domain: n=" + std::to_string(n) +
                        ", s=" + std::to_string(s));
  }
  if (s < rows_) return s;
  if (n - 1 > rows_ - 1) throw InvalidConfig("mixed table built for fewer units than requested");
  return rows_ - 1;
}

std::int64_t MixedTable::cost(StepIndex n, StepIndex s) const { return cost_[at(n, row(n, s))]; }

MixedDecision MixedTable::decision(StepIndex n, StepIndex s) const {
  const std::int32_t c = choice_[at(n, row(n, s))];
  switch (c) {
    case kAllData: return {MixedCase::store_all_data, 0};
    case kRerun: return {MixedCase::rerun_from_restart, 0};
    case kDataStep: return {MixedCase::store_data_step, 0};
    default: return {MixedCase::restart_split, c};
  }
}

std::int64_t MixedTable::restart_held_cost(StepIndex n, StepIndex s) const {
  if (s < 0 || n <= s + 1 || n > max_n_) {
    throw InvalidConfig("restart-held cost needs n > s + 1 >= 1; got n=" + std::to_string(n) +
                        ", s=" + std::to_string(s));
  }
  if (s == 0) return triangle_minus_one(n);
  const auto width = static_cast<std::size_t>(max_n_ + 1);
  const std::span<const std::int32_t> head(cost_.data() + at(0, row(n - 1, s + 1)), width);
  const std::span<const std::int32_t> tail(cost_.data() + at(0, row(n - 1, s)), width);
  return kernels::split_min(head, tail, static_cast<std::int32_t>(n), 1,
                            static_cast<std::int32_t>(n - 1), kernels::TieBreak::largest)
      .cost;
}

std::int64_t mixed_cost(StepIndex n, StepIndex s) {
  check_mixed_domain(n, s);
  return MixedTable(n, s).cost(n, s);
}

std::int64_t mixed_cost_restart_held(StepIndex n, StepIndex s) {
  if (s < 0 || n <= s + 1) {
    throw InvalidConfig("restart-held cost needs n > s + 1 and s >= 0; got n=" +
                        std::to_string(n) + ", s=" + std::to_string(s));
  }
  check_steps(n);
  return MixedTable(n, s + 1).restart_held_cost(n, s);
}

namespace {

// Work items for the schedule builder. Each one advances the adjoint over a
// contiguous run of steps ending where the adjoint currently is.

// Forward at `start`, nothing stored for it, `units` free.
struct Solve {
  StepIndex start, steps, units;
};
// Restart checkpoint for `start` held, plus `units` other free units.
struct Held {
  StepIndex start, steps, units;
};
// Dependency data for `step` is in a checkpoint.
struct ReadReverse {
  StepIndex step;
};
using Task = std::variant<Solve, Held, ReadReverse>;

class MixedProducer final : public PlannedProducer {
 public:
  explicit MixedProducer(const MixedConfig& config)
      : PlannedProducer(config.max_n), config_(config) {
    if (config_.units < 0) {
      throw InvalidConfig("units must be non-negative, got " + std::to_string(config_.units));
    }
    if (config_.max_n) check_config(*config_.max_n);
  }

  std::string_view strategy() const override { return "mixed"; }

 protected:
  std::vector<Action> plan(StepIndex max_n) const override {
    check_config(max_n);
    const MixedTable table(max_n, config_.units);
    detail::Emitter emit(max_n, config_.storage);

    // Store data for every step in [start, start + steps), keeping the last
    // in intermediate storage, then walk the adjoint back over all of them.
    const auto all_data = [&](StepIndex start, StepIndex steps) {
      const StepIndex last = start + steps - 1;
      for (StepIndex k = start; k < last; ++k) {
        emit.configure(false, true);
        emit.forward(k, k + 1);
        emit.write(k);
        emit.clear();
      }
      emit.step_and_reverse(last);
      for (StepIndex k = last - 1; k >= start; --k) {
        emit.read(k, true);
        emit.reverse(k + 1, k);
        emit.clear();
      }
    };

    std::vector<Task> tasks{Solve{0, max_n, std::min(config_.units, max_n)}};
    while (!tasks.empty()) {
      const Task task = tasks.back();
      tasks.pop_back();

      if (const auto* t = std::get_if<ReadReverse>(&task)) {
        emit.read(t->step, true);
        emit.reverse(t->step + 1, t->step);
        emit.clear();
      } else if (const auto* t = std::get_if<Solve>(&task)) {
        const auto [start, steps, units] = *t;
        const MixedDecision d = table.decision(steps, units);
        switch (d.kind) {
          case MixedCase::store_all_data:
            all_data(start, steps);
            break;
          case MixedCase::rerun_from_restart:
            emit.configure(true, false);
            emit.forward(start, start + steps - 1);
            emit.write(start);
            emit.clear();
            emit.step_and_reverse(start + steps - 1);
            tasks.push_back(Held{start, steps - 1, 0});
            break;
          case MixedCase::restart_split:
            emit.configure(true, false);
            emit.forward(start, start + d.split);
            emit.write(start);
            emit.clear();
            tasks.push_back(Held{start, d.split, units - 1});
            tasks.push_back(Solve{start + d.split, steps - d.split, units - 1});
            break;
          case MixedCase::store_data_step:
            emit.configure(false, true);
            emit.forward(start, start + 1);
            emit.write(start);
            emit.clear();
            tasks.push_back(ReadReverse{start});
            tasks.push_back(Solve{start + 1, steps - 1, units - 1});
            break;
        }
      } else {
        // With the restart checkpoint in hand the choices are those of p
        // with one more unit: deleting the checkpoint frees it for data.
        const auto [start, steps, units] = std::get<Held>(task);
        const MixedDecision d = table.decision(steps, units + 1);
        switch (d.kind) {
          case MixedCase::store_all_data:
            emit.read(start, true);
            emit.clear();
            all_data(start, steps);
            break;
          case MixedCase::rerun_from_restart:
            emit.read(start, false);
            emit.clear();
            emit.configure(false, false);
            emit.forward(start, start + steps - 1);
            emit.clear();
            emit.step_and_reverse(start + steps - 1);
            tasks.push_back(Held{start, steps - 1, 0});
            break;
          case MixedCase::restart_split:
            emit.read(start, false);
            emit.clear();
            emit.configure(false, false);
            emit.forward(start, start + d.split);
            emit.clear();
            tasks.push_back(Held{start, d.split, units});
            tasks.push_back(Solve{start + d.split, steps - d.split, units});
            break;
          case MixedCase::store_data_step:
            emit.read(start, true);
            emit.clear();
            emit.configure(false, true);
            emit.forward(start, start + 1);
            emit.write(start);
            emit.clear();
            tasks.push_back(ReadReverse{start});
            tasks.push_back(Solve{start + 1, steps - 1, units});
            break;
        }
      }
    }
    return emit.finish(true);
  }

 private:
  void check_config(StepIndex max_n) const {
    check_steps(max_n);
    if (max_n > 1 && config_.units < 1) {
      throw InvalidConfig("mixed schedules with more than one step need at least one unit");
    }
  }

  MixedConfig config_;
};

}  // namespace

std::unique_ptr<ScheduleProducer> make_mixed(const MixedConfig& config) {
  return std::make_unique<MixedProducer>(config);
}

std::string CostCurve::to_csv() const {
  std::string out = "s,revolve,mixed,ratio\n";
  char buf[64];
  for (const auto& r : rows) {
    const auto res = std::to_chars(buf, buf + sizeof buf, r.ratio);
    out += std::to_string(r.units) + ',' + std::to_string(r.revolve) + ',' +
           std::to_string(r.mixed) + ',' + std::string(buf, res.ptr) + '\n';
  }
  return out;
}

CostCurve compare_costs(StepIndex max_n, StepIndex units_min, StepIndex units_max) {
  check_steps(max_n);
  if (units_min < 1 || units_min > units_max) {
    throw InvalidConfig("unit range must satisfy 1 <= min <= max; got " +
                        std::to_string(units_min) + ".." + std::to_string(units_max));
  }
  const RevolveTable revolve(max_n, units_max);
  const MixedTable mixed(max_n, units_max);
  CostCurve curve;
  curve.max_n = max_n;
  for (StepIndex s = units_min; s <= units_max; ++s) {
    const auto r = revolve.cost(max_n, s);
    const auto m = mixed.cost(max_n, s);
    curve.rows.push_back({s, r, m, static_cast<double>(r) / static_cast<double>(m)});
  }
  return curve;
}

}  // namespace chkpt
