// Copyright 2026 The chkpt Authors
// SPDX-License-Identifier: Apache-2.0

#include "chkpt/oracle.hpp"

#include <bit>
#include <functional>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

#include "chkpt/error.hpp"

namespace chkpt {
namespace {

constexpr std::uint32_t kUndefined = 31;

struct State {
  std::uint32_t adjoint;   // steps below this still need the adjoint
  std::uint32_t forward;   // restartable forward position or kUndefined
  std::uint32_t restart;   // bit k: restart checkpoint for step k
  std::uint32_t data;      // bit k: dependency-data checkpoint for step k
  bool intermediate;       // dependency data for step adjoint-1 buffered

  std::uint64_t key() const {
    return static_cast<std::uint64_t>(adjoint) | static_cast<std::uint64_t>(forward) << 5 |
           static_cast<std::uint64_t>(restart) << 10 | static_cast<std::uint64_t>(data) << 26 |
           static_cast<std::uint64_t>(intermediate) << 42;
  }
  static State from_key(std::uint64_t k) {
    return {static_cast<std::uint32_t>(k & 31), static_cast<std::uint32_t>(k >> 5 & 31),
            static_cast<std::uint32_t>(k >> 10 & 0xFFFF), static_cast<std::uint32_t>(k >> 26 & 0xFFFF),
            (k >> 42 & 1) != 0};
  }

  int units() const { return std::popcount(restart) + std::popcount(data); }

  // Checkpoints for steps the adjoint has passed can never be used again.
  State canonical() const {
    State s = *this;
    const std::uint32_t live = (1u << adjoint) - 1;
    s.restart &= live;
    s.data &= live;
    if (s.forward != kUndefined && s.forward >= s.adjoint) s.forward = kUndefined;
    return s;
  }
};

}  // namespace

std::int64_t brute_force_optimum(StepIndex n, StepIndex s, const OracleOptions& options) {
  if (n < 1 || n > kOracleMaxSteps) {
    throw InvalidConfig("oracle supports 1 <= n <= " + std::to_string(kOracleMaxSteps) +
                        ", got " + std::to_string(n));
  }
  if (s < 1) throw InvalidConfig("oracle needs at least one unit, got " + std::to_string(s));
  const int units = static_cast<int>(std::min<StepIndex>(s, n));

  using Entry = std::pair<std::int64_t, std::uint64_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  std::unordered_map<std::uint64_t, std::int64_t> best;

  const auto push = [&](const State& next, std::int64_t cost) {
    const std::uint64_t key = next.canonical().key();
    const auto [it, inserted] = best.try_emplace(key, cost);
    if (!inserted) {
      if (it->second <= cost) return;
      it->second = cost;
    }
    open.emplace(cost, key);
  };

  push(State{static_cast<std::uint32_t>(n), 0, 0, 0, false}, 0);
  std::int64_t expanded = 0;
  while (!open.empty()) {
    const auto [cost, key] = open.top();
    open.pop();
    if (best[key] < cost) continue;
    const State st = State::from_key(key);
    if (st.adjoint == 0) return cost;
    if (++expanded > options.max_nodes) {
      throw SearchBudgetExceeded("oracle exceeded " + std::to_string(options.max_nodes) +
                                 " expansions at n=" + std::to_string(n) + ", s=" +
                                 std::to_string(s));
    }

    // Adjoint step over adjoint-1.
    const std::uint32_t last = st.adjoint - 1;
    if (st.intermediate || (st.data >> last & 1u)) {
      State next = st;
      next.adjoint = last;
      next.intermediate = false;
      next.forward = kUndefined;
      push(next, cost);
    }

    // Restore from, or delete, a checkpoint.
    for (std::uint32_t k = 0; k < st.adjoint; ++k) {
      if (st.restart >> k & 1u) {
        State restored = st;
        restored.forward = k;
        push(restored, cost);
        State dropped = st;
        dropped.restart &= ~(1u << k);
        push(dropped, cost);
      }
      if (st.data >> k & 1u) {
        State dropped = st;
        dropped.data &= ~(1u << k);
        push(dropped, cost);
      }
    }

    // Forward step over k = forward.
    if (st.forward == kUndefined) continue;
    const std::uint32_t k = st.forward;
    const bool has_restart = (st.restart >> k & 1u) != 0;
    for (int store_restart = 0; store_restart <= 1; ++store_restart) {
      if (store_restart && has_restart) continue;
      // 0: discard dependency data, 1: keep in intermediate storage, 2: checkpoint it.
      for (int data_target = 0; data_target <= 2; ++data_target) {
        State next = st;
        next.forward = k + 1;
        if (store_restart) next.restart |= 1u << k;
        if (data_target == 1) {
          if (k + 1 != st.adjoint) continue;  // only the next adjoint step can use it
          next.intermediate = true;
        } else if (data_target == 2) {
          if (next.restart >> k & 1u) continue;  // both kinds for one step excluded
          if (st.data >> k & 1u) continue;
          next.data |= 1u << k;
        }
        if (next.units() > units) continue;
        push(next, cost + 1);
      }
    }
  }
  throw SearchBudgetExceeded("oracle search space exhausted without reaching the goal");
}

}  // namespace chkpt
