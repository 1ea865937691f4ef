// Copyright 2026 The chkpt Authors
// SPDX-License-Identifier: Apache-2.0
//
// Shared helpers for the test executables.

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "chkpt/producer.hpp"
#include "chkpt/registry.hpp"

namespace chkpt::test {

inline std::string golden_path(const std::string& name) {
  return std::string(CHKPT_GOLDEN_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ScheduleTrace trace_of(const StrategySpec& spec) {
  auto producer = make_producer(spec);
  return generate_schedule(*producer, spec.steps);
}

inline StrategySpec spec(StrategyKind kind, StepIndex steps, StepIndex units = 1,
                         StepIndex period = 1) {
  StrategySpec s;
  s.kind = kind;
  s.steps = steps;
  s.units = units;
  s.period = period;
  return s;
}

/// Counts how often each step is crossed by Reverse actions.
inline std::vector<int> reverse_coverage(const std::vector<Action>& actions, StepIndex max_n) {
  std::vector<int> count(static_cast<std::size_t>(max_n), 0);
  for (const auto& a : actions) {
    if (const auto* r = std::get_if<action::Reverse>(&a)) {
      for (StepIndex k = r->to; k < r->from && k < max_n; ++k) ++count[static_cast<std::size_t>(k)];
    }
  }
  return count;
}

}  // namespace chkpt::test
