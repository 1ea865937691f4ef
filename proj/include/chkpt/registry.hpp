// Copyright 2026 The chkpt Authors
// SPDX-License-Identifier: Apache-2.0
//
// Uniform construction of the built-in strategies from a flat description,
// together with the total forward step count each one should achieve.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>

#include "chkpt/producer.hpp"

namespace chkpt {

enum class StrategyKind { store_everything, periodic, revolve, mixed };

std::string_view to_string(StrategyKind kind);
std::optional<StrategyKind> strategy_kind_from_string(std::string_view name);

struct StrategySpec {
  StrategyKind kind = StrategyKind::store_everything;
  StepIndex steps = 1;
  StepIndex units = 1;   // revolve snapshots or mixed checkpointing units
  StepIndex period = 1;  // periodic only
  StorageKind storage = StorageKind::disk;
};

/// Offline strategies are built expecting Initialize(steps); online ones
/// expect Finalize(steps).
std::unique_ptr<ScheduleProducer> make_producer(const StrategySpec& spec);

/// Total forward steps the strategy's schedule takes for spec.steps steps.
std::int64_t predicted_forward_steps(const StrategySpec& spec);

/// Checkpointing-unit bound the strategy promises, if it has one.
std::optional<std::int64_t> unit_bound(const StrategySpec& spec);

}  // namespace chkpt
