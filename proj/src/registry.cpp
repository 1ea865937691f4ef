// Copyright 2026 The chkpt Authors
// SPDX-License-Identifier: Apache-2.0

#include "chkpt/registry.hpp"

#include "chkpt/error.hpp"
#include "chkpt/mixed.hpp"
#include "chkpt/revolve.hpp"
#include "chkpt/strategies.hpp"

namespace chkpt {

std::string_view to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::store_everything: return "store-everything";
    case StrategyKind::periodic: return "periodic";
    case StrategyKind::revolve: return "revolve";
    case StrategyKind::mixed: return "mixed";
  }
  return "?";
}

std::optional<StrategyKind> strategy_kind_from_string(std::string_view name) {
  for (auto kind : {StrategyKind::store_everything, StrategyKind::periodic, StrategyKind::revolve,
                    StrategyKind::mixed}) {
    if (name == to_string(kind)) return kind;
  }
  return std::nullopt;
}

std::unique_ptr<ScheduleProducer> make_producer(const StrategySpec& spec) {
  switch (spec.kind) {
    case StrategyKind::store_everything: return make_store_everything();
    case StrategyKind::periodic: return make_periodic_disk({spec.period, spec.storage});
    case StrategyKind::revolve: return make_revolve({std::nullopt, spec.units, spec.storage});
    case StrategyKind::mixed: return make_mixed({std::nullopt, spec.units, spec.storage});
  }
  throw InvalidConfig("unknown strategy");
}

std::int64_t predicted_forward_steps(const StrategySpec& spec) {
  switch (spec.kind) {
    case StrategyKind::store_everything: return spec.steps;
    case StrategyKind::periodic: return 2 * spec.steps;
    case StrategyKind::revolve: return revolve_cost(spec.steps, spec.units);
    case StrategyKind::mixed: return mixed_cost(spec.steps, spec.units);
  }
  throw InvalidConfig("unknown strategy");
}

std::optional<std::int64_t> unit_bound(const StrategySpec& spec) {
  switch (spec.kind) {
    case StrategyKind::revolve:
    case StrategyKind::mixed: return spec.units;
    default: return std::nullopt;
  }
}

}  // namespace chkpt
