// Copyright 2026 The chkpt Authors
// SPDX-License-Identifier: Apache-2.0
//
// Exhaustive search for the cheapest adjoint calculation on tiny instances,
// independent of the dynamic programs it is used to check.
//
// Model: s checkpointing units, each holding either restart data for one step
// or dependency data for one step, never both kinds for the same step; one
// further slot of intermediate storage holding dependency data for the step
// the adjoint is about to cross. Moves:
//   advance one step from a restartable forward position, optionally storing
//     restart data for that step and/or its dependency data (in a unit or
//     in intermediate storage)                                     cost 1
//   restore the forward from a restart checkpoint                  cost 0
//   delete a checkpoint                                            cost 0
//   advance the adjoint one step using intermediate storage or a
//     dependency-data checkpoint; the forward is no longer
//     restartable afterwards                                       cost 0

#pragma once

#include <cstdint>

#include "chkpt/action.hpp"

namespace chkpt {

struct OracleOptions {
  /// Search is aborted with SearchBudgetExceeded after this many expansions.
  std::int64_t max_nodes = 20'000'000;
};

/// Largest step count the state encoding supports.
inline constexpr StepIndex kOracleMaxSteps = 16;

/// Minimal total forward steps to advance the adjoint over n steps with s
/// units. Throws InvalidConfig for n < 1, s < 1 or n > kOracleMaxSteps.
std::int64_t brute_force_optimum(StepIndex n, StepIndex s, const OracleOptions& options = {});

}  // namespace chkpt
