// Copyright 2026 The chkpt Authors
// SPDX-License-Identifier: Apache-2.0
//
// Online schedules: the number of steps is only learned through Finalize at
// the end of the original forward. Both keep their data after the adjoint
// pass (EndReverse(False)), so further adjoint passes replay the reverse
// phase.

#pragma once

#include <memory>

#include "chkpt/producer.hpp"

namespace chkpt {

/// Keep restart and non-linear dependency data for every step in the
/// intermediate storage. Forward(0, kUnboundedStep) then, after Finalize,
/// a single Reverse over the whole model.
std::unique_ptr<ScheduleProducer> make_store_everything();

struct PeriodicConfig {
  StepIndex period = 1;
  StorageKind storage = StorageKind::disk;
};

/// Store a forward restart checkpoint every `period` steps. The adjoint
/// recomputes each block from its checkpoint with all of the block's
/// non-linear dependency data held in intermediate storage. Checkpoints are
/// never deleted. Throws InvalidConfig if period < 1.
std::unique_ptr<ScheduleProducer> make_periodic_disk(const PeriodicConfig& config);

}  // namespace chkpt
