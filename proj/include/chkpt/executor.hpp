// Copyright 2026 The chkpt Authors
// SPDX-License-Identifier: Apache-2.0
//
// Executes schedules against a scalar model so that the adjoint actually
// depends on the data a schedule claims to keep:
//
//   u_{k+1} = f(u_k, theta) = u_k - h * theta * u_k^2,   J = u_N^2
//
// Step k needs u_k both to restart the forward and to form its Jacobian
// df/du = 1 - 2 h theta u_k, so restart data and dependency data have the
// same size.

#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "chkpt/producer.hpp"

namespace chkpt {

struct ToyModel {
  StepIndex steps = 1;
  double u0 = 1.0;
  double h = 0.1;
  double theta = 1.0;

  /// One forward step.
  double f(double u) const { return u - h * theta * u * u; }
  double df_du(double u) const { return 1.0 - 2.0 * h * theta * u; }
  double df_dtheta(double u) const { return -h * u * u; }
};

struct GradientResult {
  double J = 0.0;
  double dJ_du0 = 0.0;
  double dJ_dtheta = 0.0;
};

struct ForwardState {
  std::optional<StepIndex> step = 0;  // nullopt: forward cannot continue
  double u = 0.0;
  std::int64_t evaluations = 0;
};

/// Restart values and per-step dependency records, in intermediate storage
/// and in named checkpoint stores.
struct Tape {
  struct Contents {
    std::optional<std::pair<StepIndex, double>> restart;
    std::map<StepIndex, double> data;  // step -> u_k
  };
  Contents buffer;
  std::map<std::pair<StepIndex, StorageKind>, Contents> checkpoints;
};

struct StoreFlags {
  bool store_ics = false;
  bool store_data = false;
};

struct AdjointState {
  StepIndex position = 0;
  double lambda = 0.0;     // dJ/du at `position`
  double dJ_dtheta = 0.0;  // accumulated over steps already crossed
};

/// Advances over steps n0..n1-1. Throws PositionError unless the forward is at n0.
void run_forward_segment(const ToyModel& model, ForwardState& state, Tape& tape, StepIndex n0,
                         StepIndex n1, StoreFlags flags);

/// Advances the adjoint from n1 down to n0 using records in tape.buffer.
/// Throws PositionError if the adjoint is not at n1, MissingDependency if a
/// record is absent.
AdjointState run_adjoint_segment(const ToyModel& model, const Tape& tape, StepIndex n1,
                                 StepIndex n0, AdjointState adjoint);

/// Plain forward and adjoint with every u_k kept; the reference result.
GradientResult reference_gradient(const ToyModel& model);

/// J alone, for finite differences.
double functional(const ToyModel& model);

struct ScheduledRun {
  GradientResult gradient;
  std::int64_t f_evaluations = 0;
  ScheduleTrace trace;
};

/// Drives `producer` for model.steps steps and executes every action.
/// Execution errors carry the index of the failing action.
ScheduledRun run_under_schedule(const ToyModel& model, ScheduleProducer& producer);

}  // namespace chkpt
