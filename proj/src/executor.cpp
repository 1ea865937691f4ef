// Copyright 2026 The chkpt Authors
// SPDX-License-Identifier: Apache-2.0

#include "chkpt/executor.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "chkpt/error.hpp"

namespace chkpt {
namespace {

void check_model(const ToyModel& model) {
  if (model.steps < 1) {
    throw InvalidConfig("model needs at least one step, got " + std::to_string(model.steps));
  }
}

}  // namespace

void run_forward_segment(const ToyModel& model, ForwardState& state, Tape& tape, StepIndex n0,
                         StepIndex n1, StoreFlags flags) {
  if (state.step != n0) {
    throw PositionError("forward is " +
                            (state.step ? "at step " + std::to_string(*state.step)
                                        : std::string("not restartable")) +
                            ", segment starts at " + std::to_string(n0),
                        std::nullopt);
  }
  if (flags.store_ics && !tape.buffer.restart) tape.buffer.restart = {{n0, state.u}};
  for (StepIndex k = n0; k < n1; ++k) {
    if (flags.store_data) tape.buffer.data[k] = state.u;
    state.u = model.f(state.u);
    ++state.evaluations;
  }
  state.step = n1;
}

AdjointState run_adjoint_segment(const ToyModel& model, const Tape& tape, StepIndex n1,
                                 StepIndex n0, AdjointState adjoint) {
  if (adjoint.position != n1) {
    throw PositionError("adjoint is at step " + std::to_string(adjoint.position) +
                            ", segment starts at " + std::to_string(n1),
                        std::nullopt);
  }
  for (StepIndex k = n1 - 1; k >= n0; --k) {
    const auto it = tape.buffer.data.find(k);
    if (it == tape.buffer.data.end()) {
      throw MissingDependency("no dependency record for step " + std::to_string(k),
                              std::nullopt);
    }
    const double u = it->second;
    adjoint.dJ_dtheta += model.df_dtheta(u) * adjoint.lambda;
    adjoint.lambda *= model.df_du(u);
    adjoint.position = k;
  }
  return adjoint;
}

GradientResult reference_gradient(const ToyModel& model) {
  check_model(model);
  std::vector<double> u(static_cast<std::size_t>(model.steps) + 1);
  u[0] = model.u0;
  for (std::size_t k = 0; k + 1 < u.size(); ++k) u[k + 1] = model.f(u[k]);
  GradientResult out;
  out.J = u.back() * u.back();
  double lambda = 2.0 * u.back();
  for (std::size_t k = u.size() - 1; k-- > 0;) {
    out.dJ_dtheta += model.df_dtheta(u[k]) * lambda;
    lambda *= model.df_du(u[k]);
  }
  out.dJ_du0 = lambda;
  return out;
}

double functional(const ToyModel& model) {
  check_model(model);
  double u = model.u0;
  for (StepIndex k = 0; k < model.steps; ++k) u = model.f(u);
  return u * u;
}

namespace {

class Execution {
 public:
  explicit Execution(const ToyModel& model) : model_(model) { forward_.u = model.u0; }

  void apply(const Action& a) { std::visit([this](const auto& x) { on(x); }, a); }

  bool finished() const { return finished_; }
  GradientResult gradient() const { return result_; }
  std::int64_t evaluations() const { return forward_.evaluations; }

 private:
  void on(const action::Clear& a) {
    if (a.clear_ics) tape_.buffer.restart.reset();
    if (a.clear_data) tape_.buffer.data.clear();
  }
  void on(const action::Configure& a) { flags_ = {a.store_ics, a.store_data}; }
  void on(const action::Write& a) { tape_.checkpoints[{a.step, a.storage}] = tape_.buffer; }
  void on(const action::Forward& a) {
    run_forward_segment(model_, forward_, tape_, a.from, std::min(a.to, model_.steps), flags_);
  }
  void on(const action::Read& a) {
    const auto it = tape_.checkpoints.find({a.step, a.storage});
    if (it == tape_.checkpoints.end()) {
      throw MissingDependency("no checkpoint for step " + std::to_string(a.step), std::nullopt);
    }
    const Tape::Contents& cp = it->second;
    if (cp.restart) {
      tape_.buffer.restart = cp.restart;
      forward_.step = cp.restart->first;
      forward_.u = cp.restart->second;
    } else {
      forward_.step.reset();
    }
    for (const auto& [k, u] : cp.data) tape_.buffer.data[k] = u;
    if (a.delete_after) tape_.checkpoints.erase(it);
  }
  void on(const action::Reverse& a) {
    if (!seeded_) throw PositionError("adjoint started before the forward ended", std::nullopt);
    adjoint_ = run_adjoint_segment(model_, tape_, a.from, a.to, adjoint_);
  }
  void on(const action::EndForward&) {
    if (forward_.step != model_.steps) {
      throw PositionError("EndForward before the last step", std::nullopt);
    }
    result_.J = forward_.u * forward_.u;
    seed_ = 2.0 * forward_.u;
    seeded_ = true;
    reset_adjoint();
  }
  void on(const action::EndReverse&) {
    if (adjoint_.position != 0) {
      throw PositionError("EndReverse with the adjoint at step " +
                              std::to_string(adjoint_.position),
                          std::nullopt);
    }
    result_.dJ_du0 = adjoint_.lambda;
    result_.dJ_dtheta = adjoint_.dJ_dtheta;
    finished_ = true;
    reset_adjoint();
  }

  void reset_adjoint() { adjoint_ = {model_.steps, seed_, 0.0}; }

  const ToyModel& model_;
  ForwardState forward_;
  Tape tape_;
  StoreFlags flags_;
  AdjointState adjoint_;
  double seed_ = 0.0;
  bool seeded_ = false;
  bool finished_ = false;
  GradientResult result_;
};

}  // namespace

ScheduledRun run_under_schedule(const ToyModel& model, ScheduleProducer& producer) {
  check_model(model);
  Execution exec(model);
  ScheduledRun run;
  run.trace.max_n = model.steps;
  drive(
      producer, model.steps,
      [&](std::size_t index, const Action& a) {
        run.trace.entries.emplace_back(a);
        try {
          exec.apply(a);
        } catch (const PositionError& e) {
          throw PositionError(e.what(), index);
        } catch (const MissingDependency& e) {
          throw MissingDependency(e.what(), index);
        }
      },
      [&](const FeedbackEvent& e) { run.trace.entries.emplace_back(e); }, DriveOptions{});
  if (!exec.finished()) throw ExecutionError("schedule ended without EndReverse", std::nullopt);
  run.gradient = exec.gradient();
  run.f_evaluations = exec.evaluations();
  return run;
}

}  // namespace chkpt
