// Copyright 2026 The chkpt Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "chkpt/error.hpp"
#include "chkpt/executor.hpp"
#include "chkpt/simulator.hpp"
#include "support.hpp"

using namespace chkpt;

namespace {

// Hands out a fixed action list; for exercising hand-written schedules.
class ListProducer final : public ScheduleProducer {
 public:
  explicit ListProducer(std::vector<Action> actions) : actions_(std::move(actions)) {}
  ProducerOutput next_action() override { return actions_.at(next_++); }
  void provide_feedback(const FeedbackEvent&) override {}
  std::string_view strategy() const override { return "list"; }
  bool online() const override { return false; }

 private:
  std::vector<Action> actions_;
  std::size_t next_ = 0;
};

double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("one step by hand") {
  const ToyModel model{1, 1.0, 0.1, 1.0};
  const auto g = reference_gradient(model);
  CHECK(g.J == doctest::Approx(0.81).epsilon(1e-15));
  CHECK(g.dJ_du0 == doctest::Approx(1.44).epsilon(1e-15));
  CHECK(g.dJ_dtheta == doctest::Approx(-0.18).epsilon(1e-15));
  CHECK(functional(model) == doctest::Approx(0.81).epsilon(1e-15));
}

TEST_CASE("forward segments record restart and dependency data on request") {
  const ToyModel model{4, 1.0, 0.1, 1.0};
  ForwardState state{0, model.u0, 0};
  Tape tape;
  run_forward_segment(model, state, tape, 0, 2, {true, true});
  CHECK(state.step == 2);
  CHECK(state.evaluations == 2);
  REQUIRE(tape.buffer.data.size() == 2);
  CHECK(tape.buffer.data.at(0) == 1.0);
  CHECK(tape.buffer.data.at(1) == model.f(1.0));
  REQUIRE(tape.buffer.restart);
  CHECK(tape.buffer.restart->first == 0);
  CHECK_THROWS_AS(run_forward_segment(model, state, tape, 3, 4, {}), PositionError);
}

TEST_CASE("adjoint segments need every dependency record") {
  const ToyModel model{3, 1.0, 0.1, 1.0};
  Tape tape;
  tape.buffer.data[2] = 0.5;
  const AdjointState start{3, 1.0, 0.0};
  const auto after = run_adjoint_segment(model, tape, 3, 2, start);
  CHECK(after.position == 2);
  CHECK(after.lambda == doctest::Approx(model.df_du(0.5)));
  CHECK_THROWS_AS(run_adjoint_segment(model, tape, 2, 1, after), MissingDependency);
  CHECK_THROWS_AS(run_adjoint_segment(model, tape, 3, 2, after), PositionError);
}

TEST_CASE("gradient matches central finite differences") {
  const ToyModel model{10, 1.0, 0.05, 0.7};
  const auto g = reference_gradient(model);
  const double eps = 1e-6;
  auto shifted = [&](double du0, double dtheta) {
    ToyModel m = model;
    m.u0 += du0;
    m.theta += dtheta;
    return functional(m);
  };
  const double fd_u0 = (shifted(eps, 0) - shifted(-eps, 0)) / (2 * eps);
  const double fd_theta = (shifted(0, eps) - shifted(0, -eps)) / (2 * eps);
  CHECK(relative(g.dJ_du0, fd_u0) <= 1e-6);
  CHECK(relative(g.dJ_dtheta, fd_theta) <= 1e-6);
}

TEST_CASE("every strategy yields the reference gradient with one f call per forward step") {
  for (StepIndex n = 1; n <= 16; ++n) {
    const ToyModel model{n, 0.9, 0.05, 0.7};
    const auto reference = reference_gradient(model);
    for (auto kind : {StrategyKind::store_everything, StrategyKind::periodic, StrategyKind::revolve,
                      StrategyKind::mixed}) {
      for (StepIndex s = 1; s <= 4; ++s) {
        INFO("strategy=" << to_string(kind) << " n=" << n << " s=" << s);
        const auto spec = test::spec(kind, n, s, s);
        auto producer = make_producer(spec);
        const auto run = run_under_schedule(model, *producer);
        CHECK(relative(run.gradient.J, reference.J) <= 1e-12);
        CHECK(relative(run.gradient.dJ_du0, reference.dJ_du0) <= 1e-12);
        CHECK(relative(run.gradient.dJ_dtheta, reference.dJ_dtheta) <= 1e-12);
        const auto replayed = replay(run.trace.actions(), n);
        CHECK(replayed.ok());
        CHECK(run.f_evaluations == replayed.report.total_forward_steps);
        CHECK(run.f_evaluations == predicted_forward_steps(spec));
      }
    }
  }
}

TEST_CASE("recomputation reproduces the plain forward exactly") {
  const ToyModel model{4, 1.0, 0.1, 1.0};
  auto producer = make_producer(test::spec(StrategyKind::mixed, 4, 2));
  const auto run = run_under_schedule(model, *producer);
  CHECK(run.gradient.J == reference_gradient(model).J);
  CHECK(run.gradient.dJ_du0 == reference_gradient(model).dJ_du0);
  CHECK(run.f_evaluations == 6);
}

TEST_CASE("a Reverse without stored data fails at its action index") {
  using namespace chkpt::action;
  ListProducer producer({Configure{false, false}, Forward{0, 1}, EndForward{}, Reverse{1, 0},
                         Clear{true, true}, EndReverse{true}});
  const ToyModel model{1, 1.0, 0.1, 1.0};
  try {
    run_under_schedule(model, producer);
    FAIL("expected MissingDependency");
  } catch (const MissingDependency& e) {
    REQUIRE(e.action_index());
    CHECK(*e.action_index() == 3);
  }
}

TEST_CASE("a Forward from the wrong position fails at its action index") {
  using namespace chkpt::action;
  ListProducer producer({Configure{false, true}, Forward{1, 2}});
  const ToyModel model{2, 1.0, 0.1, 1.0};
  try {
    run_under_schedule(model, producer);
    FAIL("expected PositionError");
  } catch (const PositionError& e) {
    REQUIRE(e.action_index());
    CHECK(*e.action_index() == 1);
  }
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(reference_gradient(ToyModel{0, 1.0, 0.1, 1.0}), InvalidConfig);
}
