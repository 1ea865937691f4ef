// Copyright 2026 The chkpt Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "chkpt/error.hpp"
#include "chkpt/simulator.hpp"
#include "chkpt/strategies.hpp"
#include "support.hpp"

using namespace chkpt;

namespace {

std::int64_t count_of(const std::vector<Action>& actions, std::string_view name) {
  return std::count_if(actions.begin(), actions.end(),
                       [&](const Action& a) { return action_name(a) == name; });
}

}  // namespace

TEST_CASE("store-everything for one step has the same shape with Reverse(1, 0)") {
  auto p = make_store_everything();
  const auto trace = generate_schedule(*p, 1);
  const std::vector<Action> expected{action::Configure{true, true}, action::Forward{0, kUnboundedStep},
                                     action::EndForward{}, action::Reverse{1, 0},
                                     action::EndReverse{false}};
  CHECK(trace.actions() == expected);
}

TEST_CASE("store-everything repeats its reverse phase on a second pass") {
  auto p = make_store_everything();
  const auto trace = generate_schedule(*p, 4, {.reverse_passes = 2});
  const auto a = trace.actions();
  REQUIRE(a.size() == 7);
  CHECK(a[5] == Action{action::Reverse{4, 0}});
  CHECK(a[6] == Action{action::EndReverse{false}});
  const auto r = replay(a, 4);
  CHECK(r.ok());
  CHECK(r.report.total_forward_steps == 4);
}

TEST_CASE("store-everything rejects Initialize and early Finalize") {
  auto p = make_store_everything();
  CHECK_THROWS_AS(p->provide_feedback({FeedbackKind::initialize, 4}), ProtocolError);
  CHECK_THROWS_AS(p->provide_feedback({FeedbackKind::finalize, 4}), ProtocolError);
  (void)p->next_action();
  (void)p->next_action();
  p->provide_feedback({FeedbackKind::finalize, 4});
  CHECK_THROWS_AS(p->provide_feedback({FeedbackKind::finalize, 4}), ProtocolError);
}

TEST_CASE("store-everything never writes or reads checkpoints") {
  for (StepIndex n = 1; n <= 20; ++n) {
    const auto a = test::trace_of(test::spec(StrategyKind::store_everything, n)).actions();
    CHECK(count_of(a, "Write") == 0);
    CHECK(count_of(a, "Read") == 0);
    const auto r = replay(a, n);
    CHECK(r.ok());
    CHECK(r.report.total_forward_steps == n);
    CHECK(r.report.peak_intermediate_data_steps == n);
  }
}

TEST_CASE("periodic Finalize after Forward(2, 4) is followed by Write(2, disk)") {
  auto p = make_periodic_disk({2, StorageKind::disk});
  std::vector<Action> seen;
  for (int i = 0; i < 6; ++i) seen.push_back(std::get<Action>(p->next_action()));
  CHECK(seen.back() == Action{action::Forward{2, 4}});
  p->provide_feedback({FeedbackKind::finalize, 4});
  CHECK(std::get<Action>(p->next_action()) == Action{action::Write{2, StorageKind::disk}});
}

TEST_CASE("periodic rejects a Finalize outside the running block") {
  auto p = make_periodic_disk({2, StorageKind::disk});
  for (int i = 0; i < 2; ++i) (void)p->next_action();  // Forward(0, 2)
  CHECK_THROWS_AS(p->provide_feedback({FeedbackKind::finalize, 5}), ProtocolError);
  CHECK_THROWS_AS(p->provide_feedback({FeedbackKind::finalize, 0}), InvalidConfig);
  CHECK_THROWS_AS(make_periodic_disk({0, StorageKind::disk}), InvalidConfig);
}

TEST_CASE("periodic with five steps and period two truncates the last block") {
  const auto a = test::trace_of(test::spec(StrategyKind::periodic, 5, 1, 2)).actions();
  const auto r = replay(a, 5);
  REQUIRE(r.ok());
  CHECK(r.report.forward_steps_original == 5);
  CHECK(r.report.total_forward_steps - r.report.forward_steps_original == 5);
  CHECK(std::find(a.begin(), a.end(), Action{action::Forward{4, 5}}) != a.end());
  CHECK(std::find(a.begin(), a.end(), Action{action::Reverse{5, 4}}) != a.end());
}

TEST_CASE("periodic with a period longer than the model stores one checkpoint") {
  const auto a = test::trace_of(test::spec(StrategyKind::periodic, 2, 1, 5)).actions();
  CHECK(count_of(a, "Write") == 1);
  CHECK(count_of(a, "Read") == 1);
  CHECK(std::find(a.begin(), a.end(), Action{action::Reverse{2, 0}}) != a.end());
  CHECK(replay(a, 2).ok());
}

TEST_CASE("periodic costs twice the step count and never deletes checkpoints") {
  for (StepIndex n = 1; n <= 24; ++n) {
    for (StepIndex period = 1; period <= 8; ++period) {
      const auto a = test::trace_of(test::spec(StrategyKind::periodic, n, 1, period)).actions();
      const auto r = replay(a, n);
      CHECK(r.ok());
      CHECK(r.report.total_forward_steps == 2 * n);
      CHECK(count_of(a, "Write") == (n + period - 1) / period);
      for (const auto& x : a) {
        if (const auto* read = std::get_if<action::Read>(&x)) CHECK_FALSE(read->delete_after);
      }
    }
  }
}

TEST_CASE("periodic replays a second adjoint pass from retained checkpoints") {
  auto p = make_periodic_disk({3, StorageKind::ram});
  const auto a = generate_schedule(*p, 7, {.reverse_passes = 2}).actions();
  const auto r = replay(a, 7);
  CHECK(r.ok());
  CHECK(r.report.total_forward_steps == 7 + 7 + 7);
  CHECK(test::reverse_coverage(a, 7) == std::vector<int>(7, 2));
}
