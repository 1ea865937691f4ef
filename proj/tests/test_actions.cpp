// Copyright 2026 The chkpt Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "chkpt/error.hpp"
#include "chkpt/mixed.hpp"
#include "chkpt/revolve.hpp"
#include "chkpt/schedule_format.hpp"
#include "chkpt/strategies.hpp"
#include "support.hpp"

using namespace chkpt;

TEST_CASE("actions render with True/False booleans and lowercase storage") {
  CHECK(to_string(Action{action::Clear{true, false}}) == "Clear(True, False)");
  CHECK(to_string(Action{action::Configure{false, true}}) == "Configure(False, True)");
  CHECK(to_string(Action{action::Write{3, StorageKind::ram}}) == "Write(3, ram)");
  CHECK(to_string(Action{action::Forward{0, kUnboundedStep}}) ==
        "Forward(0, 9223372036854775807)");
  CHECK(to_string(Action{action::Read{1, StorageKind::disk, true}}) == "Read(1, disk, True)");
  CHECK(to_string(Action{action::Reverse{4, 3}}) == "Reverse(4, 3)");
  CHECK(to_string(Action{action::EndForward{}}) == "EndForward()");
  CHECK(to_string(Action{action::EndReverse{false}}) == "EndReverse(False)");
  CHECK(to_string(FeedbackEvent{FeedbackKind::initialize, 4}) == "Initialize(4)");
  CHECK(to_string(FeedbackEvent{FeedbackKind::finalize, 4}) == "Finalize(4)");
}

TEST_CASE("structural checks reject empty ranges and negative steps") {
  CHECK_FALSE(check_action(action::Forward{0, 1}));
  CHECK(check_action(action::Forward{3, 1}));
  CHECK(check_action(action::Forward{2, 2}));
  CHECK(check_action(action::Reverse{1, 3}));
  CHECK(check_action(action::Write{-1, StorageKind::disk}));
  CHECK(check_action(action::Read{-2, StorageKind::ram, false}));
}

TEST_CASE("serialize numbers records from zero") {
  const std::vector<Action> one{action::Clear{true, true}};
  CHECK(serialize_schedule(one) == "0 Clear(True, True)\n");
  CHECK(serialize_schedule({}).empty());
  CHECK(parse_schedule("").empty());
}

TEST_CASE("parse inverts serialize for every built-in strategy") {
  for (auto kind : {StrategyKind::store_everything, StrategyKind::periodic, StrategyKind::revolve,
                    StrategyKind::mixed}) {
    for (StepIndex n : {1, 2, 5, 13}) {
      const auto actions = test::trace_of(test::spec(kind, n, 2, 3)).actions();
      const auto text = serialize_schedule(actions);
      CHECK(parse_schedule(text) == actions);
      CHECK(serialize_schedule(parse_schedule(text)) == text);
    }
  }
}

TEST_CASE("parser tolerates spacing and quoted storage names") {
  const auto a = parse_schedule("  0   Write( 2 ,'RAM' )\n\n1 Read(2, \"disk\", True)\r\n");
  REQUIRE(a.size() == 2);
  CHECK(a[0] == Action{action::Write{2, StorageKind::ram}});
  CHECK(a[1] == Action{action::Read{2, StorageKind::disk, true}});
}

TEST_CASE("parse errors report the offending line") {
  const auto line_of = [](const std::string& text) {
    try {
      parse_schedule(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("0 Forward(3, 1)\n") == 1);
  CHECK(line_of("0 Clear(True, True)\n1 Write(0, tape)\n") == 2);
  CHECK(line_of("0 Rewind(1)\n") == 1);
  CHECK(line_of("0 Clear(True, True)\n2 Clear(True, True)\n") == 2);
  CHECK(line_of("0 Clear(True)\n") == 1);
  CHECK(line_of("0 Clear(yes, no)\n") == 1);
  CHECK(line_of("x Clear(True, True)\n") == 1);
  CHECK(line_of("0 Forward(0, 1\n") == 1);
  CHECK(line_of("0 Forward(-1, 1)\n") == 1);
  CHECK(line_of("Clear(True,True)\n") == 1);
}

TEST_CASE("offline producers ask for Initialize before the first action") {
  auto revolve = make_revolve({std::nullopt, 2, StorageKind::disk});
  CHECK(std::get<NeedsFeedback>(revolve->next_action()).kind == FeedbackKind::initialize);
  revolve->provide_feedback({FeedbackKind::initialize, 4});
  CHECK(std::get<Action>(revolve->next_action()) == Action{action::Configure{true, false}});
  CHECK_THROWS_AS(revolve->provide_feedback({FeedbackKind::initialize, 4}), ProtocolError);

  auto mixed = make_mixed({std::nullopt, 2, StorageKind::disk});
  CHECK_THROWS_AS(mixed->provide_feedback({FeedbackKind::initialize, 0}), InvalidConfig);
  CHECK_THROWS_AS(mixed->provide_feedback({FeedbackKind::finalize, 4}), ProtocolError);
}

TEST_CASE("a preset step count skips the handshake") {
  auto revolve = make_revolve({4, 2, StorageKind::disk});
  CHECK(std::holds_alternative<Action>(revolve->next_action()));
  CHECK_THROWS_AS(revolve->provide_feedback({FeedbackKind::initialize, 4}), ProtocolError);
}

TEST_CASE("exhausted producers refuse further requests") {
  auto revolve = make_revolve({3, 1, StorageKind::disk});
  ProducerOutput out;
  do {
    out = revolve->next_action();
  } while (!std::holds_alternative<Action>(out) ||
           !std::holds_alternative<action::EndReverse>(std::get<Action>(out)));
  CHECK_THROWS_AS(revolve->next_action(), ProtocolError);
}

TEST_CASE("store-everything emits its first action without feedback") {
  auto p = make_store_everything();
  CHECK(std::get<Action>(p->next_action()) == Action{action::Configure{true, true}});
  CHECK(p->online());
}

TEST_CASE("identical configuration and feedback give identical sequences") {
  for (auto kind : {StrategyKind::store_everything, StrategyKind::periodic, StrategyKind::revolve,
                    StrategyKind::mixed}) {
    const auto s = test::spec(kind, 11, 3, 4);
    CHECK(test::trace_of(s).actions() == test::trace_of(s).actions());
  }
}

TEST_CASE("every schedule has exactly one EndForward and ends with EndReverse") {
  for (auto kind : {StrategyKind::store_everything, StrategyKind::periodic, StrategyKind::revolve,
                    StrategyKind::mixed}) {
    for (StepIndex n = 1; n <= 9; ++n) {
      const auto actions = test::trace_of(test::spec(kind, n, 2, 2)).actions();
      CHECK(std::count_if(actions.begin(), actions.end(), [](const Action& a) {
              return std::holds_alternative<action::EndForward>(a);
            }) == 1);
      CHECK(std::holds_alternative<action::EndReverse>(actions.back()));
    }
  }
}

TEST_CASE("drive rejects a non-positive step count") {
  auto p = make_store_everything();
  CHECK_THROWS_AS(generate_schedule(*p, 0), InvalidConfig);
}
