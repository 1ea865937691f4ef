// Copyright 2026 The chkpt Authors
// SPDX-License-Identifier: Apache-2.0
//
// Line-oriented schedule documents: one record per action,
//
//   0 Configure(True, False)
//   1 Forward(0, 1)
//   2 Write(0, disk)
//
// Indices are consecutive from zero. Blank lines are ignored on input.

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chkpt/action.hpp"

namespace chkpt {

std::string serialize_schedule(std::span<const Action> actions);

/// Throws ParseError (with the offending line number) on malformed records,
/// unknown action names, unknown storage kinds or invalid step ranges.
std::vector<Action> parse_schedule(std::string_view text);

/// Parses a single `Name(args)` expression. `line` is only used for errors.
Action parse_action(std::string_view text, std::size_t line = 1);

}  // namespace chkpt
