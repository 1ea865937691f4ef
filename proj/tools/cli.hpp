// Copyright 2026 The chkpt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace chkpt::cli {

/// Runs the command line `args` (without the program name).
/// Returns 0 on success, 1 on validation or execution failure, 2 on usage
/// or parse errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chkpt::cli
