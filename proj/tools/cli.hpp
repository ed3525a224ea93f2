// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace absint::cli {

inline constexpr int exit_usage = 3;

/// ABSINT_COLOR=0 disables ANSI codes, any other value forces them; unset follows the terminal.
bool color_enabled(const char* env_value, bool stdout_is_tty);

/// Runs one invocation. `args` excludes the program name. Reports go to `out` (or --report),
/// diagnostics and --trace-fixpoint lines to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color = false);

} // namespace absint::cli
