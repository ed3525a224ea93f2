// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <iostream>

#include <unistd.h>

#include "cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    const bool color = absint::cli::color_enabled(std::getenv("ABSINT_COLOR"), isatty(STDOUT_FILENO) != 0);
    return absint::cli::run(args, std::cout, std::cerr, color);
}
