// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "absint/ast.hpp"

namespace absint {

/// Error raised for malformed MIL source or predicate text.
class MilError : public std::runtime_error {
  public:
    enum class Kind { syntax, duplicate_name, undeclared, invalid };

    MilError(Kind kind, SourceLoc loc, const std::string& message);

    Kind kind() const { return kind_; }
    SourceLoc loc() const { return loc_; }

  private:
    Kind kind_;
    SourceLoc loc_;
};

/// Parses MIL source text. `name` becomes Program::name.
Program parse_program(std::string_view source, std::string name = "main");

struct Predicate {
    std::string text;
    BoolPtr expr;
    int id = 0; ///< 1-based position in its table; 0 when unbound
};

/// Parses a boolean expression over the variables of `p`.
Predicate parse_predicate(std::string_view source, const Program& p);

/// One predicate per line; blank lines and '#' comments are skipped.
std::vector<Predicate> parse_predicate_file(std::string_view source, const Program& p);

} // namespace absint
