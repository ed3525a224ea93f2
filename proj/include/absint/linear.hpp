// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>

#include "absint/ast.hpp"

namespace absint {

/// sum(coeffs[v] * v) + constant, with no zero coefficients.
struct LinearExpr {
    std::map<std::string, Integer> coeffs;
    Integer constant;
};

/// Nullopt when `e` has calls, conditionals, or products of two non-constant terms.
std::optional<LinearExpr> linearize(const ArithExpr& e);

/// Canonical form of a comparison between linear terms: variables on the left in alphabetical
/// order, constant on the right, strict comparisons made non-strict, positive leading coefficient,
/// coefficients divided by their gcd. Comparisons without variables fold to true/false.
/// Non-linear comparisons are returned unchanged.
BoolPtr normalize_atom(const BoolPtr& b);

/// Negation normal form with normalized atoms and true/false folded away.
BoolPtr normalize(const BoolPtr& b);

/// Key identifying a predicate up to normalization and negation: p and not p share a key.
std::string predicate_key(const BoolPtr& b);

} // namespace absint
