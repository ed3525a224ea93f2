// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>

#include "absint/abstract_env.hpp"
#include "absint/ast.hpp"
#include "absint/interval.hpp"
#include "absint/sign.hpp"

namespace absint {

using IntervalEnv = Env<Interval>;
using SignEnv = Env<Sign>;

/// Abstract result of calling `fn` on any argument in `arg`. An empty oracle answers
/// top for every non-empty argument.
using CallOracle = std::function<Interval(const std::string& fn, const Interval& arg)>;

Interval eval_abstract(const ArithExpr& e, const IntervalEnv& env, const CallOracle& calls = {});

/// Sound refinement of `env` by `guard`. Comparisons are refined backwards through
/// variables, constants, negation, addition, subtraction and multiplication by a
/// singleton; other operands only contribute an emptiness test.
IntervalEnv filter_abstract(const BoolExpr& guard, const IntervalEnv& env, const CallOracle& calls = {});

/// Smallest interval containing gamma(s), and the best sign of an interval.
Interval sign_hull(Sign s);
Sign sign_of(const Interval& i);
IntervalEnv to_interval_env(const SignEnv& env);
SignEnv to_sign_env(const IntervalEnv& env);

Sign eval_sign(const ArithExpr& e, const SignEnv& env, const CallOracle& calls = {});
/// Filters through the interval hull and meets the result with `env`.
SignEnv filter_sign(const BoolExpr& guard, const SignEnv& env, const CallOracle& calls = {});

} // namespace absint
