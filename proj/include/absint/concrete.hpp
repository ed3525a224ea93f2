// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "absint/cfg.hpp"
#include "absint/transition_system.hpp"

namespace absint {

/// Raised when a function call exceeds the recursion bound.
class DivergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised for malformed inputs to the evaluator (unknown variable or function).
class EvalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct EvalOptions {
    std::size_t recursion_limit = 10000;
    OverflowPolicy overflow = OverflowPolicy::unbounded;
};

/// Variable valuation: `values[i]` is the value of `names[i]`.
struct Valuation {
    std::span<const std::string> names;
    std::span<const Integer> values;

    const Integer& lookup(const std::string& v) const;
};

/// Concrete expression evaluator with call-by-value recursion.
class Evaluator {
  public:
    explicit Evaluator(std::span<const FunDef> functions, EvalOptions options = {});

    Integer eval(const ArithExpr& e, const Valuation& env) const;
    bool holds(const BoolExpr& b, const Valuation& env) const;
    Integer call(const std::string& fn, const Integer& arg) const;

    const EvalOptions& options() const { return options_; }

  private:
    struct Frame;
    Integer eval(const ArithExpr& e, const Frame& f, std::size_t depth) const;
    bool holds(const BoolExpr& b, const Frame& f, std::size_t depth) const;
    Integer call(const std::string& fn, const Integer& arg, std::size_t depth) const;

    std::span<const FunDef> functions_;
    EvalOptions options_;
};

struct ConcreteState {
    NodeId node = 0;
    std::vector<Integer> env; ///< aligned with Cfg::var_order

    auto operator<=>(const ConcreteState&) const = default;
};

std::string to_string(const ConcreteState& s, const Cfg& cfg);

struct Successor {
    int edge = 0;
    ConcreteState state;
};

/// All successors of `s`, in edge order. Throws DivergenceError when a call exceeds the recursion bound.
std::vector<Successor> step(const Cfg& cfg, const ConcreteState& s, const Evaluator& ev);

struct IntRange {
    Integer lo;
    Integer hi;
};

/// Finite initial ranges per variable. Variables with a declared initial value use it;
/// variables missing from the map start at 0.
using InitRanges = std::map<std::string, IntRange>;

/// All initial concrete states at the entry node, in canonical order.
std::vector<ConcreteState> initial_states(const Cfg& cfg, const InitRanges& ranges);

struct ConcreteSystem {
    std::vector<ConcreteState> states; ///< sorted; state i is named "s<i>"
    std::vector<std::size_t> initial;
    struct Step {
        std::size_t src;
        int edge;
        std::size_t dst;
    };
    std::vector<Step> transitions;   ///< sorted by (src, edge, dst)
    std::vector<std::size_t> divergent; ///< states whose successor computation diverged
    bool truncated = false;

    std::optional<std::size_t> find(const ConcreteState& s) const;
};

/// Breadth-first closure of `step` from all initial states. When more than `limit` states
/// would be discovered the exploration stops and the result is flagged truncated.
ConcreteSystem enumerate_reachable(const Cfg& cfg, const InitRanges& ranges, std::size_t limit,
                                   const EvalOptions& options = {});

/// States are "s<i>", labels are edge ids "e<k>".
TransitionSystem to_transition_system(const ConcreteSystem& sys);

struct TraceStep {
    ConcreteState before;
    int edge = 0;
    ConcreteState after;
};

struct Trace {
    std::vector<TraceStep> steps;
};

struct Infeasible {
    std::size_t index = 0; ///< first command that could not be executed
    ConcreteState state;   ///< state before that command
    bool diverged = false; ///< the command's evaluation exceeded the recursion bound
};

using ReplayResult = std::variant<Trace, Infeasible>;

/// Executes the edge path `path` (edge indices) from `init`. Throws std::invalid_argument when
/// the path does not chain through the CFG, and EvalError on unknown variables.
ReplayResult replay_trace(const Cfg& cfg, std::span<const int> path, const ConcreteState& init,
                          const Evaluator& ev);

} // namespace absint
