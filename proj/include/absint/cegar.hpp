// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absint/predicates.hpp"

namespace absint {

/// Abstract path from an initial state to a bad state: states.size() == edges.size() + 1.
struct AbstractCex {
    std::vector<AbstractState> states;
    std::vector<int> edges;
};

/// Shortest path to a bad state. Among shortest paths the one with the lexicographically
/// smallest sequence of (state id, edge) is returned. Nullopt when no bad state is reachable.
std::optional<AbstractCex> check_reachability(const AbstractTS& ts);

/// State ids along the path, "n<node>:<bits>".
std::vector<std::string> state_ids(const AbstractCex& cex, std::size_t k);

enum class CexKind { genuine, spurious, unknown };

std::string_view to_string(CexKind k);

struct CexVerdict {
    CexKind kind = CexKind::unknown;
    Trace trace;                          ///< genuine: concrete run reaching the error node
    std::size_t index = 0;                ///< spurious: first path step no concrete run can take
    std::optional<ConcreteState> witness; ///< spurious: a concrete state reaching that step
    std::string reason;
};

struct ValidationOptions {
    std::size_t sample_bound = 1000; ///< candidate initial states replayed before giving up
    EntailOptions entail;
};

/// Spurious when the path prefix up to some step is proved infeasible (forward interval
/// propagation or the path's feasibility condition). Genuine when a candidate initial state
/// drawn from a model search of the feasibility condition replays to the error node.
CexVerdict validate_cex(const AbstractCex& cex, const Cfg& cfg, const InitRanges& ranges = {},
                        const ValidationOptions& options = {});

/// Condition on the initial state under which the commands of `edges[0..count)` can all execute.
BoolPtr path_condition(const Cfg& cfg, const std::vector<int>& edges, std::size_t count);

enum class RefineMode { backward, forward };

std::string_view to_string(RefineMode m);

struct Refinement {
    PredicateTable table;
    std::vector<std::string> added;
    bool eliminated = false; ///< the refined abstraction no longer realizes the edge path
};

/// Backward: the failing guard pushed back through the prefix assignments, one predicate per
/// position. Forward: interval bounds holding before the failing step, plus its guard. When the
/// edge path survives either, the prefix feasibility conditions are added as well.
Refinement refine(const PredicateTable& pt, const CexVerdict& verdict, const AbstractCex& cex, const Cfg& cfg,
                  RefineMode mode = RefineMode::backward, const InitRanges& ranges = {},
                  const AbstractionOptions& options = {});

/// Whether some run of the abstraction follows `edges` from an initial state.
bool realizable(const Abstractor& abs, const std::vector<int>& edges);

enum class CegarOutcome { proved, refuted, budget_exhausted };

std::string_view to_string(CegarOutcome o);

struct PhaseTimes {
    double build = 0;
    double check = 0;
    double validate = 0;
    double refine = 0;
};

struct CegarIteration {
    std::vector<std::string> predicates;
    std::size_t abstract_states = 0;
    std::size_t abstract_transitions = 0;
    std::optional<AbstractCex> cex;
    std::vector<std::string> cex_states;
    std::optional<CexVerdict> verdict;
    std::vector<std::string> added;
    PhaseTimes seconds;
};

struct CegarReport {
    CegarOutcome outcome = CegarOutcome::budget_exhausted;
    std::optional<Trace> trace; ///< refuted
    std::vector<CegarIteration> iterations;
    std::string reason;
};

struct CegarOptions {
    int budget = 10;
    RefineMode refine = RefineMode::backward;
    InitRanges ranges;
    ValidationOptions validation;
    AbstractionOptions abstraction;
};

CegarReport cegar_loop(const Cfg& cfg, const PredicateTable& initial, const CegarOptions& options = {});

} // namespace absint
