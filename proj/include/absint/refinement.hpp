// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "absint/transition_system.hpp"

namespace absint {

/// Malformed refinement question (label partition, unknown states in the gluing relation).
class RefinementInputError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// (refined state, abstract state) pairs.
using StatePairs = std::set<std::pair<std::string, std::string>>;

/// Does `refined_ts` refine `abstract_ts`? Labels of the abstract system are the old actions;
/// `new_actions` appear only in the refined system and are matched by stuttering.
struct RefinementInstance {
    TransitionSystem abstract_ts;
    TransitionSystem refined_ts;
    std::set<std::string> old_actions;
    std::set<std::string> new_actions;
    std::optional<StatePairs> gluing; ///< restricts the candidate pairs when present

    /// Old actions are the abstract alphabet. Throws RefinementInputError when a new action is
    /// also old, a refined label is neither, or a gluing pair names an unknown state.
    static RefinementInstance make(TransitionSystem abstract_ts, TransitionSystem refined_ts,
                                   std::set<std::string> new_actions, std::optional<StatePairs> gluing = {});
};

/// Greatest simulation of the refined system by the abstract one (pairs (refined, abstract)).
StatePairs compute_simulation(const RefinementInstance& inst);

/// Whether `pairs` satisfies the simulation conditions (old labels matched, new labels stutter).
bool is_simulation(const RefinementInstance& inst, const StatePairs& pairs);

/// A cycle of refined-system transitions labeled only with new actions, as its state sequence.
std::optional<std::vector<std::string>> find_tau_cycle(const RefinementInstance& inst);

/// Pairs of the simulation reachable from simulated initial pairs by matching steps
/// (old labels move both sides, new labels move only the refined side).
StatePairs joint_reachable(const RefinementInstance& inst, const StatePairs& sim);

/// A reachable refined state without successors whose jointly reachable abstract partners all
/// have successors (vacuously so when it has none). Witness: the state, then those partners.
std::optional<std::vector<std::string>> find_new_deadlock(const RefinementInstance& inst, const StatePairs& sim);

struct ConditionResult {
    std::string name;
    bool passed = true;
    std::vector<std::string> witness;
};

struct RefinementReport {
    bool refines = false;
    ConditionResult simulation{"initial_states_simulated", true, {}};
    ConditionResult no_tau_cycle{"no_tau_cycle", true, {}};
    ConditionResult no_new_deadlock{"no_new_deadlock", true, {}};
    StatePairs relation;
};

/// Refines iff every refined initial state is simulated by some abstract initial state, no
/// cycle uses only new actions, and no new deadlock appears.
RefinementReport check_refinement(const RefinementInstance& inst);

/// Pairs file: one "refined_state abstract_state" pair per line, '#' comments.
StatePairs parse_state_pairs(std::string_view text);

} // namespace absint
