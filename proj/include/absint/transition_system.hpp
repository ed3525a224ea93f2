// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <set>
#include <string>
#include <string_view>

namespace absint {

struct Transition {
    std::string src;
    std::string label;
    std::string dst;

    auto operator<=>(const Transition&) const = default;
};

/// Explicit labeled transition system with opaque string state ids.
/// Sets are ordered, so iteration and serialization are canonical.
struct TransitionSystem {
    std::set<std::string> states;
    std::set<std::string> initial;
    std::set<std::string> alphabet;
    std::set<Transition> transitions;

    /// Throws std::invalid_argument naming the first violated invariant.
    void validate() const;
};

/// Line format:
///   states: s0 s1 ...
///   initial: s0 ...
///   alphabet: a b ...
///   src label dst        (one per transition, sorted)
std::string serialize(const TransitionSystem& ts);

/// Inverse of serialize. Blank lines and '#' comments are ignored.
/// Throws std::invalid_argument with a line number on malformed input.
TransitionSystem parse_transition_system(std::string_view text);

} // namespace absint
