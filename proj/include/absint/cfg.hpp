// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "absint/ast.hpp"

namespace absint {

/// Label of a CFG edge: a guard to assume, an assignment, or a no-op.
struct Command {
    enum class Kind { assume, assign, skip };

    Kind kind = Kind::skip;
    BoolPtr guard;      // assume
    std::string target; // assign
    ArithPtr value;     // assign

    static Command assume(BoolPtr g);
    static Command assign(std::string var, ArithPtr rhs);
    static Command skip();
};

std::string to_string(const Command& c);

using NodeId = int;

struct Edge {
    NodeId src = 0;
    Command cmd;
    NodeId dst = 0;
};

struct Cfg {
    static constexpr NodeId entry = 0;
    static constexpr NodeId exit = 1;
    static constexpr NodeId error = 2;

    int node_count = 3;
    std::vector<Edge> edges;
    std::vector<std::string> var_order;
    std::vector<std::pair<std::string, Integer>> init;
    std::vector<FunDef> functions;
    std::vector<std::vector<int>> out_edges; // edge indices by source node
    std::vector<std::vector<int>> in_edges;  // edge indices by target node

    const FunDef* find_function(const std::string& name) const;
    /// Position of `v` in var_order, or -1.
    int var_index(const std::string& v) const;
    void rebuild_adjacency();
};

/// Builds the control-flow graph. Entry is node 0, exit node 1, error node 2.
Cfg lower_to_cfg(const Program& p);

/// Lists violated structural invariants (empty when the graph is well formed).
/// The error node may be isolated when the program has no assertion.
std::vector<std::string> cfg_invariant_violations(const Cfg& cfg);

} // namespace absint
