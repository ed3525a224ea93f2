// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#include "absint/cfg.hpp"

#include <algorithm>
#include <deque>

#include "absint/parser.hpp"

namespace absint {

Command Command::assume(BoolPtr g) {
    Command c;
    c.kind = Kind::assume;
    c.guard = std::move(g);
    return c;
}

Command Command::assign(std::string var, ArithPtr rhs) {
    Command c;
    c.kind = Kind::assign;
    c.target = std::move(var);
    c.value = std::move(rhs);
    return c;
}

Command Command::skip() { return Command{}; }

std::string to_string(const Command& c) {
    switch (c.kind) {
    case Command::Kind::assume: return "assume(" + to_string(*c.guard) + ")";
    case Command::Kind::assign: return c.target + " := " + to_string(*c.value);
    case Command::Kind::skip: return "skip";
    }
    return "?";
}

const FunDef* Cfg::find_function(const std::string& name) const {
    for (const auto& f : functions) {
        if (f.name == name) {
            return &f;
        }
    }
    return nullptr;
}

int Cfg::var_index(const std::string& v) const {
    const auto it = std::find(var_order.begin(), var_order.end(), v);
    return it == var_order.end() ? -1 : static_cast<int>(it - var_order.begin());
}

void Cfg::rebuild_adjacency() {
    out_edges.assign(static_cast<size_t>(node_count), {});
    in_edges.assign(static_cast<size_t>(node_count), {});
    for (size_t i = 0; i < edges.size(); ++i) {
        out_edges[static_cast<size_t>(edges[i].src)].push_back(static_cast<int>(i));
        in_edges[static_cast<size_t>(edges[i].dst)].push_back(static_cast<int>(i));
    }
}

namespace {

class Lowering {
  public:
    explicit Lowering(Cfg& cfg) : cfg_(cfg) {}

    void sequence(const std::vector<Stmt>& body, NodeId from, NodeId to) {
        if (body.empty()) {
            edge(from, Command::skip(), to);
            return;
        }
        NodeId cur = from;
        for (size_t i = 0; i + 1 < body.size(); ++i) {
            const NodeId next = fresh();
            statement(body[i], cur, next);
            cur = next;
        }
        statement(body.back(), cur, to);
    }

  private:
    Cfg& cfg_;

    NodeId fresh() { return cfg_.node_count++; }

    void edge(NodeId src, Command cmd, NodeId dst) { cfg_.edges.push_back({src, std::move(cmd), dst}); }

    // Lowers `body` guarded by `guard`: a single guarded edge when the body is empty.
    void guarded(const BoolPtr& guard, const std::vector<Stmt>& body, NodeId from, NodeId to) {
        if (body.empty()) {
            edge(from, Command::assume(guard), to);
            return;
        }
        const NodeId start = fresh();
        edge(from, Command::assume(guard), start);
        sequence(body, start, to);
    }

    void statement(const Stmt& s, NodeId from, NodeId to) {
        switch (s.kind) {
        case Stmt::Kind::assign: edge(from, Command::assign(s.target, s.value), to); return;
        case Stmt::Kind::skip: edge(from, Command::skip(), to); return;
        case Stmt::Kind::assertion:
            edge(from, Command::assume(expr::negation(s.cond)), Cfg::error);
            edge(from, Command::assume(s.cond), to);
            return;
        case Stmt::Kind::branch:
            guarded(s.cond, s.then_body, from, to);
            guarded(expr::negation(s.cond), s.else_body, from, to);
            return;
        case Stmt::Kind::loop: {
            NodeId head = from;
            if (from == Cfg::entry) {
                head = fresh();
                edge(from, Command::skip(), head);
            }
            guarded(s.cond, s.then_body, head, head);
            edge(head, Command::assume(expr::negation(s.cond)), to);
            return;
        }
        }
    }
};

} // namespace

Cfg lower_to_cfg(const Program& p) {
    Cfg cfg;
    cfg.var_order = p.vars;
    cfg.init = p.init;
    cfg.functions = p.functions;
    Lowering(cfg).sequence(p.body, Cfg::entry, Cfg::exit);
    cfg.rebuild_adjacency();
    if (auto violations = cfg_invariant_violations(cfg); !violations.empty()) {
        throw MilError(MilError::Kind::invalid, {}, "malformed control flow: " + violations.front());
    }
    return cfg;
}

std::vector<std::string> cfg_invariant_violations(const Cfg& cfg) {
    std::vector<std::string> out;
    if (cfg.out_edges.size() != static_cast<size_t>(cfg.node_count)) {
        out.push_back("adjacency not built");
        return out;
    }
    if (!cfg.in_edges[Cfg::entry].empty()) {
        out.push_back("entry node has incoming edges");
    }
    if (!cfg.out_edges[Cfg::exit].empty()) {
        out.push_back("exit node has outgoing edges");
    }
    if (!cfg.out_edges[Cfg::error].empty()) {
        out.push_back("error node has outgoing edges");
    }
    std::vector<bool> seen(static_cast<size_t>(cfg.node_count), false);
    std::deque<NodeId> queue{Cfg::entry};
    seen[Cfg::entry] = true;
    while (!queue.empty()) {
        const NodeId n = queue.front();
        queue.pop_front();
        for (const int e : cfg.out_edges[static_cast<size_t>(n)]) {
            const NodeId d = cfg.edges[static_cast<size_t>(e)].dst;
            if (!seen[static_cast<size_t>(d)]) {
                seen[static_cast<size_t>(d)] = true;
                queue.push_back(d);
            }
        }
    }
    for (NodeId n = 0; n < cfg.node_count; ++n) {
        if (!seen[static_cast<size_t>(n)] && n != Cfg::error) {
            out.push_back("node " + std::to_string(n) + " unreachable from entry");
        }
    }
    return out;
}

} // namespace absint
