// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#include "absint/refinement.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <sstream>

namespace absint {

namespace {

using Adjacency = std::map<std::string, std::vector<const Transition*>>;

Adjacency successors(const TransitionSystem& ts) {
    Adjacency out;
    for (const auto& t : ts.transitions) {
        out[t.src].push_back(&t);
    }
    return out;
}

const std::vector<const Transition*>& outgoing(const Adjacency& adj, const std::string& s) {
    static const std::vector<const Transition*> none;
    const auto it = adj.find(s);
    return it == adj.end() ? none : it->second;
}

/// First refined transition of `q2` that `q1` cannot match within `pairs`, if any.
const Transition* violation(const RefinementInstance& inst, const Adjacency& adj2, const Adjacency& adj1,
                            const StatePairs& pairs, const std::string& q2, const std::string& q1) {
    for (const auto* t : outgoing(adj2, q2)) {
        if (inst.new_actions.count(t->label) > 0) {
            if (pairs.count({t->dst, q1}) == 0) {
                return t;
            }
            continue;
        }
        bool matched = false;
        for (const auto* u : outgoing(adj1, q1)) {
            if (u->label == t->label && pairs.count({t->dst, u->dst}) > 0) {
                matched = true;
                break;
            }
        }
        if (!matched) {
            return t;
        }
    }
    return nullptr;
}

std::string describe(const Transition& t) { return t.src + " " + t.label + " " + t.dst; }

} // namespace

RefinementInstance RefinementInstance::make(TransitionSystem abstract_ts, TransitionSystem refined_ts,
                                            std::set<std::string> new_actions, std::optional<StatePairs> gluing) {
    abstract_ts.validate();
    refined_ts.validate();
    RefinementInstance inst;
    inst.old_actions = abstract_ts.alphabet;
    for (const auto& a : new_actions) {
        if (inst.old_actions.count(a) > 0) {
            throw RefinementInputError("new action '" + a + "' is also an action of the abstract system");
        }
    }
    for (const auto& a : refined_ts.alphabet) {
        if (inst.old_actions.count(a) == 0 && new_actions.count(a) == 0) {
            throw RefinementInputError("label '" + a + "' of the refined system is neither old nor declared new");
        }
    }
    if (gluing) {
        for (const auto& [q2, q1] : *gluing) {
            if (refined_ts.states.count(q2) == 0 || abstract_ts.states.count(q1) == 0) {
                throw RefinementInputError("gluing pair (" + q2 + ", " + q1 + ") names an unknown state");
            }
        }
    }
    inst.abstract_ts = std::move(abstract_ts);
    inst.refined_ts = std::move(refined_ts);
    inst.new_actions = std::move(new_actions);
    inst.gluing = std::move(gluing);
    return inst;
}

bool is_simulation(const RefinementInstance& inst, const StatePairs& pairs) {
    const Adjacency adj2 = successors(inst.refined_ts);
    const Adjacency adj1 = successors(inst.abstract_ts);
    for (const auto& [q2, q1] : pairs) {
        if (violation(inst, adj2, adj1, pairs, q2, q1) != nullptr) {
            return false;
        }
    }
    return true;
}

StatePairs compute_simulation(const RefinementInstance& inst) {
    StatePairs pairs;
    if (inst.gluing) {
        pairs = *inst.gluing;
    } else {
        for (const auto& q2 : inst.refined_ts.states) {
            for (const auto& q1 : inst.abstract_ts.states) {
                pairs.insert({q2, q1});
            }
        }
    }
    const Adjacency adj2 = successors(inst.refined_ts);
    const Adjacency adj1 = successors(inst.abstract_ts);
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = pairs.begin(); it != pairs.end();) {
            if (violation(inst, adj2, adj1, pairs, it->first, it->second) != nullptr) {
                it = pairs.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
    }
    return pairs;
}

std::optional<std::vector<std::string>> find_tau_cycle(const RefinementInstance& inst) {
    Adjacency tau;
    for (const auto& t : inst.refined_ts.transitions) {
        if (inst.new_actions.count(t.label) > 0) {
            tau[t.src].push_back(&t);
        }
    }
    enum class Mark { fresh, active, done };
    std::map<std::string, Mark> mark;
    std::vector<std::string> stack;
    std::optional<std::vector<std::string>> found;
    std::function<void(const std::string&)> dfs = [&](const std::string& s) {
        mark[s] = Mark::active;
        stack.push_back(s);
        for (const auto* t : outgoing(tau, s)) {
            if (found) {
                return;
            }
            const Mark m = mark.count(t->dst) > 0 ? mark[t->dst] : Mark::fresh;
            if (m == Mark::active) {
                const auto from = std::find(stack.begin(), stack.end(), t->dst);
                found = std::vector<std::string>(from, stack.end());
                return;
            }
            if (m == Mark::fresh) {
                dfs(t->dst);
            }
        }
        stack.pop_back();
        mark[s] = Mark::done;
    };
    for (const auto& s : inst.refined_ts.states) {
        if (!found && mark.count(s) == 0) {
            dfs(s);
        }
    }
    return found;
}

StatePairs joint_reachable(const RefinementInstance& inst, const StatePairs& sim) {
    const Adjacency adj2 = successors(inst.refined_ts);
    const Adjacency adj1 = successors(inst.abstract_ts);
    StatePairs seen;
    std::deque<std::pair<std::string, std::string>> work;
    auto visit = [&](const std::string& q2, const std::string& q1) {
        if (sim.count({q2, q1}) > 0 && seen.insert({q2, q1}).second) {
            work.emplace_back(q2, q1);
        }
    };
    for (const auto& q2 : inst.refined_ts.initial) {
        for (const auto& q1 : inst.abstract_ts.initial) {
            visit(q2, q1);
        }
    }
    while (!work.empty()) {
        const auto [q2, q1] = work.front();
        work.pop_front();
        for (const auto* t : outgoing(adj2, q2)) {
            if (inst.new_actions.count(t->label) > 0) {
                visit(t->dst, q1);
                continue;
            }
            for (const auto* u : outgoing(adj1, q1)) {
                if (u->label == t->label) {
                    visit(t->dst, u->dst);
                }
            }
        }
    }
    return seen;
}

std::optional<std::vector<std::string>> find_new_deadlock(const RefinementInstance& inst, const StatePairs& sim) {
    const Adjacency adj2 = successors(inst.refined_ts);
    const Adjacency adj1 = successors(inst.abstract_ts);
    std::set<std::string> seen(inst.refined_ts.initial.begin(), inst.refined_ts.initial.end());
    std::deque<std::string> work(seen.begin(), seen.end());
    while (!work.empty()) {
        const std::string s = work.front();
        work.pop_front();
        for (const auto* t : outgoing(adj2, s)) {
            if (seen.insert(t->dst).second) {
                work.push_back(t->dst);
            }
        }
    }
    const StatePairs joint = joint_reachable(inst, sim);
    for (const auto& s : seen) {
        if (!outgoing(adj2, s).empty()) {
            continue;
        }
        std::vector<std::string> witness{s};
        bool all_live = true;
        for (auto it = joint.lower_bound({s, ""}); it != joint.end() && it->first == s; ++it) {
            witness.push_back(it->second);
            all_live = all_live && !outgoing(adj1, it->second).empty();
        }
        if (all_live) {
            return witness;
        }
    }
    return std::nullopt;
}

RefinementReport check_refinement(const RefinementInstance& inst) {
    RefinementReport r;
    r.relation = compute_simulation(inst);
    const Adjacency adj2 = successors(inst.refined_ts);
    const Adjacency adj1 = successors(inst.abstract_ts);
    for (const auto& q2 : inst.refined_ts.initial) {
        bool simulated = false;
        for (const auto& q1 : inst.abstract_ts.initial) {
            simulated = simulated || r.relation.count({q2, q1}) > 0;
        }
        if (simulated) {
            continue;
        }
        r.simulation.passed = false;
        // explain each candidate pair by the transition it fails to match in the final relation
        for (const auto& q1 : inst.abstract_ts.initial) {
            StatePairs with = r.relation;
            with.insert({q2, q1});
            const Transition* t = violation(inst, adj2, adj1, with, q2, q1);
            r.simulation.witness.push_back("(" + q2 + ", " + q1 + "): " +
                                           (t ? describe(*t) + " unmatched" : std::string("excluded by gluing")));
        }
        if (inst.abstract_ts.initial.empty()) {
            r.simulation.witness.push_back("(" + q2 + ", -): no abstract initial state");
        }
    }
    if (auto c = find_tau_cycle(inst)) {
        r.no_tau_cycle.passed = false;
        r.no_tau_cycle.witness = std::move(*c);
    }
    if (auto d = find_new_deadlock(inst, r.relation)) {
        r.no_new_deadlock.passed = false;
        r.no_new_deadlock.witness = std::move(*d);
    }
    r.refines = r.simulation.passed && r.no_tau_cycle.passed && r.no_new_deadlock.passed;
    return r;
}

StatePairs parse_state_pairs(std::string_view text) {
    StatePairs out;
    std::istringstream in{std::string(text)};
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::string a, b, extra;
        if (!(ls >> a)) {
            continue;
        }
        if (!(ls >> b) || (ls >> extra)) {
            throw RefinementInputError("line " + std::to_string(n) + ": expected 'refined_state abstract_state'");
        }
        out.insert({a, b});
    }
    return out;
}

} // namespace absint
