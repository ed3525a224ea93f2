// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Brute-force trace and reachability oracles over transition systems.

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "absint/transition_system.hpp"

namespace absint::testing {

using Word = std::vector<std::string>;

/// Label sequences of length <= n from initial states, with `erase` labels dropped.
inline std::set<Word> traces(const TransitionSystem& ts, size_t n, const std::set<std::string>& erase = {}) {
    std::set<Word> out;
    std::function<void(const std::string&, Word, size_t)> go = [&](const std::string& s, Word w, size_t depth) {
        out.insert(w);
        if (depth == n) {
            return;
        }
        for (const auto& t : ts.transitions) {
            if (t.src == s) {
                Word next = w;
                if (erase.count(t.label) == 0) {
                    next.push_back(t.label);
                }
                go(t.dst, next, depth + 1);
            }
        }
    };
    for (const auto& s : ts.initial) {
        go(s, {}, 0);
    }
    return out;
}

inline bool fires(const TransitionSystem& ts, const std::string& label) {
    std::set<std::string> seen(ts.initial.begin(), ts.initial.end());
    std::vector<std::string> work(seen.begin(), seen.end());
    while (!work.empty()) {
        const std::string s = work.back();
        work.pop_back();
        for (const auto& t : ts.transitions) {
            if (t.src != s) {
                continue;
            }
            if (t.label == label) {
                return true;
            }
            if (seen.insert(t.dst).second) {
                work.push_back(t.dst);
            }
        }
    }
    return false;
}

} // namespace absint::testing
