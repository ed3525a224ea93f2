// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#include "absint/transition_system.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

namespace absint {

void TransitionSystem::validate() const {
    if (initial.empty()) {
        throw std::invalid_argument("transition system has no initial state");
    }
    for (const auto& s : initial) {
        if (!states.contains(s)) {
            throw std::invalid_argument("initial state '" + s + "' is not a declared state");
        }
    }
    for (const auto& t : transitions) {
        if (!states.contains(t.src) || !states.contains(t.dst)) {
            throw std::invalid_argument("transition " + t.src + " " + t.label + " " + t.dst +
                                        " references an undeclared state");
        }
        if (!alphabet.contains(t.label)) {
            throw std::invalid_argument("transition label '" + t.label + "' is not in the alphabet");
        }
    }
}

static void write_set(std::ostream& os, const char* key, const std::set<std::string>& items) {
    os << key << ':';
    for (const auto& s : items) {
        os << ' ' << s;
    }
    os << '\n';
}

std::string serialize(const TransitionSystem& ts) {
    std::ostringstream os;
    write_set(os, "states", ts.states);
    write_set(os, "initial", ts.initial);
    write_set(os, "alphabet", ts.alphabet);
    for (const auto& t : ts.transitions) {
        os << t.src << ' ' << t.label << ' ' << t.dst << '\n';
    }
    return os.str();
}

static std::vector<std::string> split_words(std::string_view line) {
    std::vector<std::string> out;
    std::istringstream is{std::string(line)};
    std::string w;
    while (is >> w) {
        out.push_back(w);
    }
    return out;
}

TransitionSystem parse_transition_system(std::string_view text) {
    TransitionSystem ts;
    bool seen_states = false;
    bool seen_initial = false;
    bool seen_alphabet = false;
    int line_no = 0;
    size_t start = 0;
    while (start < text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        ++line_no;
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        auto words = split_words(line);
        if (words.empty()) {
            continue;
        }
        auto header = [&](const char* key, bool& seen, std::set<std::string>& into) {
            if (words[0] != key) {
                return false;
            }
            if (seen) {
                throw std::invalid_argument("line " + std::to_string(line_no) + ": duplicate '" + key + "' line");
            }
            seen = true;
            into.insert(words.begin() + 1, words.end());
            return true;
        };
        if (header("states:", seen_states, ts.states) || header("initial:", seen_initial, ts.initial) ||
            header("alphabet:", seen_alphabet, ts.alphabet)) {
            continue;
        }
        if (words.size() != 3) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": expected 'src label dst'");
        }
        ts.transitions.insert({words[0], words[1], words[2]});
    }
    if (!seen_states || !seen_initial || !seen_alphabet) {
        throw std::invalid_argument("missing 'states:', 'initial:' or 'alphabet:' header");
    }
    ts.validate();
    return ts;
}

} // namespace absint
