// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "absint/integer.hpp"

namespace absint {

/// Violated operation precondition (e.g. narrowing with an argument that is not below).
class ContractError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Raised when a concretization is asked to enumerate an infinite (or too large) set.
class NotEnumerable : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Lattice contract shared by every abstract value domain. Equality is structural on
/// canonical forms, so leq is antisymmetric with respect to ==.
template <typename D>
concept Lattice = requires(const D& a, const D& b) {
    { D::bottom() } -> std::same_as<D>;
    { D::top() } -> std::same_as<D>;
    { a.leq(b) } -> std::same_as<bool>;
    { a.join(b) } -> std::same_as<D>;
    { a.meet(b) } -> std::same_as<D>;
    { a.widen(b) } -> std::same_as<D>;
    { a.narrow(b) } -> std::same_as<D>;
    { a == b } -> std::convertible_to<bool>;
    { to_string(a) } -> std::convertible_to<std::string>;
    { D::domain_name } -> std::convertible_to<std::string_view>;
};

/// A possibly infinite set of integers: a membership test plus an enumerator when finite.
class SetDescriptor {
  public:
    using Membership = std::function<bool(const Integer&)>;
    using Enumerator = std::function<std::vector<Integer>()>;

    SetDescriptor(Membership contains, std::optional<Integer> size, Enumerator enumerate = {});

    static SetDescriptor empty();

    bool contains(const Integer& v) const { return contains_(v); }
    bool enumerable(std::size_t max_size = default_max) const;
    /// Elements in ascending order. Throws NotEnumerable for infinite sets or sets above `max_size`.
    std::vector<Integer> enumerate(std::size_t max_size = default_max) const;
    /// Cardinality, or nullopt when infinite.
    const std::optional<Integer>& size() const { return size_; }

    static constexpr std::size_t default_max = 1u << 20;

  private:
    Membership contains_;
    std::optional<Integer> size_;
    Enumerator enumerate_;
};

template <Lattice D>
struct GaloisConnection {
    std::function<D(std::span<const Integer>)> alpha;
    std::function<SetDescriptor(const D&)> gamma;
};

enum class LawStatus { pass, fail, skipped };

std::string_view to_string(LawStatus s);

struct LawResult {
    std::string law;
    std::string domain;
    std::string sample;
    LawStatus status = LawStatus::pass;
    std::optional<std::string> witness;
};

struct LawReport {
    std::vector<LawResult> results;
    std::vector<std::string> warnings;

    std::size_t count(LawStatus s) const;
    bool passed() const { return count(LawStatus::fail) == 0; }
    /// First failing result, if any.
    const LawResult* first_failure() const;
    void add(std::string law, std::string_view domain, std::string sample, bool ok, std::string witness = {});
    void append(const LawReport& other);
    /// Stable sort by sample id ("c2" before "c10"), law order within a sample preserved.
    void sort();
};

/// Checks gamma(alpha(c)) contains c and alpha(gamma(a)) = a for each concrete sample (a = alpha(c)),
/// alpha(gamma(a)) = a for each abstract sample, and monotonicity of alpha and gamma across samples.
template <Lattice D>
LawReport check_galois(const GaloisConnection<D>& gc, const std::vector<std::vector<Integer>>& concrete,
                       const std::vector<D>& abstract = {}) {
    LawReport report;
    const std::string_view dom = D::domain_name;
    std::vector<D> images;
    for (std::size_t i = 0; i < concrete.size(); ++i) {
        const auto& c = concrete[i];
        const std::string id = "c" + std::to_string(i);
        const D a = gc.alpha(c);
        images.push_back(a);
        const SetDescriptor ga = gc.gamma(a);
        const auto missing = std::find_if(c.begin(), c.end(), [&](const Integer& v) { return !ga.contains(v); });
        report.add("gamma_alpha_extensive", dom, id, missing == c.end(),
                   missing == c.end() ? std::string{}
                                      : to_string(*missing) + " not in gamma(" + to_string(a) + ")");
        if (!ga.enumerable()) {
            report.results.push_back({"alpha_gamma_identity", std::string(dom), id, LawStatus::skipped, std::nullopt});
            report.warnings.push_back(id + ": gamma(" + to_string(a) + ") is not enumerable; identity law skipped");
            continue;
        }
        const auto elems = ga.enumerate();
        const D back = gc.alpha(elems);
        report.add("alpha_gamma_identity", dom, id, back == a,
                   "alpha(gamma(" + to_string(a) + ")) = " + to_string(back));
    }
    for (std::size_t i = 0; i < abstract.size(); ++i) {
        const D& a = abstract[i];
        const std::string id = "a" + std::to_string(i);
        const SetDescriptor ga = gc.gamma(a);
        if (!ga.enumerable()) {
            report.results.push_back({"alpha_gamma_identity", std::string(dom), id, LawStatus::skipped, std::nullopt});
            report.warnings.push_back(id + ": gamma(" + to_string(a) + ") is not enumerable; identity law skipped");
            continue;
        }
        const D back = gc.alpha(ga.enumerate());
        report.add("alpha_gamma_identity", dom, id, back == a,
                   "alpha(gamma(" + to_string(a) + ")) = " + to_string(back));
    }
    // alpha monotone on subset-ordered concrete samples
    std::vector<std::vector<Integer>> sorted = concrete;
    for (auto& s : sorted) {
        std::sort(s.begin(), s.end());
    }
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        std::optional<std::string> witness;
        for (std::size_t j = 0; j < sorted.size() && !witness; ++j) {
            if (i != j && std::includes(sorted[j].begin(), sorted[j].end(), sorted[i].begin(), sorted[i].end()) &&
                !images[i].leq(images[j])) {
                witness = "c" + std::to_string(i) + " subset of c" + std::to_string(j) + " but " +
                          to_string(images[i]) + " not below " + to_string(images[j]);
            }
        }
        report.add("alpha_monotone", dom, "c" + std::to_string(i), !witness, witness.value_or(""));
    }
    // gamma monotone on ordered abstract samples with enumerable gamma on the smaller side
    for (std::size_t i = 0; i < abstract.size(); ++i) {
        const SetDescriptor gi = gc.gamma(abstract[i]);
        if (!gi.enumerable()) {
            continue;
        }
        const auto elems = gi.enumerate();
        std::optional<std::string> witness;
        for (std::size_t j = 0; j < abstract.size() && !witness; ++j) {
            if (i == j || !abstract[i].leq(abstract[j])) {
                continue;
            }
            const SetDescriptor gj = gc.gamma(abstract[j]);
            for (const auto& v : elems) {
                if (!gj.contains(v)) {
                    witness = to_string(v) + " in gamma(" + to_string(abstract[i]) + ") but not in gamma(" +
                              to_string(abstract[j]) + ")";
                    break;
                }
            }
        }
        report.add("gamma_monotone", dom, "a" + std::to_string(i), !witness, witness.value_or(""));
    }
    report.sort();
    return report;
}

/// Per pair (x, y): x <= x widen y, y <= x widen y, join(x, y) <= x widen y, and
/// bottom widen x = x widen bottom = x for both components.
template <Lattice D>
LawReport check_widening_laws(const std::vector<std::pair<D, D>>& pairs) {
    LawReport report;
    const std::string_view dom = D::domain_name;
    const D bot = D::bottom();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& [x, y] = pairs[i];
        const std::string id = "p" + std::to_string(i);
        const D w = x.widen(y);
        const std::string shown = to_string(x) + " widen " + to_string(y) + " = " + to_string(w);
        report.add("widen_above_left", dom, id, x.leq(w), shown);
        report.add("widen_above_right", dom, id, y.leq(w), shown);
        report.add("widen_above_join", dom, id, x.join(y).leq(w), shown);
        for (const D* v : {&x, &y}) {
            const D l = bot.widen(*v);
            const D r = v->widen(bot);
            report.add("widen_bottom_identity", dom, id, l == *v && r == *v,
                       "bottom widen " + to_string(*v) + " = " + to_string(l) + ", " + to_string(*v) +
                           " widen bottom = " + to_string(r));
        }
    }
    return report;
}

/// Per pair (x, y) with y <= x: y <= x narrow y <= x. Other pairs are skipped.
template <Lattice D>
LawReport check_narrowing_laws(const std::vector<std::pair<D, D>>& pairs) {
    LawReport report;
    const std::string_view dom = D::domain_name;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& [x, y] = pairs[i];
        const std::string id = "p" + std::to_string(i);
        if (!y.leq(x)) {
            report.results.push_back({"narrow_between", std::string(dom), id, LawStatus::skipped, std::nullopt});
            continue;
        }
        const D n = x.narrow(y);
        report.add("narrow_between", dom, id, y.leq(n) && n.leq(x),
                   to_string(x) + " narrow " + to_string(y) + " = " + to_string(n));
    }
    return report;
}

/// Partial order, bound, and join/meet algebra laws over all given triples.
template <Lattice D>
LawReport check_lattice_laws(const std::vector<std::tuple<D, D, D>>& triples) {
    LawReport report;
    const std::string_view dom = D::domain_name;
    const D bot = D::bottom();
    const D top = D::top();
    for (std::size_t i = 0; i < triples.size(); ++i) {
        const auto& [a, b, c] = triples[i];
        const std::string id = "t" + std::to_string(i);
        const std::string shown = to_string(a) + ", " + to_string(b) + ", " + to_string(c);
        report.add("bounds", dom, id, bot.leq(a) && a.leq(top), shown);
        report.add("leq_reflexive", dom, id, a.leq(a), shown);
        report.add("leq_antisymmetric", dom, id, !(a.leq(b) && b.leq(a)) || a == b, shown);
        report.add("leq_transitive", dom, id, !(a.leq(b) && b.leq(c)) || a.leq(c), shown);
        report.add("join_commutative", dom, id, a.join(b) == b.join(a), shown);
        report.add("meet_commutative", dom, id, a.meet(b) == b.meet(a), shown);
        report.add("join_associative", dom, id, a.join(b).join(c) == a.join(b.join(c)), shown);
        report.add("meet_associative", dom, id, a.meet(b).meet(c) == a.meet(b.meet(c)), shown);
        report.add("join_idempotent", dom, id, a.join(a) == a, shown);
        report.add("meet_idempotent", dom, id, a.meet(a) == a, shown);
        report.add("absorption", dom, id, a.join(a.meet(b)) == a && a.meet(a.join(b)) == a, shown);
        const D j = a.join(b);
        const D m = a.meet(b);
        report.add("join_least_upper_bound", dom, id,
                   a.leq(j) && b.leq(j) && (!(a.leq(c) && b.leq(c)) || j.leq(c)), shown);
        report.add("meet_greatest_lower_bound", dom, id,
                   m.leq(a) && m.leq(b) && (!(c.leq(a) && c.leq(b)) || c.leq(m)), shown);
    }
    return report;
}

} // namespace absint
