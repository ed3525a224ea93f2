// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "absint/cfg.hpp"
#include "absint/concrete.hpp"
#include "absint/entailment.hpp"
#include "absint/fixpoint.hpp"
#include "absint/parser.hpp"

namespace absint {

/// Raised when an abstraction would need more predicates than the explicit-state guard allows.
class PredicateLimitError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Ordered predicates, distinct up to normalization and negation. Never empty: a table
/// built from no predicates holds the constant true.
class PredicateTable {
  public:
    PredicateTable();
    explicit PredicateTable(const std::vector<Predicate>& preds);

    /// Appends `p` unless an equivalent predicate (or its negation) is present.
    bool add(Predicate p);
    bool contains(const BoolPtr& b) const;

    std::size_t size() const { return preds_.size(); }
    const Predicate& operator[](std::size_t i) const { return preds_[i]; }
    const std::vector<Predicate>& preds() const { return preds_; }
    std::vector<std::string> texts() const;

  private:
    std::vector<Predicate> preds_;
    std::set<std::string> keys_;
};

/// Predicate with its text rendered from `b`.
Predicate make_predicate(BoolPtr b);

/// Constant true followed by the comparison atoms of every guard and assertion, in edge order.
PredicateTable initial_predicates(const Cfg& cfg);

/// Bit i is the truth of predicate i (k <= 32).
using Valuation32 = std::uint32_t;

std::string bits_to_string(Valuation32 bits, std::size_t k);

Valuation32 abstract_state_of(const ConcreteState& s, const Cfg& cfg, const PredicateTable& pt,
                              const EvalOptions& options = {});

struct AbstractionOptions {
    std::size_t max_predicates = 20;
    EntailOptions entail;
};

/// Predicate abstraction of one CFG: cube concretization, abstract post, initial valuations.
class Abstractor {
  public:
    Abstractor(const Cfg& cfg, const PredicateTable& pt, const InitRanges& ranges = {},
               AbstractionOptions options = {});

    /// Conjunction of p_i or not p_i per bit.
    BoolPtr cube(Valuation32 bits) const;
    /// Every target valuation not refuted by the entailment checker, ascending.
    std::vector<Valuation32> post(const Command& cmd, Valuation32 src) const;
    /// Valuations consistent with the initial-state constraint, ascending.
    std::vector<Valuation32> initial_valuations() const;
    /// Declared initializers and initial ranges as a formula.
    const BoolPtr& init_formula() const { return init_; }

    const Entailment& checker() const { return checker_; }
    const PredicateTable& table() const { return pt_; }
    const Cfg& cfg() const { return cfg_; }
    SummaryTable& summaries() const { return *summaries_; }

  private:
    const Cfg& cfg_;
    PredicateTable pt_;
    std::shared_ptr<SummaryTable> summaries_;
    Entailment checker_;
    BoolPtr init_;
};

/// Convenience wrapper building a throwaway Abstractor.
std::vector<Valuation32> abstract_post(const Command& cmd, Valuation32 src, const PredicateTable& pt,
                                       const Cfg& cfg);

struct AbstractState {
    NodeId node = 0;
    Valuation32 bits = 0;

    auto operator<=>(const AbstractState&) const = default;
};

/// Explicit abstract transition system; states sorted by (node, bits).
struct AbstractTS {
    std::size_t k = 0;
    std::vector<AbstractState> states;
    std::vector<std::size_t> initial;
    struct Step {
        std::size_t src;
        int edge;
        std::size_t dst;

        auto operator<=>(const Step&) const = default;
    };
    std::vector<Step> transitions; ///< sorted
    std::vector<std::size_t> bad;  ///< states at the error node

    std::optional<std::size_t> find(const AbstractState& s) const;
    /// "n<node>:<bits>", bit i as the i-th character.
    std::string id(std::size_t i) const;
};

/// Reachable part of the product of program points and predicate valuations. Throws
/// PredicateLimitError when the table exceeds the predicate guard.
AbstractTS build_abstract_ts(const Abstractor& abs);
AbstractTS build_abstract_ts(const Cfg& cfg, const PredicateTable& pt, const InitRanges& ranges = {},
                             AbstractionOptions options = {});

/// Labels are edge ids "e<k>".
TransitionSystem to_transition_system(const AbstractTS& ts);

} // namespace absint
