// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "absint/ast.hpp"
#include "absint/transfer.hpp"

namespace absint {

enum class Verdict { valid, invalid, unknown };

std::string_view to_string(Verdict v);

struct EntailResult {
    Verdict verdict = Verdict::unknown;
    std::map<std::string, Integer> witness; ///< set when invalid: antecedent true, consequent false
};

struct EntailOptions {
    Integer bound = 200;                 ///< witness box is [-bound..bound] per variable
    std::size_t max_points = 100000;     ///< witness search gives up after this many points
    std::size_t exhaustive_limit = 4096; ///< prove() enumerates finite boxes up to this size
    int propagation_rounds = 8;
};

/// Built-in decision procedure for quantifier-free integer implications. Valid answers are
/// sound; unknown means the layers ran out (callers must treat it as possibly invalid).
class Entailment {
  public:
    explicit Entailment(std::span<const FunDef> functions = {}, CallOracle calls = {}, EntailOptions options = {});

    EntailResult check(const BoolPtr& antecedent, const BoolPtr& consequent) const;
    /// Cheaper check used in inner loops: never searches outside the propagated box.
    bool prove(const BoolPtr& antecedent, const BoolPtr& consequent) const;
    bool unsatisfiable(const BoolPtr& f) const { return prove(f, expr::truth(false)); }

    /// Calls `visit` on satisfying assignments of `f` over `vars` (which must cover the free
    /// variables of `f`), lexicographically from the low corner of the propagated box clamped to
    /// the witness bound. Stops when `visit` returns false or `max_points` points were tried.
    /// Returns the number of points tried.
    std::size_t for_each_model(const BoolPtr& f, const std::vector<std::string>& vars,
                               const std::function<bool(std::span<const Integer>)>& visit,
                               std::size_t max_points) const;

    /// Interval box for the free variables of `f` after constraint propagation (bottom: unsat).
    IntervalEnv propagate(const BoolPtr& f, const VarList& vars) const;

    const EntailOptions& options() const { return options_; }

  private:
    bool syntactic(const BoolPtr& antecedent, const BoolPtr& consequent) const;

    std::span<const FunDef> functions_;
    CallOracle calls_;
    EntailOptions options_;
};

/// Entailment between call-free formulas with default options.
EntailResult entails(const BoolPtr& antecedent, const BoolPtr& consequent);

} // namespace absint
