// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "absint/cfg.hpp"
#include "absint/concrete.hpp"
#include "absint/transfer.hpp"

namespace absint {

/// The analysis detected a transfer that is not monotone.
class InternalError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

struct FixpointOptions {
    bool widening = true;      ///< off: plain join at cut points (only terminates on finite-height domains)
    int narrowing_budget = 5;  ///< descending passes after the ascending phase
    /// Receives one line per worklist step when set.
    std::function<void(const std::string&)> trace;
};

struct AnalysisStats {
    std::size_t ascending_steps = 0;
    std::size_t widenings = 0;
    std::size_t narrowing_steps = 0;
    std::size_t summary_contexts = 0;
};

/// Input-indexed function summaries, computed on demand. Calls made while a context of the
/// same function is being computed are answered from that context's current approximation
/// after widening the argument into it.
class SummaryTable {
  public:
    struct Entry {
        std::string function;
        Interval input;
        Interval output;
    };

    explicit SummaryTable(std::vector<FunDef> functions, FixpointOptions options = {});

    Interval summary(const std::string& fn, const Interval& input);
    CallOracle oracle();
    /// Memoized summaries, sorted by function name then input bounds.
    std::vector<Entry> entries() const;
    const AnalysisStats& stats() const { return stats_; }

  private:
    struct Context {
        std::string function;
        Interval input;
        Interval output;
        std::size_t lowest_dependency;
    };

    Interval compute(const FunDef& f, const Interval& input);
    Interval eval_body(const FunDef& f, const Interval& input);

    std::vector<FunDef> functions_;
    FixpointOptions options_;
    std::map<std::pair<std::string, std::string>, Entry> memo_;
    std::vector<Context> active_;
    AnalysisStats stats_;
};

/// Summary of `fn` on `input`; `functions` must contain every function reachable from `fn`.
Interval analyze_function(const std::string& fn, std::span<const FunDef> functions, const Interval& input,
                          FixpointOptions options = {});

template <Lattice V>
struct AnalysisResult {
    Env<V> entry_env;
    std::vector<Env<V>> envs; ///< indexed by node
    std::vector<NodeId> widening_points;
    AnalysisStats stats;
    std::shared_ptr<SummaryTable> summaries;
};

IntervalEnv apply_command(const Command& c, const IntervalEnv& env, const CallOracle& calls = {});
SignEnv apply_command(const Command& c, const SignEnv& env, const CallOracle& calls = {});

/// Entry environment: declared initializers as singletons, variables in `ranges` as their range,
/// everything else top.
IntervalEnv initial_interval_env(const Cfg& cfg, const InitRanges& ranges = {});
SignEnv initial_sign_env(const Cfg& cfg, const InitRanges& ranges = {});

AnalysisResult<Interval> analyze_cfg(const Cfg& cfg, const IntervalEnv& entry_env, FixpointOptions options = {});
AnalysisResult<Sign> analyze_cfg(const Cfg& cfg, const SignEnv& entry_env, FixpointOptions options = {});

/// Re-applies every edge transfer once and checks containment in the recorded envs.
bool check_post_fixpoint(const Cfg& cfg, const AnalysisResult<Interval>& r);
bool check_post_fixpoint(const Cfg& cfg, const AnalysisResult<Sign>& r);

/// Targets of DFS back edges from the entry node, ascending.
std::vector<NodeId> widening_points(const Cfg& cfg);

} // namespace absint
