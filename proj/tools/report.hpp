// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Report values shared by the command-line tool and its tests. Each builder returns the JSON
// document (keys sorted, so dump() is byte-stable) and a human-oriented text rendering.

#include <string>

#include "json.hpp"

#include "absint/cegar.hpp"
#include "absint/concrete.hpp"
#include "absint/fixpoint.hpp"
#include "absint/refinement.hpp"

namespace absint::report {

using Json = nlohmann::json;

inline constexpr int schema_version = 1;

struct Style {
    bool color = false;
    bool timings = false; ///< include wall-clock seconds (JSON and text)
};

struct Report {
    Json json;
    std::string text;
    int exit_code = 0;
};

/// Serialized form written to files and stdout: two-space indent, trailing newline.
std::string dump(const Json& j);

enum class Domain { sign, interval };

struct AnalyzeRequest {
    std::string input;
    Domain domain = Domain::interval;
    FixpointOptions fixpoint;
    InitRanges ranges;
};

Report analyze(const Cfg& cfg, const AnalyzeRequest& req, const Style& style);

struct CheckRequest {
    std::string input;
    std::string preds_source; ///< "harvested" or the predicate file path
    PredicateTable initial;
    CegarOptions options;
};

/// Exit code 0 proved, 1 refuted, 2 budget exhausted or unknown.
Report check(const Cfg& cfg, const CheckRequest& req, const Style& style);

struct RefineRequest {
    std::string abstract_input;
    std::string refined_input;
    std::string gluing_input; ///< empty when no gluing file was given
};

/// Exit code 0 refines, 1 does not refine.
Report refine_check(const RefinementInstance& inst, const RefineRequest& req, const Style& style);

struct EnumerateRequest {
    std::string input;
    InitRanges ranges;
    std::size_t limit = 50000;
    EvalOptions eval;
};

/// Exit code 0; the report carries the reachable states and a truncation flag.
Report enumerate(const Cfg& cfg, const EnumerateRequest& req, const Style& style);

Json state_json(const ConcreteState& s, const Cfg& cfg);
Json trace_json(const Trace& t, const Cfg& cfg);

} // namespace absint::report
