// Copyright (c) absint-cegar contributors.
// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"

#include "absint/parser.hpp"
#include "report.hpp"

namespace absint::cli {

namespace {

constexpr int exit_internal = 4;

const CLI::Validator positive = CLI::Range(1LL, 1000000000000LL, "POSITIVE");

/// Input that parsed as arguments but cannot be used (missing file, bad program, bad range).
class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Integer parse_integer(const std::string& s, const std::string& text) {
    const std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
    if (s.size() == start || !std::all_of(s.begin() + static_cast<long>(start), s.end(), ::isdigit)) {
        throw InputError("bad --init range '" + text + "' (expected VAR=LO..HI or VAR=N)");
    }
    return Integer(s);
}

/// "x=-3..3" or "x=5".
InitRanges parse_ranges(const std::vector<std::string>& items, const Program& p) {
    InitRanges out;
    for (const auto& text : items) {
        const auto eq = text.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw InputError("bad --init range '" + text + "' (expected VAR=LO..HI or VAR=N)");
        }
        const std::string var = text.substr(0, eq);
        if (std::find(p.vars.begin(), p.vars.end(), var) == p.vars.end()) {
            throw InputError("--init names unknown variable '" + var + "'");
        }
        const std::string rest = text.substr(eq + 1);
        const auto dots = rest.find("..");
        IntRange r;
        if (dots == std::string::npos) {
            r.lo = r.hi = parse_integer(rest, text);
        } else {
            r.lo = parse_integer(rest.substr(0, dots), text);
            r.hi = parse_integer(rest.substr(dots + 2), text);
        }
        if (r.lo > r.hi) {
            throw InputError("empty --init range '" + text + "'");
        }
        out[var] = r;
    }
    return out;
}

struct Output {
    std::string format; ///< "json", "text", or empty for the default
    std::string report_path;
    bool timings = false;

    void attach(CLI::App& sub) {
        sub.add_option("--format", format, "Report format (default: text on stdout, json with --report)")
            ->check(CLI::IsMember({"json", "text"}));
        sub.add_option("--report", report_path, "Write the report to PATH instead of stdout");
        sub.add_flag("--timings", timings, "Include wall-clock timings (excluded from JSON by default)");
    }
    bool json() const { return format.empty() ? !report_path.empty() : format == "json"; }
};

Program load_program(const std::string& path) {
    std::string name = path;
    if (const auto slash = name.find_last_of('/'); slash != std::string::npos) {
        name = name.substr(slash + 1);
    }
    if (const auto dot = name.find_last_of('.'); dot != std::string::npos && dot > 0) {
        name = name.substr(0, dot);
    }
    return parse_program(read_file(path), name);
}

} // namespace

bool color_enabled(const char* env_value, bool stdout_is_tty) {
    if (env_value != nullptr) {
        return std::string(env_value) != "0";
    }
    return stdout_is_tty;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color) {
    CLI::App app{"Abstract interpretation, predicate-abstraction CEGAR and refinement checking for MIL programs",
                 "absint-cegar"};
    app.require_subcommand(1);

    Output output;
    std::string input;
    std::vector<std::string> init;

    auto* analyze = app.add_subcommand("analyze", "Interval or sign fixpoint analysis of a MIL program");
    std::string domain = "interval";
    int narrowing = 5;
    bool trace_fixpoint = false;
    analyze->add_option("FILE", input, "MIL program")->required();
    analyze->add_option("--domain", domain, "Abstract domain")->check(CLI::IsMember({"sign", "interval"}));
    analyze->add_option("--narrowing", narrowing, "Descending passes after the ascending phase")
        ->check(positive);
    analyze->add_flag("--trace-fixpoint", trace_fixpoint, "Stream one line per worklist step to stderr");
    analyze->add_option("--init", init, "Initial range VAR=LO..HI or VAR=N (repeatable)");
    output.attach(*analyze);

    auto* check = app.add_subcommand("check", "Prove or refute the assertions of a MIL program by CEGAR");
    std::string preds_path;
    int budget = 10;
    std::string refine = "backward";
    std::size_t sample_bound = 1000;
    long long box = 200;
    check->add_option("FILE", input, "MIL program")->required();
    check->add_option("--preds", preds_path, "Initial predicates, one per line ('#' comments)");
    check->add_option("--budget", budget, "Maximum CEGAR iterations")->check(positive);
    check->add_option("--refine", refine, "Refinement strategy")->check(CLI::IsMember({"backward", "forward"}));
    check->add_option("--sample-bound", sample_bound, "Candidate initial states replayed per counterexample")
        ->check(positive);
    check->add_option("--box", box, "Witness search box [-B..B] for entailment checks")->check(positive);
    check->add_option("--init", init, "Initial range VAR=LO..HI or VAR=N (repeatable)");
    output.attach(*check);

    auto* refine_check = app.add_subcommand("refine-check", "Check that TS2 refines TS1");
    std::string ts1_path;
    std::string ts2_path;
    std::vector<std::string> new_actions;
    std::string gluing_path;
    refine_check->add_option("TS1", ts1_path, "Abstract transition system")->required();
    refine_check->add_option("TS2", ts2_path, "Refined transition system")->required();
    refine_check->add_option("--new-actions", new_actions, "Comma-separated actions new in TS2")->delimiter(',');
    refine_check->add_option("--gluing", gluing_path, "Candidate state pairs 'refined abstract', one per line");
    output.attach(*refine_check);

    auto* enumerate = app.add_subcommand("enumerate", "Enumerate the reachable concrete states of a MIL program");
    std::size_t limit = 50000;
    bool wrap64 = false;
    enumerate->add_option("FILE", input, "MIL program")->required();
    enumerate->add_option("--limit", limit, "Stop after this many states")->check(positive);
    enumerate->add_option("--init", init, "Initial range VAR=LO..HI or VAR=N (repeatable)");
    enumerate->add_flag("--wrap64", wrap64, "Wrap arithmetic to 64 bits instead of unbounded integers");
    output.attach(*enumerate);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return exit_usage;
    }

    // Open the destination first so an unwritable path fails before any work is done.
    std::ofstream file;
    if (!output.report_path.empty()) {
        file.open(output.report_path, std::ios::binary | std::ios::trunc);
        if (!file) {
            err << "error: cannot write report to '" << output.report_path << "'\n";
            return exit_usage;
        }
    }
    std::ostream& dest = output.report_path.empty() ? out : file;
    const report::Style style{color && output.report_path.empty() && !output.json(), output.timings};

    report::Report r;
    try {
        if (analyze->parsed()) {
            const Program p = load_program(input);
            const Cfg cfg = lower_to_cfg(p);
            report::AnalyzeRequest req;
            req.input = input;
            req.domain = domain == "sign" ? report::Domain::sign : report::Domain::interval;
            req.fixpoint.narrowing_budget = narrowing;
            if (trace_fixpoint) {
                req.fixpoint.trace = [&err](const std::string& line) { err << line << '\n'; };
            }
            req.ranges = parse_ranges(init, p);
            r = report::analyze(cfg, req, style);
        } else if (check->parsed()) {
            const Program p = load_program(input);
            const Cfg cfg = lower_to_cfg(p);
            report::CheckRequest req;
            req.input = input;
            if (preds_path.empty()) {
                req.preds_source = "harvested";
                req.initial = initial_predicates(cfg);
            } else {
                req.preds_source = preds_path;
                req.initial = PredicateTable(parse_predicate_file(read_file(preds_path), p));
            }
            req.options.budget = budget;
            req.options.refine = refine == "forward" ? RefineMode::forward : RefineMode::backward;
            req.options.ranges = parse_ranges(init, p);
            req.options.validation.sample_bound = sample_bound;
            req.options.validation.entail.bound = box;
            req.options.abstraction.entail.bound = box;
            r = report::check(cfg, req, style);
        } else if (refine_check->parsed()) {
            std::optional<StatePairs> gluing;
            if (!gluing_path.empty()) {
                gluing = parse_state_pairs(read_file(gluing_path));
            }
            const auto inst = RefinementInstance::make(parse_transition_system(read_file(ts1_path)),
                                                       parse_transition_system(read_file(ts2_path)),
                                                       {new_actions.begin(), new_actions.end()}, gluing);
            r = report::refine_check(inst, {ts1_path, ts2_path, gluing_path}, style);
        } else {
            const Program p = load_program(input);
            const Cfg cfg = lower_to_cfg(p);
            report::EnumerateRequest req;
            req.input = input;
            req.ranges = parse_ranges(init, p);
            req.limit = limit;
            req.eval.overflow = wrap64 ? OverflowPolicy::wrap64 : OverflowPolicy::unbounded;
            r = report::enumerate(cfg, req, style);
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const MilError& e) {
        err << "error: " << input << ": " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return exit_internal;
    }

    dest << (output.json() ? report::dump(r.json) : r.text);
    dest.flush();
    if (!dest) {
        err << "error: failed writing report\n";
        return exit_usage;
    }
    return r.exit_code;
}

} // namespace absint::cli
