#pragma once

// Session files: declarations of varieties, presentations and exponential
// polynomial systems followed by analysis commands. See docs/session-grammar.md.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "expfield/axiomgen.hpp"
#include "json.hpp"

namespace expfield {

using Json = nlohmann::ordered_json;

struct Command {
    enum class Kind {
        Analyze,
        Extend,
        Delta,
        Schanuel,
        Strong,
        Hull,
        EmitSchanuel,
        EmitSeac,
        EmitCcp,
        EmitIsolating,
        VerifyWitness,
        Iterated,
        FamilyFilter,
        Isomorphic,
        Khovanskii,
    };

    Kind kind;
    std::string text;  ///< source text, whitespace collapsed
    std::size_t line = 0;
    /// Referenced object names in command order (field, variety, system, result name).
    std::vector<std::string> names;
    std::vector<std::string> tuple;    ///< elements (delta, hull, schanuel, isolating, verify-witness)
    std::vector<std::string> over;     ///< base elements, or X0 symbols for isolating
    std::vector<std::string> witness;  ///< isolating witness tuple
    std::vector<std::string> symbols;  ///< new symbols for extend
    bool has_over = false;
    std::size_t number = 0;  ///< iterated N, seac r
    std::vector<std::map<std::string, Rational>> samples;
};

struct Session {
    std::map<std::string, GVariety> varieties;
    std::map<std::string, EFieldPresentation> fields;
    std::map<std::string, std::vector<ExpPoly>> systems;
    std::vector<Command> commands;
};

/// Throws ParseError with 1-based line and column; undefined and duplicate
/// names report "undefined: X" and "duplicate: X".
Session parse_session(std::string_view text);

struct RunResult {
    Json report;
    bool any_error = false;
};

/// Executes commands in order; a failing command records its error and the rest still run.
RunResult run_session(const Session& session, const Bounds& bounds);

/// The report without its timing field.
Json strip_timing(Json report);

/// Indented key/value rendering of a report.
std::string report_text(const Json& report);

Json formula_json(const Formula& f);
Json term_json(const Term& t);

}  // namespace expfield
