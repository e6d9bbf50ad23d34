#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "expfield/session.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kCommandError = 1;
constexpr int kParseError = 2;

int run(const std::string& path, const expfield::Bounds& bounds, const std::string& emit, bool no_timing) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot read " << path << "\n";
        return kParseError;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    expfield::Session session;
    try {
        session = expfield::parse_session(buf.str());
    } catch (const expfield::ParseError& e) {
        std::cerr << path << ":" << e.line() << ":" << e.column() << ": parse error: " << e.message() << "\n";
        return kParseError;
    }
    expfield::RunResult result = expfield::run_session(session, bounds);
    if (no_timing) result.report = expfield::strip_timing(std::move(result.report));
    if (emit == "json") std::cout << result.report.dump(2) << "\n";
    else std::cout << expfield::report_text(result.report);
    return result.any_error ? kCommandError : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exponential-field presentations, varieties and axiom instances"};
    app.require_subcommand(1);

    expfield::Bounds bounds;
    std::string path, emit = "text";
    bool no_timing = false;
    CLI::App* run_cmd = app.add_subcommand("run", "Run a session file");
    run_cmd->add_option("session", path, "Session file")->required();
    run_cmd->add_option("--bound-rotund", bounds.rotund, "Entry bound for rotundity matrices")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    run_cmd->add_option("--bound-mult", bounds.mult, "Exponent bound for multiplicative freeness")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    run_cmd->add_option("--bound-strong", bounds.strong, "Coefficient bound for strongness and hull searches")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    run_cmd->add_option("--m-max", bounds.m_max, "Largest divisor tried by the isomorphism search")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    run_cmd->add_option("--budget", bounds.budget, "Reduction-step budget per Groebner computation")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    run_cmd->add_option("--emit", emit, "Report format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    run_cmd->add_flag("--no-timing", no_timing, "Omit the timing field from JSON reports");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParseError;
    }
    return run(path, bounds, emit, no_timing);
}
