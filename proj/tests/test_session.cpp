#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "expfield/session.hpp"

using namespace expfield;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE_MESSAGE(in.good(), path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

void check_parse_error(const std::string& text, const std::string& message, std::size_t line, std::size_t column) {
    try {
        parse_session(text);
        FAIL("expected a parse error for: " << text);
    } catch (const ParseError& e) {
        CHECK(e.message() == message);
        CHECK(e.line() == line);
        CHECK(e.column() == column);
    }
}

int exit_code(const std::string& args) {
    int status = std::system((std::string(EXPFIELD_BIN) + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* kSessions[] = {"fixed_point", "linear_family", "iterated", "kernel_delta"};

}  // namespace

TEST_CASE("parsing sessions") {
    Session s = parse_session("variety V in G^1 { y1 - x1 = 0 }\nanalyze V\n");
    CHECK(s.varieties.count("V") == 1);
    REQUIRE(s.commands.size() == 1);
    CHECK(s.commands[0].kind == Command::Kind::Analyze);
    CHECK(s.commands[0].text == "analyze V");

    check_parse_error("variety V in G^1 { x1 = y1 }\nanalyze W\n", "undefined: W", 2, 9);
    check_parse_error("variety V in G^1 { x1 }\nvariety V in G^1 { y1 }\n", "duplicate: V", 2, 9);
    check_parse_error("variety V in G^1 {\n  x1 = y1 +\n}\n", "unexpected end of input", 2, 12);
    check_parse_error("variety V in G^1 { x1 = z }\n", "unknown variable z", 1, 25);
    check_parse_error("frobnicate\n", "unknown command 'frobnicate'", 1, 1);
    check_parse_error("efield F { gens b }\nanalyze F\n", "F is not a variety", 2, 9);
    check_parse_error("variety V in G^1 { x1; x1 - 1 }\n", "V: empty variety: the ideal is the unit ideal", 1, 1);

    Session full = parse_session(slurp("sessions/fixed_point.efs"));
    CHECK(full.fields.at("K").kernel_symbol() == std::optional<std::string>("tau"));
    CHECK(full.commands.size() == 6);
    CHECK(full.commands[1].names == std::vector<std::string>{"K", "V", "Ka"});

    Session fam = parse_session("variety P in G^2 { x1 + p*x2 } params { p }\nfamily-filter P at {p = 2}, {p = -1/3}\n");
    REQUIRE(fam.commands[0].samples.size() == 2);
    CHECK(fam.commands[0].samples[1].at("p") == Rational(-1, 3));
}

TEST_CASE("presentation declarations") {
    Session s = parse_session("efield C { gens b; relations { exp(b) = b; exp(b)^2 = b } }\n"
                              "efield T { kernel t; gens u, v; params q; relations { exp(u) = q*v } }\n");
    const auto& c = s.fields.at("C");
    CHECK(c.td() == 0);
    const auto& t = s.fields.at("T");
    CHECK(t.basis() == std::vector<std::string>{"t", "u", "v"});
    CHECK(t.kernel() == std::optional<std::size_t>(0));
    CHECK(t.locus().ring()->param_names() == std::vector<std::string>{"q"});
    CHECK(t.td() == 4);
}

TEST_CASE("failing commands are isolated") {
    Session s = parse_session("variety V in G^1 { y1 - 1 }\nvariety W in G^1 { x1 }\nefield K { kernel tau }\n"
                              "emit-axiom schanuel V\nextend K by W as c\nanalyze W\ndelta K_W (c)\n");
    RunResult r = run_session(s, Bounds{});
    CHECK(r.any_error);
    const Json& res = r.report.at("results");
    REQUIRE(res.size() == 4);
    CHECK(res[0].at("status") == "error");
    CHECK(res[0].at("error").get<std::string>().find("dimension") != std::string::npos);
    CHECK(res[1].at("status") == "error");
    CHECK(res[1].at("detail").at("condition") == "additive-freeness");
    CHECK(res[1].at("detail").at("certificate").at("m") == Json::array({1}));
    CHECK(res[2].at("status") == "ok");
    CHECK(res[3].at("status") == "error");
    CHECK(r.report.at("status") == "error");
}

TEST_CASE("golden sessions") {
    for (const char* name : kSessions) {
        CAPTURE(name);
        Session s = parse_session(slurp(std::string("sessions/") + name + ".efs"));
        RunResult first = run_session(s, Bounds{});
        RunResult second = run_session(s, Bounds{});
        CHECK_FALSE(first.any_error);
        CHECK(first.report.contains("timing"));
        const std::string a = strip_timing(first.report).dump(2), b = strip_timing(second.report).dump(2);
        CHECK(a == b);
        CHECK(a + "\n" == slurp(std::string("sessions/expected/") + name + ".json"));
        CHECK(report_text(strip_timing(first.report)) == slurp(std::string("sessions/expected/") + name + ".txt"));
    }
}

TEST_CASE("formula ASTs in reports") {
    Formula f = parse_formula("forall x1. exists (m1) in Z^1\\0. exp(x1) - 1 = 0 -> m1*x1 = 0");
    Json j = formula_json(f);
    CHECK(j.at("kind") == "forall");
    CHECK(j.at("body").at("kind") == "exists_in");
    CHECK(j.at("body").at("domain") == "Z");
    CHECK(j.at("body").at("nonzero") == true);
    CHECK(j.at("body").at("body").at("kind") == "implies");
    CHECK(term_json(Term::pow(Term::var("x"), 2)).dump() == R"({"kind":"pow","base":{"kind":"var","name":"x"},"exponent":2})");
}

TEST_CASE("command-line exit codes") {
    CHECK(exit_code("run sessions/fixed_point.efs") == 0);
    CHECK(exit_code("run sessions/kernel_delta.efs --emit json --bound-strong 2") == 0);
    CHECK(exit_code("run tests/data/command_error.efs") == 1);
    CHECK(exit_code("run tests/data/parse_error.efs") == 2);
    CHECK(exit_code("run tests/data/does_not_exist.efs") == 2);
    CHECK(exit_code("run sessions/iterated.efs --bound-rotund 0") == 2);
}
