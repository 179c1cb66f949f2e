// End-to-end tests against the built invariant-lab binary: output bytes,
// exit codes, stream separation, and JSON round-trips.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <string>

#include <json.hpp>

#include <sys/wait.h>

namespace {

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

/// Runs the CLI through the shell; stderr is dropped unless the caller
/// redirects it explicitly inside `args`.
CommandResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    std::string cmd = env_prefix + std::string(INVLAB_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CommandResult result;
    char buffer[4096];
    size_t n = 0;
    while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.output.append(buffer, n);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

bool contains_line(const std::string& text, const std::string& line) {
    std::string wrapped = "\n" + text;
    return wrapped.find("\n" + line + "\n") != std::string::npos;
}

}  // namespace

TEST_CASE("invariants command, canonical and paper style") {
    CommandResult paper = run_cli("invariants 15 --paper-style");
    CHECK(paper.exit_code == 0);
    CHECK(contains_line(paper.output, "invariants: 1, 6, 10, 15"));
    CHECK(contains_line(paper.output, "anti-invariants: 14, 9, 5, 0"));
    CHECK(contains_line(paper.output, "tuples: (0,1), (5,6), (9,10), (14,15)"));

    CommandResult canonical = run_cli("invariants 7");
    CHECK(canonical.exit_code == 0);
    CHECK(contains_line(canonical.output, "invariants: 0, 1"));

    CommandResult json = run_cli("invariants 105 --json");
    CHECK(json.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(json.output);
    CHECK(j["payload"]["invariants"].size() == 8);
}

TEST_CASE("invariants command usage errors exit with 2") {
    CHECK(run_cli("invariants abc").exit_code == 2);
    CHECK(run_cli("invariants").exit_code == 2);
    CHECK(run_cli("invariants 15 --paper-style --json").exit_code == 2);
    CHECK(run_cli("invariants 0").exit_code == 2);
    CHECK(run_cli("unknown-command 4").exit_code == 2);
}

TEST_CASE("euler command") {
    CommandResult all = run_cli("euler 105 --all");
    CHECK(all.exit_code == 0);
    CHECK(contains_line(all.output, "phi: 48"));
    CHECK(contains_line(all.output, "support 1: idempotent 1"));
    CHECK(contains_line(all.output, "support 3: idempotent 36"));
    CHECK(contains_line(all.output, "support 5: idempotent 85"));
    CHECK(contains_line(all.output, "support 7: idempotent 91"));
    CHECK(contains_line(all.output, "support 15: idempotent 15"));
    CHECK(contains_line(all.output, "support 21: idempotent 21"));
    CHECK(contains_line(all.output, "support 35: idempotent 70"));

    CommandResult coprime = run_cli("euler 105 --a 2");
    CHECK(coprime.exit_code == 0);
    CHECK(contains_line(coprime.output, "idempotent: 1"));

    CommandResult shared = run_cli("euler 105 --a 35");
    CHECK(shared.exit_code == 0);
    CHECK(contains_line(shared.output, "idempotent: 70"));

    CHECK(run_cli("euler 105 --a 105").exit_code == 2);
    CHECK(run_cli("euler 105 --a 200").exit_code == 2);
    CHECK(run_cli("euler 105").exit_code == 2);
    CHECK(run_cli("euler 105 --all --a 3").exit_code == 2);
    CHECK(run_cli("euler 1 --all").exit_code == 2);
}

TEST_CASE("primality command exit codes follow the finding") {
    CommandResult composite = run_cli("primality 15");
    CHECK(composite.exit_code == 0);
    CHECK(contains_line(composite.output, "composite"));
    CHECK(contains_line(composite.output, "witness: 6"));
    CHECK(contains_line(composite.output, "factors: 3 x 5"));

    CommandResult prime = run_cli("primality 13");
    CHECK(prime.exit_code == 1);
    CHECK(contains_line(prime.output, "prime-or-prime-power"));

    CHECK(run_cli("primality 49").exit_code == 1);
    CHECK(run_cli("primality 1").exit_code == 2);
}

TEST_CASE("oracle bound environment variable") {
    CHECK(run_cli("primality 561", "INVARIANT_LAB_ORACLE_BOUND=100 ").exit_code == 3);
    CHECK(run_cli("primality 561", "INVARIANT_LAB_ORACLE_BOUND=1000 ").exit_code == 0);
    CHECK(run_cli("primality 561", "INVARIANT_LAB_ORACLE_BOUND=nonsense ").exit_code == 2);
    CHECK(run_cli("carmichael scan 2 2000", "INVARIANT_LAB_ORACLE_BOUND=100 ").exit_code == 3);
}

TEST_CASE("table command") {
    CommandResult t = run_cli("table 35 5");
    CHECK(t.exit_code == 0);
    CHECK(contains_line(t.output, "elements: 5, 10, 15, 20, 25, 30"));
    CHECK(contains_line(t.output, " 5 | 25 15  5 30 20 10"));
    CHECK(contains_line(t.output, "I=15 A=20"));

    CommandResult small = run_cli("table 15 3");
    CHECK(small.exit_code == 0);
    CHECK(contains_line(small.output, "elements: 3, 6, 9, 12"));
    CHECK(contains_line(small.output, "I=6 A=9"));

    CHECK(run_cli("table 35 6").exit_code == 2);
    CHECK(run_cli("table 12 6").exit_code == 2);
    CHECK(run_cli("table 35").exit_code == 2);
}

TEST_CASE("carmichael check command") {
    CommandResult c = run_cli("carmichael check 561");
    CHECK(c.exit_code == 0);
    CHECK(contains_line(c.output, "omega: 80"));
    CHECK(contains_line(c.output, "ratio: 7"));
    CHECK(contains_line(c.output, "carmichael: true"));

    CommandResult not_carmichael = run_cli("carmichael check 15");
    CHECK(not_carmichael.exit_code == 0);  // the check itself succeeded
    CHECK(contains_line(not_carmichael.output, "ratio: -"));
    CHECK(contains_line(not_carmichael.output, "korselt: false"));
    CHECK(contains_line(not_carmichael.output, "carmichael: false"));

    CHECK(run_cli("carmichael check 16").exit_code == 2);
    CHECK(run_cli("carmichael check 13").exit_code == 2);
}

TEST_CASE("carmichael scan keeps records on stdout, progress on stderr") {
    CommandResult csv = run_cli("carmichael scan 2 2000 --csv");
    CHECK(csv.exit_code == 0);
    CHECK(csv.output ==
          "m,factorization,omega,ratio,korselt,fermat_verified\n"
          "561,3*11*17,80,7,true,true\n"
          "1105,5*13*17,48,23,true,true\n"
          "1729,7*13*19,36,48,true,true\n");

    CommandResult empty = run_cli("carmichael scan 2 500 --csv");
    CHECK(empty.exit_code == 0);
    CHECK(empty.output == "m,factorization,omega,ratio,korselt,fermat_verified\n");

    CHECK(run_cli("carmichael scan 10 2").exit_code == 2);
}

TEST_CASE("omega command") {
    CommandResult r = run_cli("omega 8");
    CHECK(r.exit_code == 0);
    CHECK(contains_line(r.output, "omega: 4"));
    CHECK(contains_line(r.output, "lambda: 2"));
    CHECK(contains_line(r.output, "divides_phi: true"));
    CHECK(run_cli("omega 1").exit_code == 2);
}

TEST_CASE("identical invocations produce byte-identical output") {
    for (const char* args : {"invariants 105", "euler 105 --all", "table 35 5",
                             "carmichael scan 2 2000 --csv", "primality 561 --json"}) {
        CommandResult first = run_cli(args);
        CommandResult second = run_cli(args);
        CHECK(first.output == second.output);
        CHECK(first.exit_code == second.exit_code);
    }
}

TEST_CASE("json outputs parse and round-trip") {
    for (const char* args :
         {"invariants 15 --json", "euler 105 --all --json", "euler 105 --a 35 --json",
          "primality 15 --json", "primality 13 --json", "table 35 5 --json",
          "carmichael check 561 --json", "carmichael scan 2 2000 --json", "omega 8 --json"}) {
        CommandResult r = run_cli(args);
        INFO("command: ", args);
        nlohmann::json parsed = nlohmann::json::parse(r.output);
        nlohmann::json reparsed = nlohmann::json::parse(parsed.dump(2));
        CHECK(parsed == reparsed);
        CHECK(parsed.contains("command"));
        CHECK(parsed.contains("payload"));
        CHECK(parsed["style"] == "json");
    }
}

TEST_CASE("help is reachable and exits cleanly") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("invariants --help").exit_code == 0);
}
