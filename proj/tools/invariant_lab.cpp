// invariant-lab: idempotent residues mod m, the generalized totient
// theorem, compositeness certificates, and Carmichael-number scans from
// the command line.
//
// Exit codes: 0 success (or composite with certificate), 1 negative
// finding (prime-or-prime-power), 2 usage error, 3 resource bound
// exceeded, 4 internal error.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "invlab/carmichael.hpp"
#include "invlab/euler.hpp"
#include "invlab/format.hpp"
#include "invlab/invariants.hpp"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBound = 3;
constexpr int kExitInternal = 4;

constexpr const char* kBoundEnvVar = "INVARIANT_LAB_ORACLE_BOUND";

invlab::Natural oracle_bound() {
    const char* env = std::getenv(kBoundEnvVar);
    if (env == nullptr || *env == '\0') return invlab::kDefaultOracleBound;
    char* end = nullptr;
    unsigned long long parsed = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || parsed == 0)
        throw std::invalid_argument(std::string(kBoundEnvVar) + " must be a positive integer, got '" +
                                    env + "'");
    return parsed;
}

void emit_json(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

int run_invariants(invlab::Natural m, bool paper_style, bool json) {
    invlab::InvariantReport report = invlab::invariants_from_factorization(invlab::Modulus(m));
    if (json)
        emit_json(invlab::invariants_json(report));
    else
        std::cout << invlab::render_invariants(report, paper_style);
    return kExitSuccess;
}

int run_euler(invlab::Natural m, bool all, std::optional<invlab::Natural> a, bool json) {
    if (m < 2) throw std::invalid_argument("euler: m must be >= 2");
    if (all == a.has_value())
        throw std::invalid_argument("euler: pass exactly one of --all or --a <n>");
    if (all) {
        invlab::EulerClassification c = invlab::euler_classification(invlab::Modulus(m));
        if (json)
            emit_json(invlab::euler_all_json(c));
        else
            std::cout << invlab::render_euler_all(c);
        return kExitSuccess;
    }
    if (*a >= m)
        throw std::invalid_argument("euler: a must satisfy a < m");
    invlab::Natural phi = invlab::euler_phi(m);
    invlab::Residue idem = invlab::generalized_euler_residue(invlab::Residue(*a, invlab::Modulus(m)));
    if (json)
        emit_json(invlab::euler_single_json(m, phi, *a, idem.value()));
    else
        std::cout << invlab::render_euler_single(m, phi, *a, idem.value());
    return kExitSuccess;
}

int run_primality(invlab::Natural m, bool json) {
    auto cert = invlab::primality_by_invariants(invlab::Modulus(m), oracle_bound());
    if (json)
        emit_json(invlab::primality_json(m, cert));
    else
        std::cout << invlab::render_primality(m, cert);
    return cert ? kExitSuccess : kExitNegative;
}

int run_table(invlab::Natural m, invlab::Natural a, bool json) {
    invlab::SubgroupTable t = invlab::subgroup_table(invlab::Modulus(m), a);
    if (json)
        emit_json(invlab::table_json(t));
    else
        std::cout << invlab::render_table(t);
    return kExitSuccess;
}

int run_omega(invlab::Natural m, bool json) {
    invlab::OmegaReport r = invlab::omega_report(m);
    if (json)
        emit_json(invlab::omega_report_json(r));
    else
        std::cout << invlab::render_omega_report(r);
    return kExitSuccess;
}

int run_carmichael_check(invlab::Natural m, bool json, bool csv) {
    invlab::CarmichaelRecord r = invlab::hypothesis_check(m);
    if (json) {
        emit_json(nlohmann::json{{"command", "carmichael-check"},
                                 {"m", m},
                                 {"style", "json"},
                                 {"payload", invlab::carmichael_record_json(r)}});
    } else if (csv) {
        std::cout << invlab::kCarmichaelCsvHeader << "\n"
                  << invlab::carmichael_record_csv(r) << "\n";
    } else {
        std::cout << invlab::render_carmichael_record(r);
    }
    return kExitSuccess;
}

int run_carmichael_scan(invlab::Natural lo, invlab::Natural hi, bool json, bool csv) {
    const invlab::Natural bound = oracle_bound();
    if (lo > hi) throw std::invalid_argument("carmichael scan: lo must be <= hi");
    if (hi > bound)
        throw invlab::OracleBoundError("carmichael scan: hi = " + std::to_string(hi) +
                                       " exceeds the scan bound " + std::to_string(bound));

    nlohmann::json records = nlohmann::json::array();
    std::size_t found = 0;
    bool first_human = true;
    if (csv && !json) std::cout << invlab::kCarmichaelCsvHeader << "\n";

    // Chunked so progress ticks on the diagnostic stream while records
    // stream to stdout as they are found.
    const invlab::Natural chunk = 65536;
    for (invlab::Natural start = lo; start <= hi;) {
        invlab::Natural end = (hi - start >= chunk) ? start + chunk - 1 : hi;
        invlab::scan_carmichael(start, end, bound, [&](const invlab::CarmichaelRecord& r) {
            ++found;
            if (json) {
                records.push_back(invlab::carmichael_record_json(r));
            } else if (csv) {
                std::cout << invlab::carmichael_record_csv(r) << "\n";
            } else {
                if (!first_human) std::cout << "\n";
                first_human = false;
                std::cout << invlab::render_carmichael_record(r);
            }
        });
        if (end < hi) std::cerr << "scan: reached " << end << "\n";
        if (end == hi) break;
        start = end + 1;
    }
    std::cerr << "scan: " << found << " carmichael number(s) in [" << lo << ", " << hi << "]\n";

    if (json)
        emit_json(nlohmann::json{{"command", "carmichael-scan"},
                                 {"lo", lo},
                                 {"hi", hi},
                                 {"style", "json"},
                                 {"payload", records}});
    return kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"invariant-lab: idempotent residues, generalized totient classes, "
                 "compositeness certificates and Carmichael scans"};
    app.require_subcommand(1);
    app.footer(std::string("Environment:\n  ") + kBoundEnvVar +
               "  override the exhaustive-scan ceiling (default 1000000)\n"
               "Exit codes:\n"
               "  0 success / composite certificate\n"
               "  1 negative finding (prime-or-prime-power)\n"
               "  2 usage error\n"
               "  3 resource bound exceeded");

    invlab::Natural m = 0, a = 0, lo = 0, hi = 0;
    std::optional<invlab::Natural> euler_a;
    bool paper_style = false;

    auto* inv = app.add_subcommand("invariants", "Invariant/anti-invariant census of m");
    inv->add_option("m", m, "modulus")->required();
    auto* inv_paper = inv->add_flag("--paper-style", paper_style,
                                    "display 0 as m, lists ordered as in the classic tables");
    auto* inv_json = inv->add_flag("--json", "machine-readable output");
    inv_paper->excludes(inv_json);

    auto* eul = app.add_subcommand("euler", "Idempotent reached by a^phi(m) mod m");
    eul->add_option("m", m, "modulus")->required();
    auto* eul_all = eul->add_flag("--all", "one row per unitary-divisor class");
    eul->add_option("--a", euler_a, "single residue to classify");
    eul->add_flag("--json", "machine-readable output");

    auto* pri = app.add_subcommand("primality",
                                   "Compositeness certificate from a non-trivial invariant");
    pri->add_option("m", m, "number to test")->required();
    pri->add_flag("--json", "machine-readable output");

    auto* tab = app.add_subcommand("table", "Multiplication table of the multiples of a mod m");
    tab->add_option("m", m, "modulus")->required();
    tab->add_option("a", a, "unitary divisor of m")->required();
    tab->add_flag("--json", "machine-readable output");

    auto* car = app.add_subcommand("carmichael", "Omega-exponent records and range scans");
    car->require_subcommand(1);
    auto* car_check = car->add_subcommand("check", "full record for one odd composite m");
    car_check->add_option("m", m, "odd composite to check")->required();
    car_check->add_flag("--json", "machine-readable output");
    car_check->add_flag("--csv", "CSV output");
    auto* car_scan = car->add_subcommand("scan", "all Carmichael numbers in [lo, hi]");
    car_scan->add_option("lo", lo, "range start")->required();
    car_scan->add_option("hi", hi, "range end (inclusive)")->required();
    car_scan->add_flag("--json", "machine-readable output");
    car_scan->add_flag("--csv", "CSV output");

    auto* ome = app.add_subcommand("omega", "Omega exponent of m next to lambda and phi");
    ome->add_option("m", m, "modulus")->required();
    ome->add_flag("--json", "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(inv))
            return run_invariants(m, paper_style, inv_json->count() > 0);
        if (app.got_subcommand(eul))
            return run_euler(m, eul_all->count() > 0, euler_a, eul->count("--json") > 0);
        if (app.got_subcommand(pri)) return run_primality(m, pri->count("--json") > 0);
        if (app.got_subcommand(tab)) return run_table(m, a, tab->count("--json") > 0);
        if (app.got_subcommand(car)) {
            if (car->got_subcommand(car_check))
                return run_carmichael_check(m, car_check->count("--json") > 0,
                                            car_check->count("--csv") > 0);
            return run_carmichael_scan(lo, hi, car_scan->count("--json") > 0,
                                       car_scan->count("--csv") > 0);
        }
        if (app.got_subcommand(ome)) return run_omega(m, ome->count("--json") > 0);
        std::cerr << "error: no command selected\n";
        return kExitUsage;
    } catch (const invlab::OracleBoundError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBound;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
