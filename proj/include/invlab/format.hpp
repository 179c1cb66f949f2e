#pragma once

// Human, paper-style, JSON, and CSV rendering of the report types.
//
// Canonical residues live in [0, m). Paper-style display maps the
// invariant 0 to m, so the classic lists read (1, 6, 10, 15) for m = 15
// and the wrap-around tuple renders as (m-1, m); the computational core
// never uses m as a representative.

#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "invlab/carmichael.hpp"
#include "invlab/euler.hpp"
#include "invlab/invariants.hpp"

namespace invlab {

inline std::vector<Natural> paper_style_invariants(const InvariantReport& r) {
    std::vector<Natural> out;
    out.reserve(r.invariants.size());
    for (Natural i : r.invariants) out.push_back(i == 0 ? r.modulus.value() : i);
    std::sort(out.begin(), out.end());
    return out;
}

/// Complements of the displayed invariants, in the same order (descending).
inline std::vector<Natural> paper_style_anti_invariants(const InvariantReport& r) {
    std::vector<Natural> out;
    for (Natural i : paper_style_invariants(r)) out.push_back(r.modulus.value() - i);
    return out;
}

/// Tuples ordered by anti-invariant ascending, invariant 0 shown as m.
inline std::vector<std::pair<Natural, Natural>> paper_style_tuples(const InvariantReport& r) {
    std::vector<std::pair<Natural, Natural>> out;
    out.reserve(r.tuples.size());
    for (const auto& [anti, inv] : r.tuples)
        out.emplace_back(anti, inv == 0 ? r.modulus.value() : inv);
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

inline std::string join(const std::vector<Natural>& values) {
    if (values.empty()) return "(none)";
    std::ostringstream os;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) os << ", ";
        os << values[i];
    }
    return os.str();
}

inline std::string join_pairs(const std::vector<std::pair<Natural, Natural>>& pairs) {
    if (pairs.empty()) return "(none)";
    std::ostringstream os;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (i) os << ", ";
        os << "(" << pairs[i].first << "," << pairs[i].second << ")";
    }
    return os.str();
}

inline unsigned digit_count(Natural n) {
    unsigned d = 1;
    while (n >= 10) { n /= 10; ++d; }
    return d;
}

}  // namespace detail

inline std::string factorization_text(const Factorization& f) {
    if (f.factors.empty()) return "1";
    std::ostringstream os;
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
        if (i) os << "*";
        os << f.factors[i].prime;
        if (f.factors[i].exponent > 1) os << "^" << f.factors[i].exponent;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// invariants
// ---------------------------------------------------------------------------

inline std::string render_invariants(const InvariantReport& r, bool paper_style) {
    std::ostringstream os;
    os << "m: " << r.modulus.value() << "\n";
    if (paper_style) {
        std::vector<Natural> trivial;
        for (Natural i : r.trivial) trivial.push_back(i == 0 ? r.modulus.value() : i);
        std::sort(trivial.begin(), trivial.end());
        os << "invariants: " << detail::join(paper_style_invariants(r)) << "\n";
        os << "anti-invariants: " << detail::join(paper_style_anti_invariants(r)) << "\n";
        os << "tuples: " << detail::join_pairs(paper_style_tuples(r)) << "\n";
        os << "trivial: " << detail::join(trivial) << "\n";
    } else {
        os << "invariants: " << detail::join(r.invariants) << "\n";
        os << "anti-invariants: " << detail::join(r.anti_invariants) << "\n";
        os << "tuples: " << detail::join_pairs(r.tuples) << "\n";
        os << "trivial: " << detail::join(r.trivial) << "\n";
    }
    os << "nontrivial: " << detail::join(r.nontrivial) << "\n";
    return os.str();
}

inline nlohmann::json invariants_json(const InvariantReport& r) {
    return nlohmann::json{{"command", "invariants"},
                          {"m", r.modulus.value()},
                          {"style", "json"},
                          {"payload",
                           {{"invariants", r.invariants},
                            {"anti_invariants", r.anti_invariants},
                            {"tuples", r.tuples},
                            {"trivial", r.trivial},
                            {"nontrivial", r.nontrivial}}}};
}

// ---------------------------------------------------------------------------
// euler
// ---------------------------------------------------------------------------

inline std::string render_euler_all(const EulerClassification& c) {
    std::ostringstream os;
    os << "m: " << c.modulus.value() << "\n";
    os << "phi: " << c.phi << "\n";
    for (const EulerClass& cls : c.classes)
        os << "support " << cls.support << ": idempotent " << cls.idempotent << "\n";
    return os.str();
}

inline nlohmann::json euler_all_json(const EulerClassification& c) {
    nlohmann::json classes = nlohmann::json::array();
    for (const EulerClass& cls : c.classes)
        classes.push_back({{"support", cls.support}, {"idempotent", cls.idempotent}});
    return nlohmann::json{{"command", "euler"},
                          {"m", c.modulus.value()},
                          {"style", "json"},
                          {"payload", {{"phi", c.phi}, {"classes", classes}}}};
}

inline std::string render_euler_single(Natural m, Natural phi, Natural a, Natural idempotent) {
    std::ostringstream os;
    os << "m: " << m << "\n";
    os << "phi: " << phi << "\n";
    os << "a: " << a << "\n";
    os << "idempotent: " << idempotent << "\n";
    return os.str();
}

inline nlohmann::json euler_single_json(Natural m, Natural phi, Natural a, Natural idempotent) {
    return nlohmann::json{{"command", "euler"},
                          {"m", m},
                          {"style", "json"},
                          {"payload", {{"phi", phi}, {"a", a}, {"idempotent", idempotent}}}};
}

// ---------------------------------------------------------------------------
// primality
// ---------------------------------------------------------------------------

inline std::string render_primality(Natural m, const std::optional<CompositeCertificate>& cert) {
    std::ostringstream os;
    os << "m: " << m << "\n";
    if (cert) {
        os << "composite\n";
        os << "witness: " << cert->witness << "\n";
        os << "factors: " << cert->factor_a << " x " << cert->factor_b << "\n";
    } else {
        os << "prime-or-prime-power\n";
    }
    return os.str();
}

inline nlohmann::json primality_json(Natural m, const std::optional<CompositeCertificate>& cert) {
    nlohmann::json payload;
    if (cert) {
        payload = {{"result", "composite"},
                   {"witness", cert->witness},
                   {"factor_a", cert->factor_a},
                   {"factor_b", cert->factor_b}};
    } else {
        payload = {{"result", "prime-or-prime-power"}};
    }
    return nlohmann::json{
        {"command", "primality"}, {"m", m}, {"style", "json"}, {"payload", payload}};
}

// ---------------------------------------------------------------------------
// table
// ---------------------------------------------------------------------------

inline std::string render_table(const SubgroupTable& t) {
    std::ostringstream os;
    os << "m: " << t.modulus.value() << "\n";
    os << "a: " << t.generator_divisor << "\n";
    os << "elements: " << detail::join(t.elements) << "\n";

    const unsigned w = detail::digit_count(t.elements.empty() ? 0 : t.elements.back());
    os << std::string(w, ' ') << " |";
    for (Natural e : t.elements) os << " " << std::setw(w) << e;
    os << "\n";
    os << std::string(w + 1, '-') << "+" << std::string(t.elements.size() * (w + 1), '-') << "\n";
    for (std::size_t i = 0; i < t.elements.size(); ++i) {
        os << std::setw(w) << t.elements[i] << " |";
        for (Natural cell : t.table[i]) os << " " << std::setw(w) << cell;
        os << "\n";
    }

    os << "I=" << t.identity << " A=" << t.anti_identity << "\n";
    std::vector<std::pair<Natural, Natural>> pairs(t.inverses.begin(), t.inverses.end());
    os << "inverses: " << detail::join_pairs(pairs) << "\n";
    return os.str();
}

inline nlohmann::json table_json(const SubgroupTable& t) {
    nlohmann::json inverses = nlohmann::json::array();
    for (const auto& [x, y] : t.inverses) inverses.push_back({x, y});
    return nlohmann::json{{"command", "table"},
                          {"m", t.modulus.value()},
                          {"style", "json"},
                          {"payload",
                           {{"a", t.generator_divisor},
                            {"elements", t.elements},
                            {"table", t.table},
                            {"identity", t.identity},
                            {"anti_identity", t.anti_identity},
                            {"inverses", inverses}}}};
}

// ---------------------------------------------------------------------------
// carmichael / omega
// ---------------------------------------------------------------------------

inline std::string render_carmichael_record(const CarmichaelRecord& r) {
    std::ostringstream os;
    os << "m: " << r.m << "\n";
    os << "factorization: " << factorization_text(r.factorization) << "\n";
    os << "omega: " << r.omega << "\n";
    if (r.ratio)
        os << "ratio: " << *r.ratio << "\n";
    else
        os << "ratio: -\n";
    os << "korselt: " << (r.korselt ? "true" : "false") << "\n";
    os << "fermat_verified: " << (r.fermat_verified ? "true" : "false") << "\n";
    os << "carmichael: " << (r.korselt ? "true" : "false") << "\n";
    return os.str();
}

inline nlohmann::json carmichael_record_json(const CarmichaelRecord& r) {
    nlohmann::json factors = nlohmann::json::array();
    for (const PrimePower& pp : r.factorization.factors)
        factors.push_back({pp.prime, pp.exponent});
    nlohmann::json payload{{"m", r.m},
                           {"factorization", factors},
                           {"factorization_text", factorization_text(r.factorization)},
                           {"omega", r.omega},
                           {"korselt", r.korselt},
                           {"fermat_verified", r.fermat_verified},
                           {"carmichael", r.korselt}};
    payload["ratio"] = r.ratio ? nlohmann::json(*r.ratio) : nlohmann::json(nullptr);
    return payload;
}

inline constexpr const char* kCarmichaelCsvHeader = "m,factorization,omega,ratio,korselt,fermat_verified";

inline std::string carmichael_record_csv(const CarmichaelRecord& r) {
    std::ostringstream os;
    os << r.m << "," << factorization_text(r.factorization) << "," << r.omega << ",";
    if (r.ratio) os << *r.ratio;
    os << "," << (r.korselt ? "true" : "false") << ","
       << (r.fermat_verified ? "true" : "false");
    return os.str();
}

inline std::string render_omega_report(const OmegaReport& r) {
    std::ostringstream os;
    os << "m: " << r.m << "\n";
    os << "omega: " << r.omega << "\n";
    os << "lambda: " << r.lambda << "\n";
    os << "phi: " << r.phi << "\n";
    os << "divides_phi: " << (r.divides_phi ? "true" : "false") << "\n";
    return os.str();
}

inline nlohmann::json omega_report_json(const OmegaReport& r) {
    return nlohmann::json{{"command", "omega"},
                          {"m", r.m},
                          {"style", "json"},
                          {"payload",
                           {{"omega", r.omega},
                            {"lambda", r.lambda},
                            {"phi", r.phi},
                            {"divides_phi", r.divides_phi}}}};
}

}  // namespace invlab
