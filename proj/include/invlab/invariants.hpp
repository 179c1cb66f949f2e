#pragma once

// Idempotent residues ("invariants") mod m: enumeration, the complement
// duality with anti-invariants, consecutive (anti, invariant) tuples, and
// compositeness certification with factor extraction.
//
// An invariant is I with I^2 = I (mod m); an anti-invariant is A with
// A^2 = m - A (mod m). Every anti-invariant is m - I for some invariant I,
// and (A, A+1) is always an (anti-invariant, invariant) pair. Non-trivial
// invariants (anything besides 0 and 1) exist exactly when m has two or
// more distinct prime factors, and each one splits m into coprime factors.

#include <optional>
#include <utility>

#include "invlab/arithmetic.hpp"

namespace invlab {

inline bool is_invariant(Natural x, Natural m) {
    return mod_mul(x, x, m) == x % m;
}

inline bool is_invariant(Residue x) { return is_invariant(x.value(), x.modulus().value()); }

/// A^2 = -A (mod m); A = 0 qualifies.
inline bool is_anti_invariant(Natural x, Natural m) {
    x %= m;
    return mod_mul(x, x, m) == (m - x) % m;
}

inline bool is_anti_invariant(Residue x) {
    return is_anti_invariant(x.value(), x.modulus().value());
}

/// The complement (m - i) mod m of an invariant; an involution between the
/// invariant and anti-invariant sets.
inline Residue anti_of(Residue i) {
    if (!is_invariant(i))
        throw std::invalid_argument("anti_of: " + std::to_string(i.value()) +
                                    " is not an invariant mod " +
                                    std::to_string(i.modulus().value()));
    Natural m = i.modulus().value();
    return Residue((m - i.value()) % m, i.modulus());
}

/// Full idempotent census of a modulus. All residues are canonical in
/// [0, m); tuples are ordered by their invariant component ascending.
struct InvariantReport {
    Modulus modulus;
    std::vector<Natural> invariants;
    std::vector<Natural> anti_invariants;
    std::vector<std::pair<Natural, Natural>> tuples;  // (anti, invariant)
    std::vector<Natural> trivial;
    std::vector<Natural> nontrivial;
};

namespace detail {

/// Assembles the report from a sorted invariant list, re-deriving and
/// cross-checking every dependent field.
inline InvariantReport make_invariant_report(Modulus modulus, std::vector<Natural> invariants) {
    const Natural m = modulus.value();
    std::sort(invariants.begin(), invariants.end());

    InvariantReport report{modulus, std::move(invariants), {}, {}, {}, {}};
    for (Natural i : report.invariants) {
        if (!is_invariant(i, m))
            throw std::logic_error("invariant report: " + std::to_string(i) +
                                   " fails the idempotent condition mod " + std::to_string(m));
        report.anti_invariants.push_back((m - i) % m);
        report.tuples.emplace_back((i + m - 1) % m, i);
        if (i == 0 || i == 1)
            report.trivial.push_back(i);
        else
            report.nontrivial.push_back(i);
    }
    std::sort(report.anti_invariants.begin(), report.anti_invariants.end());
    for (Natural a : report.anti_invariants)
        if (!is_anti_invariant(a, m))
            throw std::logic_error("invariant report: complement " + std::to_string(a) +
                                   " fails the anti-invariant condition mod " + std::to_string(m));
    return report;
}

}  // namespace detail

/// Direct scan of [0, m) against both defining conditions. Independent of
/// the factorization-based construction; intended as its oracle.
inline InvariantReport enumerate_invariants_bruteforce(Modulus m,
                                                       Natural bound = kDefaultOracleBound) {
    if (m.value() > bound)
        throw OracleBoundError("enumerate_invariants_bruteforce: m = " +
                               std::to_string(m.value()) + " exceeds the scan bound " +
                               std::to_string(bound) +
                               "; use invariants_from_factorization instead");
    std::vector<Natural> invariants;
    std::vector<Natural> antis;
    for (Natural x = 0; x < m.value(); ++x) {
        if (is_invariant(x, m.value())) invariants.push_back(x);
        if (is_anti_invariant(x, m.value())) antis.push_back(x);
    }
    InvariantReport report = detail::make_invariant_report(m, std::move(invariants));
    if (report.anti_invariants != antis)
        throw std::logic_error("invariant scan: anti-invariant set does not match the "
                               "complements of the invariant set");
    return report;
}

/// CRT construction: one invariant per subset of the prime-power
/// components of m (0 on the subset, 1 elsewhere), 2^w in total.
inline InvariantReport invariants_from_factorization(Modulus m) {
    const std::vector<Natural> components = factorize(m.value()).component_values();
    const std::size_t w = components.size();
    std::vector<Natural> invariants;
    invariants.reserve(std::size_t(1) << w);
    for (std::size_t mask = 0; mask < (std::size_t(1) << w); ++mask) {
        std::vector<Congruence> system;
        system.reserve(w);
        for (std::size_t i = 0; i < w; ++i)
            system.push_back(Congruence{(mask >> i) & 1 ? 0 : 1 % components[i], components[i]});
        invariants.push_back(crt_combine(system).value());
    }
    return detail::make_invariant_report(m, std::move(invariants));
}

/// All (anti-invariant, invariant) consecutive pairs of m, ordered by the
/// invariant component ascending.
inline std::vector<std::pair<Natural, Natural>> tuples_of(Modulus m) {
    return invariants_from_factorization(m).tuples;
}

/// Checks I^s = I for every s in [1, s_max].
inline bool power_stability_check(Residue i, Natural s_max) {
    if (!is_invariant(i))
        throw std::invalid_argument("power_stability_check: not an invariant");
    if (s_max < 1) throw std::invalid_argument("power_stability_check: s_max must be >= 1");
    const Natural m = i.modulus().value();
    Natural power = i.value() % m;
    for (Natural s = 1; s <= s_max; ++s) {
        if (power != i.value() % m) return false;
        power = mod_mul(power, i.value(), m);
    }
    return true;
}

/// A non-trivial invariant together with the coprime factor pair it
/// reveals: witness = 0 (mod factor_a), witness = 1 (mod factor_b),
/// factor_a * factor_b = m.
struct CompositeCertificate {
    Modulus modulus;
    Natural witness;
    Natural factor_a;
    Natural factor_b;
};

/// Extracts the factor pair certified by a non-trivial invariant. Both
/// gcd routes are computed and cross-checked.
inline CompositeCertificate certify_composite_from_invariant(Residue witness) {
    const Natural m = witness.modulus().value();
    const Natural w = witness.value();
    if (!is_invariant(witness))
        throw std::invalid_argument("certify_composite_from_invariant: " + std::to_string(w) +
                                    " is not an invariant mod " + std::to_string(m));
    if (w == 0 || w == 1)
        throw std::invalid_argument(
            "certify_composite_from_invariant: trivial invariant carries no information");

    Natural factor_a = gcd(w, m);
    Natural factor_b = m / factor_a;
    if (factor_b != gcd(w - 1, m))
        throw std::logic_error("certificate: complementary factor " + std::to_string(factor_b) +
                               " disagrees with gcd(witness - 1, m)");
    if (factor_a <= 1 || factor_b <= 1 || gcd(factor_a, factor_b) != 1 ||
        w % factor_a != 0 || w % factor_b != 1)
        throw std::logic_error("certificate: invariant " + std::to_string(w) +
                               " produced an invalid factor split of " + std::to_string(m));
    return CompositeCertificate{witness.modulus(), w, factor_a, factor_b};
}

/// Searches [2, m-1) for a non-trivial invariant, ascending with early
/// exit; the certificate (when one exists) is built from the smallest. An
/// empty result means prime or prime power: the criterion cannot separate
/// the two, since both have only trivial invariants. A demonstration of
/// the criterion, not a fast primality test.
inline std::optional<CompositeCertificate> primality_by_invariants(
    Modulus m, Natural bound = kDefaultOracleBound) {
    if (m.value() < 2)
        throw std::invalid_argument("primality_by_invariants: m must be >= 2");
    if (m.value() > bound)
        throw OracleBoundError("primality_by_invariants: m = " + std::to_string(m.value()) +
                               " exceeds the scan bound " + std::to_string(bound));
    for (Natural x = 2; x + 1 < m.value(); ++x)
        if (is_invariant(x, m.value()))
            return certify_composite_from_invariant(Residue(x, m));
    return std::nullopt;
}

}  // namespace invlab
