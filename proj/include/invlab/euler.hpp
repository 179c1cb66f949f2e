#pragma once

// Euler totient, the generalized totient theorem (a^phi(m) lands on the
// idempotent picked out by the prime-power components a shares with m,
// whether or not a is coprime to m), and the multiplicative structure of
// the multiples of a unitary divisor with an idempotent as identity.

#include <map>

#include "invlab/arithmetic.hpp"
#include "invlab/invariants.hpp"

namespace invlab {

namespace detail {

inline Natural euler_phi_of(const Factorization& f) {
    Natural phi = 1;
    for (const PrimePower& pp : f.factors)
        phi = checked_mul(phi, (pp.prime - 1) * checked_pow(pp.prime, pp.exponent - 1));
    return phi;
}

}  // namespace detail

/// Count of integers in [1, m] coprime to m; phi(1) = 1.
inline Natural euler_phi(Natural m) {
    if (m == 0) throw std::invalid_argument("euler_phi: m must be >= 1");
    return detail::euler_phi_of(factorize(m));
}

inline Natural euler_phi(Modulus m) { return euler_phi(m.value()); }

/// a^phi(m) mod m. Always an invariant of m; equals 1 when gcd(a, m) = 1.
inline Residue generalized_euler_residue(Residue a) {
    Residue r = mod_pow(a, euler_phi(a.modulus()));
    if (!is_invariant(r))
        throw std::logic_error("generalized_euler_residue: " + std::to_string(a.value()) +
                               "^phi is not an invariant mod " +
                               std::to_string(a.modulus().value()));
    return r;
}

/// The idempotent the generalized theorem predicts for a, computed without
/// exponentiation: 0 mod every prime-power component of m whose prime
/// divides a, 1 mod the rest. Support 1 (coprime a) yields 1; support m
/// (a = 0) yields 0.
inline Residue expected_idempotent(Residue a) {
    const Natural m = a.modulus().value();
    const Factorization f = factorize(m);
    const Natural phi = detail::euler_phi_of(f);
    std::vector<Congruence> system;
    system.reserve(f.factors.size());
    for (const PrimePower& pp : f.factors) {
        Natural component = pp.value();
        if (a.value() % pp.prime == 0) {
            // a^phi vanishes mod p^k only while phi covers the exponent.
            if (phi < pp.exponent)
                throw std::logic_error("expected_idempotent: phi(m) < component exponent");
            system.push_back(Congruence{0, component});
        } else {
            system.push_back(Congruence{1 % component, component});
        }
    }
    return Residue(crt_combine(system).value(), a.modulus());
}

/// Exhaustively confirms generalized_euler_residue(a) = expected_idempotent(a)
/// for every a in [0, m).
inline bool verify_generalization(Modulus m, Natural bound = kDefaultOracleBound) {
    if (m.value() > bound)
        throw OracleBoundError("verify_generalization: m = " + std::to_string(m.value()) +
                               " exceeds the scan bound " + std::to_string(bound));
    for (Natural a = 0; a < m.value(); ++a) {
        Residue r(a, m);
        if (generalized_euler_residue(r) != expected_idempotent(r)) return false;
    }
    return true;
}

/// Checks a^(s*phi(m) + 1) = a for a unitary divisor a of m (a | m with
/// gcd(a, m/a) = 1).
inline bool multiplier_exponent_check(Residue a, Natural s) {
    const Natural m = a.modulus().value();
    const Natural av = a.value();
    if (s < 1) throw std::invalid_argument("multiplier_exponent_check: s must be >= 1");
    if (av == 0 || m % av != 0 || gcd(av, m / av) != 1)
        throw std::invalid_argument("multiplier_exponent_check: " + std::to_string(av) +
                                    " is not a unitary divisor of " + std::to_string(m));
    Natural exponent = checked_add(checked_mul(s, euler_phi(m)), 1);
    return mod_pow(a, exponent) == a;
}

/// One row per unitary divisor d of m: the idempotent that every residue
/// with support d is sent to by the phi-th power map.
struct EulerClass {
    Natural support;
    Natural idempotent;
};

struct EulerClassification {
    Modulus modulus;
    Natural phi;
    std::vector<EulerClass> classes;  // ascending by support
};

inline EulerClassification euler_classification(Modulus m) {
    const Factorization f = factorize(m.value());
    const std::vector<Natural> components = f.component_values();
    const std::size_t w = components.size();
    EulerClassification out{m, detail::euler_phi_of(f), {}};
    out.classes.reserve(std::size_t(1) << w);
    for (std::size_t mask = 0; mask < (std::size_t(1) << w); ++mask) {
        Natural support = 1;
        std::vector<Congruence> system;
        system.reserve(w);
        for (std::size_t i = 0; i < w; ++i) {
            if ((mask >> i) & 1) {
                support = checked_mul(support, components[i]);
                system.push_back(Congruence{0, components[i]});
            } else {
                system.push_back(Congruence{1 % components[i], components[i]});
            }
        }
        out.classes.push_back(EulerClass{support, crt_combine(system).value()});
    }
    std::sort(out.classes.begin(), out.classes.end(),
              [](const EulerClass& x, const EulerClass& y) { return x.support < y.support; });
    return out;
}

/// Multiplication structure of the non-zero multiples of a unitary divisor
/// a of m: a group of order phi(m/a) whose identity is the invariant
/// divisible by a and whose anti-identity squares to the identity.
struct SubgroupTable {
    Modulus modulus;
    Natural generator_divisor;
    std::vector<Natural> elements;                // ascending
    std::vector<std::vector<Natural>> table;      // table[i][j] = elements[i]*elements[j] mod m
    Natural identity;
    Natural anti_identity;
    std::map<Natural, Natural> inverses;
};

/// Guard on the table size; phi(m/a) elements mean phi^2 products.
inline constexpr Natural kMaxSubgroupElements = 1024;

inline SubgroupTable subgroup_table(Modulus m, Natural a) {
    const Natural mv = m.value();
    if (a <= 1 || a >= mv || mv % a != 0)
        throw std::invalid_argument("subgroup_table: a must be a divisor of m with 1 < a < m");
    const Natural b = mv / a;
    if (gcd(a, b) != 1)
        throw std::invalid_argument("subgroup_table: a and m/a must be coprime (gcd " +
                                    std::to_string(gcd(a, b)) + ")");

    SubgroupTable out{m, a, {}, {}, 0, 0, {}};
    for (Natural k = 1; k < b; ++k)
        if (gcd(k, b) == 1) out.elements.push_back(a * k);  // a*k < m, already canonical
    if (out.elements.size() > kMaxSubgroupElements)
        throw OracleBoundError("subgroup_table: " + std::to_string(out.elements.size()) +
                               " elements exceed the table bound " +
                               std::to_string(kMaxSubgroupElements));

    const std::size_t n = out.elements.size();
    out.table.assign(n, std::vector<Natural>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Natural product = mod_mul(out.elements[i], out.elements[j], mv);
            if (!std::binary_search(out.elements.begin(), out.elements.end(), product))
                throw std::logic_error("subgroup_table: product escapes the element set");
            out.table[i][j] = product;
        }
    }

    bool identity_found = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (!is_invariant(out.elements[i], mv)) continue;
        if (identity_found) throw std::logic_error("subgroup_table: identity is not unique");
        identity_found = true;
        out.identity = out.elements[i];
        for (std::size_t j = 0; j < n; ++j)
            if (out.table[i][j] != out.elements[j])
                throw std::logic_error("subgroup_table: identity row is not the identity map");
    }
    if (!identity_found) throw std::logic_error("subgroup_table: no invariant among elements");

    out.anti_identity = (mv - out.identity) % mv;
    if (!std::binary_search(out.elements.begin(), out.elements.end(), out.anti_identity) ||
        mod_mul(out.anti_identity, out.anti_identity, mv) != out.identity)
        throw std::logic_error("subgroup_table: anti-identity does not square to the identity");

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (out.table[i][j] != out.identity) continue;
            auto [it, inserted] = out.inverses.emplace(out.elements[i], out.elements[j]);
            if (!inserted)
                throw std::logic_error("subgroup_table: inverse is not unique for " +
                                       std::to_string(out.elements[i]));
        }
    }
    if (out.inverses.size() != n)
        throw std::logic_error("subgroup_table: some element has no inverse");
    return out;
}

}  // namespace invlab
