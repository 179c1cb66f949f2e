#pragma once

// The Omega exponent lcm((p-1)p^(k-1), ...) over the prime-power
// components of m, its comparison against the classical Carmichael
// function, and the Carmichael-number regularity it explains: for every
// Carmichael number, (m-1)/Omega(m) is an integer.
//
// Omega is applied verbatim to every component, including powers of 2,
// where the minimal exponent for 2^k (k >= 3) is half as large; the
// lambda field of OmegaReport quantifies that gap rather than hiding it.

#include <functional>
#include <optional>

#include "invlab/arithmetic.hpp"
#include "invlab/euler.hpp"

namespace invlab {

/// Exhaustive Fermat verification is capped here by default; larger m fall
/// back to a fixed deterministic sample of bases.
inline constexpr Natural kDefaultFermatBound = 100'000;

namespace detail {

inline Natural omega_of(const Factorization& f) {
    Natural result = 1;
    for (const PrimePower& pp : f.factors)
        result = lcm(result, (pp.prime - 1) * checked_pow(pp.prime, pp.exponent - 1));
    return result;
}

inline Natural carmichael_lambda_of(const Factorization& f) {
    Natural result = 1;
    for (const PrimePower& pp : f.factors) {
        Natural component = (pp.prime == 2 && pp.exponent >= 3)
                                ? checked_pow(2, pp.exponent - 2)
                                : (pp.prime - 1) * checked_pow(pp.prime, pp.exponent - 1);
        result = lcm(result, component);
    }
    return result;
}

inline bool korselt_of(Natural m, const Factorization& f) {
    bool composite = !(f.factors.size() == 1 && f.factors[0].exponent == 1);
    if (!composite || !f.squarefree()) return false;
    for (const PrimePower& pp : f.factors)
        if ((m - 1) % (pp.prime - 1) != 0) return false;
    return true;
}

inline Natural splitmix64(Natural& state) {
    state += 0x9E3779B97F4A7C15ULL;
    Natural z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace detail

/// lcm of (p-1)*p^(k-1) over the prime-power components of m.
inline Natural omega(Natural m) {
    if (m < 2) throw std::invalid_argument("omega: m must be >= 2");
    return detail::omega_of(factorize(m));
}

/// The classical minimal universal exponent: as omega, except 2^k with
/// k >= 3 contributes 2^(k-2). lambda(1) = 1.
inline Natural carmichael_lambda(Natural m) {
    if (m == 0) throw std::invalid_argument("carmichael_lambda: m must be >= 1");
    return detail::carmichael_lambda_of(factorize(m));
}

/// True iff m is composite, squarefree, and (p-1) | (m-1) for every prime
/// divisor p of m.
inline bool korselt_check(Natural m) {
    if (m < 2) throw std::invalid_argument("korselt_check: m must be >= 2");
    return detail::korselt_of(m, factorize(m));
}

struct OmegaReport {
    Natural m;
    Natural omega;
    Natural lambda;
    Natural phi;
    bool divides_phi;  // omega | phi
};

inline OmegaReport omega_report(Natural m) {
    if (m < 2) throw std::invalid_argument("omega_report: m must be >= 2");
    Factorization f = factorize(m);
    Natural om = detail::omega_of(f);
    Natural phi = detail::euler_phi_of(f);
    return OmegaReport{m, om, detail::carmichael_lambda_of(f), phi, phi % om == 0};
}

/// Whether a^(m-1) = 1 (mod m) for all a coprime to m. Exhaustive for
/// m <= exhaustive_bound, otherwise checked on a fixed deterministic
/// sample of 64 coprime bases.
inline bool fermat_property(Natural m, Natural exhaustive_bound = kDefaultFermatBound) {
    if (m < 2) throw std::invalid_argument("fermat_property: m must be >= 2");
    if (m <= exhaustive_bound || m < 8) {
        for (Natural a = 2; a < m; ++a)
            if (gcd(a, m) == 1 && mod_pow(a, m - 1, m) != 1) return false;
        return true;
    }
    Natural state = 0x5EED5EED5EED5EEDULL;
    for (int tested = 0; tested < 64;) {
        Natural a = 2 + detail::splitmix64(state) % (m - 3);
        if (gcd(a, m) != 1) continue;
        if (mod_pow(a, m - 1, m) != 1) return false;
        ++tested;
    }
    return true;
}

struct CarmichaelRecord {
    Natural m;
    Factorization factorization;
    Natural omega;
    std::optional<Natural> ratio;  // (m-1)/omega when integral
    bool korselt;
    bool fermat_verified;
};

/// Full record for an odd composite m: the (m-1)/Omega integrality test,
/// Korselt's criterion, and the Fermat property. The integrality test and
/// the Fermat property must agree whenever the Fermat check was
/// exhaustive; disagreement is reported as an internal error.
inline CarmichaelRecord hypothesis_check(Natural m,
                                         Natural fermat_bound = kDefaultFermatBound) {
    if (m < 3 || m % 2 == 0)
        throw std::invalid_argument("hypothesis_check: m must be odd and >= 3");
    Factorization f = factorize(m);
    if (f.factors.size() == 1 && f.factors[0].exponent == 1)
        throw std::invalid_argument("hypothesis_check: m must be composite");

    Natural om = detail::omega_of(f);
    std::optional<Natural> ratio;
    if ((m - 1) % om == 0) ratio = (m - 1) / om;
    bool korselt = detail::korselt_of(m, f);
    bool fermat = fermat_property(m, fermat_bound);
    if (m <= fermat_bound && ratio.has_value() != fermat)
        throw std::logic_error("hypothesis_check: integrality of (m-1)/omega disagrees with "
                               "the exhaustive Fermat property for m = " + std::to_string(m));
    return CarmichaelRecord{m, std::move(f), om, ratio, korselt, fermat};
}

/// Korselt-driven scan of [lo, hi]; emits one full record per Carmichael
/// number, ascending.
inline void scan_carmichael(Natural lo, Natural hi, Natural bound,
                            const std::function<void(const CarmichaelRecord&)>& sink) {
    if (lo > hi) throw std::invalid_argument("scan_carmichael: lo must be <= hi");
    if (hi > bound)
        throw OracleBoundError("scan_carmichael: hi = " + std::to_string(hi) +
                               " exceeds the scan bound " + std::to_string(bound));
    for (Natural m = std::max<Natural>(lo, 2); m <= hi && m != 0; ++m)
        if (korselt_check(m)) sink(hypothesis_check(m));
}

inline std::vector<CarmichaelRecord> scan_carmichael(Natural lo, Natural hi,
                                                     Natural bound = kDefaultOracleBound) {
    std::vector<CarmichaelRecord> out;
    scan_carmichael(lo, hi, bound, [&out](const CarmichaelRecord& r) { out.push_back(r); });
    return out;
}

}  // namespace invlab
