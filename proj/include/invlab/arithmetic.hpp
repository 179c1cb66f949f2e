#pragma once

// Exact integer and modular arithmetic on 64-bit naturals.
//
// Everything here is overflow-safe: intermediate products in modular
// operations go through 128-bit arithmetic, and plain products that could
// leave the 64-bit range throw instead of wrapping.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace invlab {

using Natural = std::uint64_t;
using WideSigned = __int128;
using WideUnsigned = unsigned __int128;

/// Default ceiling for exhaustive scans (brute-force enumeration,
/// certificate search, range sweeps). Overridable per call.
inline constexpr Natural kDefaultOracleBound = 1'000'000;

/// Thrown when an exhaustive operation is asked to scan past its bound.
class OracleBoundError : public std::runtime_error {
public:
    explicit OracleBoundError(const std::string& what) : std::runtime_error(what) {}
};

inline Natural checked_add(Natural a, Natural b) {
    Natural r = a + b;
    if (r < a)
        throw std::overflow_error("integer addition exceeds 64-bit range");
    return r;
}

inline Natural checked_mul(Natural a, Natural b) {
    WideUnsigned r = WideUnsigned(a) * b;
    if (r > WideUnsigned(UINT64_MAX))
        throw std::overflow_error("integer product exceeds 64-bit range");
    return Natural(r);
}

inline Natural checked_pow(Natural base, Natural exp) {
    Natural r = 1;
    while (exp > 0) {
        if (exp & 1) r = checked_mul(r, base);
        exp >>= 1;
        if (exp > 0) base = checked_mul(base, base);
    }
    return r;
}

/// gcd(x, 0) = x, gcd(0, 0) = 0.
inline Natural gcd(Natural x, Natural y) {
    while (y != 0) {
        Natural t = x % y;
        x = y;
        y = t;
    }
    return x;
}

inline Natural lcm(Natural x, Natural y) {
    if (x == 0 || y == 0) return 0;
    return checked_mul(x / gcd(x, y), y);
}

/// Bezout certificate: u*x + v*y = g = gcd(x, y).
/// Coefficients are 128-bit so the identity holds exactly for any
/// 64-bit inputs.
struct Bezout {
    Natural g;
    WideSigned u;
    WideSigned v;
};

inline Bezout extended_gcd(Natural x, Natural y) {
    if (x == 0 && y == 0)
        throw std::invalid_argument("extended_gcd: both inputs are zero");
    WideSigned old_r = WideSigned(x), r = WideSigned(y);
    WideSigned old_u = 1, u = 0;
    WideSigned old_v = 0, v = 1;
    while (r != 0) {
        WideSigned q = old_r / r;
        WideSigned t;
        t = old_r - q * r; old_r = r; r = t;
        t = old_u - q * u; old_u = u; u = t;
        t = old_v - q * v; old_v = v; v = t;
    }
    return Bezout{Natural(old_r), old_u, old_v};
}

/// Ambient modulus m >= 1. m = 1 is the one-element ring.
class Modulus {
public:
    explicit Modulus(Natural m) : m_(m) {
        if (m == 0) throw std::invalid_argument("modulus must be >= 1");
    }
    Natural value() const { return m_; }
    friend bool operator==(const Modulus&, const Modulus&) = default;

private:
    Natural m_;
};

/// Canonical residue in [0, m), tied to its modulus.
class Residue {
public:
    Residue(Natural value, Modulus modulus)
        : modulus_(modulus), value_(value % modulus.value()) {}
    Natural value() const { return value_; }
    Modulus modulus() const { return modulus_; }
    friend bool operator==(const Residue&, const Residue&) = default;

private:
    Modulus modulus_;
    Natural value_;
};

/// (a * b) mod m without overflow for any 64-bit operands.
inline Natural mod_mul(Natural a, Natural b, Natural m) {
    return Natural(WideUnsigned(a % m) * (b % m) % m);
}

inline Natural mod_pow(Natural base, Natural exp, Natural m) {
    if (m == 1) return 0;
    Natural result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mod_mul(result, base, m);
        base = mod_mul(base, base, m);
        exp >>= 1;
    }
    return result;
}

inline Residue mod_pow(Residue base, Natural exp) {
    return Residue(mod_pow(base.value(), exp, base.modulus().value()), base.modulus());
}

/// a^-1 mod m. Requires gcd(a, m) = 1; m = 1 yields 0.
inline Natural mod_inverse(Natural a, Natural m) {
    if (m == 0) throw std::invalid_argument("mod_inverse: modulus must be >= 1");
    if (m == 1) return 0;
    a %= m;
    Bezout bz = extended_gcd(a, m);
    if (bz.g != 1)
        throw std::invalid_argument("mod_inverse: " + std::to_string(a) + " is not a unit mod " +
                                    std::to_string(m));
    WideSigned u = bz.u % WideSigned(m);
    if (u < 0) u += WideSigned(m);
    return Natural(u);
}

struct Congruence {
    Natural remainder;
    Natural modulus;
};

/// Combines pairwise-coprime congruences into the unique residue mod the
/// product of the moduli. The empty list yields 0 mod 1.
inline Residue crt_combine(const std::vector<Congruence>& congruences) {
    for (const Congruence& c : congruences) {
        if (c.modulus == 0)
            throw std::invalid_argument("crt_combine: modulus must be >= 1");
        if (c.remainder >= c.modulus)
            throw std::invalid_argument("crt_combine: remainder " + std::to_string(c.remainder) +
                                        " not canonical mod " + std::to_string(c.modulus));
    }
    for (std::size_t i = 0; i < congruences.size(); ++i) {
        for (std::size_t j = i + 1; j < congruences.size(); ++j) {
            Natural g = gcd(congruences[i].modulus, congruences[j].modulus);
            if (g != 1)
                throw std::invalid_argument(
                    "crt_combine: moduli " + std::to_string(congruences[i].modulus) + " and " +
                    std::to_string(congruences[j].modulus) + " are not coprime (gcd " +
                    std::to_string(g) + ")");
        }
    }

    Natural product = 1;
    for (const Congruence& c : congruences) product = checked_mul(product, c.modulus);

    Natural x = 0;
    Natural combined = 1;
    for (const Congruence& c : congruences) {
        // Lift x from mod `combined` to mod `combined * c.modulus`.
        Natural want = (c.remainder + c.modulus - x % c.modulus) % c.modulus;
        Natural step = mod_mul(want, mod_inverse(combined % c.modulus, c.modulus), c.modulus);
        x += Natural(WideUnsigned(combined) * step);  // < combined * c.modulus <= product
        combined *= c.modulus;
    }
    return Residue(x, Modulus(product));
}

struct PrimePower {
    Natural prime;
    Natural exponent;

    Natural value() const { return checked_pow(prime, exponent); }
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Complete prime factorization, sorted ascending by prime. n = 1 is the
/// empty list.
struct Factorization {
    std::vector<PrimePower> factors;

    Natural product() const {
        Natural n = 1;
        for (const PrimePower& f : factors) n = checked_mul(n, f.value());
        return n;
    }
    std::size_t distinct_prime_count() const { return factors.size(); }
    bool squarefree() const {
        return std::all_of(factors.begin(), factors.end(),
                           [](const PrimePower& f) { return f.exponent == 1; });
    }
    /// Values p^k of the prime-power components, ascending by prime.
    std::vector<Natural> component_values() const {
        std::vector<Natural> out;
        out.reserve(factors.size());
        for (const PrimePower& f : factors) out.push_back(f.value());
        return out;
    }
    friend bool operator==(const Factorization&, const Factorization&) = default;
};

namespace detail {

inline bool miller_rabin_composite(Natural n, Natural a, Natural d, int s) {
    Natural x = mod_pow(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int r = 1; r < s; ++r) {
        x = mod_mul(x, x, n);
        if (x == n - 1) return false;
    }
    return true;
}

}  // namespace detail

/// Deterministic over the full 64-bit range (fixed witness set).
inline bool is_prime(Natural n) {
    if (n < 2) return false;
    for (Natural p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    int s = 0;
    Natural d = n - 1;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (Natural a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
        if (detail::miller_rabin_composite(n, a, d, s)) return false;
    return true;
}

namespace detail {

inline constexpr Natural kTrialDivisionLimit = 10'000;

/// One Brent-cycle Pollard rho pass with polynomial x^2 + c. Returns a
/// factor of n, possibly n itself on a degenerate cycle.
inline Natural pollard_rho_pass(Natural n, Natural c) {
    const Natural batch = 128;
    Natural y = 2, r = 1, q = 1, g = 1;
    Natural x = 0, ys = 0;
    do {
        x = y;
        for (Natural i = 0; i < r; ++i) y = (mod_mul(y, y, n) + c) % n;
        for (Natural k = 0; k < r && g == 1; k += batch) {
            ys = y;
            Natural lim = std::min(batch, r - k);
            for (Natural i = 0; i < lim; ++i) {
                y = (mod_mul(y, y, n) + c) % n;
                q = mod_mul(q, x > y ? x - y : y - x, n);
            }
            g = gcd(q, n);
        }
        r *= 2;
    } while (g == 1);
    if (g == n) {
        // The batched gcd jumped past the factor; replay one step at a time.
        do {
            ys = (mod_mul(ys, ys, n) + c) % n;
            g = gcd(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g;
}

/// Deterministic Pollard rho: tries c = 1, 2, ... until a pass splits n.
/// Expects n odd, composite, with no factor below the trial division limit.
inline Natural pollard_rho(Natural n) {
    for (Natural c = 1;; ++c) {
        Natural g = pollard_rho_pass(n, c);
        if (g != n) return g;
    }
}

}  // namespace detail

/// Trial division below 10^4, then Pollard rho on the cofactors with
/// deterministic primality checks. n >= 1; n = 1 yields the empty list.
inline Factorization factorize(Natural n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be >= 1");
    Factorization result;
    auto push = [&result](Natural p, Natural e) {
        result.factors.push_back(PrimePower{p, e});
    };

    for (Natural p : {Natural(2), Natural(3)}) {
        if (n % p == 0) {
            Natural e = 0;
            while (n % p == 0) { n /= p; ++e; }
            push(p, e);
        }
    }
    for (Natural d = 5; d <= detail::kTrialDivisionLimit && d * d <= n; d += 6) {
        for (Natural p : {d, d + 2}) {
            if (n % p == 0) {
                Natural e = 0;
                while (n % p == 0) { n /= p; ++e; }
                push(p, e);
            }
        }
    }

    if (n > 1) {
        std::vector<Natural> pending{n};
        std::vector<Natural> primes;
        while (!pending.empty()) {
            Natural t = pending.back();
            pending.pop_back();
            if (is_prime(t)) {
                primes.push_back(t);
                continue;
            }
            Natural d = detail::pollard_rho(t);
            pending.push_back(d);
            pending.push_back(t / d);
        }
        std::sort(primes.begin(), primes.end());
        for (std::size_t i = 0; i < primes.size();) {
            std::size_t j = i;
            while (j < primes.size() && primes[j] == primes[i]) ++j;
            push(primes[i], j - i);
            i = j;
        }
    }

    std::sort(result.factors.begin(), result.factors.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
    return result;
}

}  // namespace invlab
