#pragma once

// Irreducibility and primitivity of polynomials over GF(2), plus the
// closed-form census counts they must agree with.

#include <cstdint>
#include <optional>
#include <vector>

#include "chaosbox/binary_poly.hpp"
#include "chaosbox/error.hpp"

namespace chaosbox {

namespace numtheory {

/// Distinct prime divisors in ascending order.
inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline int mobius(std::uint64_t n) {
    int sign = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        sign = -sign;
    }
    return n > 1 ? -sign : sign;
}

inline std::uint64_t totient(std::uint64_t n) {
    std::uint64_t result = n;
    for (std::uint64_t p : prime_divisors(n)) result = result / p * (p - 1);
    return result;
}

inline std::uint64_t ipow(std::uint64_t base, unsigned e) {
    std::uint64_t r = 1;
    while (e-- > 0) r *= base;
    return r;
}

} // namespace numtheory

/// Rabin's test: for every prime p | n, gcd(f, x^(2^(n/p)) - x mod f) = 1,
/// and f divides x^(2^n) - x.
inline bool is_irreducible_rabin(BinaryPoly f) {
    const int n = f.degree();
    if (n < 1) throw error(errc::domain, "irreducibility test needs degree >= 1, got the constant " + poly::to_monomials(f));
    if (n > 32) throw error(errc::domain, "irreducibility test supports degree <= 32");
    const BinaryPoly x_mod_f = poly::mod(poly::x, f);
    for (std::uint64_t p : numtheory::prime_divisors(static_cast<std::uint64_t>(n))) {
        const auto ni = static_cast<unsigned>(static_cast<std::uint64_t>(n) / p);
        const BinaryPoly h = poly::x_pow_two_pow(ni, f) + x_mod_f;
        if (poly::gcd(f, h) != poly::one) return false;
    }
    return poly::x_pow_two_pow(static_cast<unsigned>(n), f) == x_mod_f;
}

/// Reference answer by trial division with every polynomial of degree 1..n/2.
inline bool is_irreducible_trial(BinaryPoly f) {
    const int n = f.degree();
    if (n < 1) throw error(errc::domain, "irreducibility test needs degree >= 1, got the constant " + poly::to_monomials(f));
    if (n > 16) throw error(errc::domain, "trial division supports degree <= 16");
    const std::uint64_t limit = std::uint64_t{1} << (n / 2 + 1);
    for (std::uint64_t g = 2; g < limit; ++g) {
        if (poly::mod(f, BinaryPoly{g}).is_zero()) return false;
    }
    return true;
}

/// Number of monic irreducible degree-n polynomials over GF(p): (1/n) sum_{d|n} mu(d) p^(n/d).
inline std::uint64_t count_irreducible(unsigned n, std::uint64_t p = 2) {
    if (n == 0) throw error(errc::domain, "degree must be positive");
    std::int64_t sum = 0;
    for (unsigned d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        sum += numtheory::mobius(d) * static_cast<std::int64_t>(numtheory::ipow(p, n / d));
    }
    return static_cast<std::uint64_t>(sum) / n;
}

/// Number of primitive degree-n polynomials over GF(q): phi(q^n - 1) / n.
inline std::uint64_t count_primitive(unsigned n, std::uint64_t q = 2) {
    if (n == 0) throw error(errc::domain, "degree must be positive");
    return numtheory::totient(numtheory::ipow(q, n) - 1) / n;
}

/// Order of x in GF(2)[x]/(f) for irreducible f with f(0) = 1.
inline std::uint64_t order_of_x(BinaryPoly f) {
    const int n = f.degree();
    if (n < 1 || !f.coefficient(0)) throw error(errc::domain, "x is not a unit modulo " + poly::to_monomials(f));
    const std::uint64_t group = (std::uint64_t{1} << n) - 1;
    if (poly::powmod(poly::x, group, f) != poly::one) {
        throw error(errc::not_irreducible, poly::to_monomials(f) + " is not irreducible");
    }
    std::uint64_t order = group;
    for (std::uint64_t p : numtheory::prime_divisors(group)) {
        while (order % p == 0 && poly::powmod(poly::x, order / p, f) == poly::one) order /= p;
    }
    return order;
}

struct PolyClassification {
    BinaryPoly poly;
    bool irreducible = false;
    bool primitive = false;
    std::optional<std::uint64_t> order; // present iff irreducible and x is a unit
};

inline PolyClassification classify(BinaryPoly f) {
    PolyClassification c{f, is_irreducible_rabin(f), false, std::nullopt};
    if (c.irreducible && f.coefficient(0)) {
        c.order = order_of_x(f);
        c.primitive = *c.order == (std::uint64_t{1} << f.degree()) - 1;
    }
    return c;
}

/// Every monic degree-n polynomial that can be irreducible, ascending by bit mask.
/// Candidates with zero constant term are skipped except the degree-1 polynomial x.
inline std::vector<PolyClassification> enumerate_classified(unsigned n) {
    if (n < 1 || n > 16) throw error(errc::domain, "degree must be in 1..16");
    std::vector<PolyClassification> out;
    const std::uint64_t top = std::uint64_t{1} << n;
    if (n == 1) out.push_back(classify(poly::x));
    for (std::uint64_t low = 1; low < top; low += 2) out.push_back(classify(BinaryPoly{top | low}));
    return out;
}

} // namespace chaosbox
