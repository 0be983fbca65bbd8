#pragma once

// Polynomials over GF(2) packed into a machine word, with the quotient-ring
// helpers used by the irreducibility and order tests.

#include <bit>
#include <cctype>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <utility>

#include "chaosbox/error.hpp"

namespace chaosbox {

/// Degree reported for the zero polynomial. Never used in arithmetic.
inline constexpr int degree_neg_infinity = std::numeric_limits<int>::min();

/// Bit k holds the coefficient of x^k.
struct BinaryPoly {
    std::uint64_t bits = 0;

    constexpr BinaryPoly() = default;
    constexpr explicit BinaryPoly(std::uint64_t b) : bits(b) {}

    constexpr bool is_zero() const noexcept { return bits == 0; }

    constexpr int degree() const noexcept {
        return bits == 0 ? degree_neg_infinity : 63 - std::countl_zero(bits);
    }

    constexpr bool coefficient(int k) const noexcept { return ((bits >> k) & 1U) != 0; }

    friend constexpr bool operator==(BinaryPoly, BinaryPoly) = default;
    friend constexpr auto operator<=>(BinaryPoly a, BinaryPoly b) { return a.bits <=> b.bits; }

    friend constexpr BinaryPoly operator+(BinaryPoly a, BinaryPoly b) { return BinaryPoly{a.bits ^ b.bits}; }
};

namespace poly {

inline constexpr BinaryPoly x{0b10};
inline constexpr BinaryPoly one{0b1};

/// Carry-less product. Caller guarantees deg(a) + deg(b) < 64.
constexpr BinaryPoly mul(BinaryPoly a, BinaryPoly b) noexcept {
    std::uint64_t r = 0;
    std::uint64_t sa = a.bits;
    for (std::uint64_t sb = b.bits; sb != 0; sb >>= 1, sa <<= 1) {
        if (sb & 1U) r ^= sa;
    }
    return BinaryPoly{r};
}

/// Quotient and remainder of a / b.
inline std::pair<BinaryPoly, BinaryPoly> divmod(BinaryPoly a, BinaryPoly b) {
    if (b.is_zero()) throw error(errc::domain, "polynomial division by zero");
    const int db = b.degree();
    std::uint64_t q = 0;
    std::uint64_t r = a.bits;
    while (r != 0) {
        const int dr = 63 - std::countl_zero(r);
        if (dr < db) break;
        q |= std::uint64_t{1} << (dr - db);
        r ^= b.bits << (dr - db);
    }
    return {BinaryPoly{q}, BinaryPoly{r}};
}

inline BinaryPoly mod(BinaryPoly a, BinaryPoly m) { return divmod(a, m).second; }

inline BinaryPoly gcd(BinaryPoly a, BinaryPoly b) {
    while (!b.is_zero()) {
        a = mod(a, b);
        std::swap(a, b);
    }
    return a;
}

/// a*b mod m for operands already reduced below deg(m) <= 32.
inline BinaryPoly mulmod(BinaryPoly a, BinaryPoly b, BinaryPoly m) { return mod(mul(a, b), m); }

/// base^e mod m by square-and-multiply in GF(2)[x]/(m); m need not be irreducible.
inline BinaryPoly powmod(BinaryPoly base, std::uint64_t e, BinaryPoly m) {
    BinaryPoly result = mod(one, m);
    base = mod(base, m);
    for (; e != 0; e >>= 1) {
        if (e & 1U) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
    }
    return result;
}

/// x^(2^k) mod m via k successive squarings.
inline BinaryPoly x_pow_two_pow(unsigned k, BinaryPoly m) {
    BinaryPoly r = mod(x, m);
    for (unsigned i = 0; i < k; ++i) r = mulmod(r, r, m);
    return r;
}

inline std::string to_hex(BinaryPoly p) {
    static constexpr char digits[] = "0123456789ABCDEF";
    if (p.is_zero()) return "0x0";
    std::string s;
    for (std::uint64_t b = p.bits; b != 0; b >>= 4) s.insert(s.begin(), digits[b & 0xF]);
    return "0x" + s;
}

/// Human form, highest power first: "x^8+x^4+x^3+x^2+1".
inline std::string to_monomials(BinaryPoly p) {
    if (p.is_zero()) return "0";
    std::string s;
    for (int k = p.degree(); k >= 0; --k) {
        if (!p.coefficient(k)) continue;
        if (!s.empty()) s += '+';
        if (k == 0) s += '1';
        else if (k == 1) s += 'x';
        else s += "x^" + std::to_string(k);
    }
    return s;
}

namespace detail {

inline BinaryPoly parse_hex(std::string_view text, std::string_view original) {
    if (text.empty() || text.size() > 16) throw error(errc::format, "bad hex polynomial '" + std::string(original) + "'");
    std::uint64_t v = 0;
    for (char c : text) {
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
        else throw error(errc::format, "bad hex polynomial '" + std::string(original) + "'");
        v = (v << 4) | static_cast<std::uint64_t>(d);
    }
    return BinaryPoly{v};
}

inline BinaryPoly parse_terms(std::string_view text, std::string_view original) {
    auto fail = [&] { return error(errc::format, "bad polynomial '" + std::string(original) + "'"); };
    std::uint64_t v = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        int power;
        if (text[i] == 'x' || text[i] == 'X') {
            ++i;
            power = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                const std::size_t start = i;
                power = 0;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                    power = power * 10 + (text[i] - '0');
                    if (power > 63) throw fail();
                    ++i;
                }
                if (i == start) throw fail();
            }
        } else if (text[i] == '1') {
            ++i;
            power = 0;
        } else if (text[i] == '0' && text.size() == 1) {
            return BinaryPoly{};
        } else {
            throw fail();
        }
        // Repeated monomials cancel, as they would under GF(2) addition.
        v ^= std::uint64_t{1} << power;
        if (i < text.size()) {
            if (text[i] != '+') throw fail();
            ++i;
            if (i == text.size()) throw fail();
        }
    }
    return BinaryPoly{v};
}

} // namespace detail

/// Accepts "0x11D" or "x^8+x^4+x^3+x^2+1" (whitespace ignored).
inline BinaryPoly parse(std::string_view text) {
    std::string compact;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
    }
    if (compact.empty()) throw error(errc::format, "empty polynomial");
    std::string_view s = compact;
    if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) return detail::parse_hex(s.substr(2), text);
    return detail::parse_terms(s, text);
}

} // namespace poly
} // namespace chaosbox
