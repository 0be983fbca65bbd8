#pragma once

// Arithmetic in GF(2^n) = GF(2)[x]/(m(x)) for 1 <= n <= 16.
//
// Elements are plain unsigned words interpreted against an explicit FieldSpec;
// there is no global field state, so fields built from different reduction
// polynomials coexist freely. A FieldSpec is immutable after construction.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chaosbox/binary_poly.hpp"
#include "chaosbox/error.hpp"
#include "chaosbox/polyfind.hpp"

namespace chaosbox {

using gf_elem = std::uint32_t;

struct LogTables {
    std::vector<std::uint32_t> log;     // log[e] for e != 0; log[0] unused
    std::vector<gf_elem> antilog;       // antilog[k] = x^k, k in 0..2^n-2
};

/// Discrete log tables for the generator x. Throws not_primitive when the
/// powers of x repeat before covering all 2^n - 1 nonzero elements.
inline LogTables build_log_tables(BinaryPoly reduction) {
    const int n = reduction.degree();
    if (n < 1 || n > 16) throw error(errc::domain, "field degree must be in 1..16");
    const std::uint32_t size = std::uint32_t{1} << n;
    const std::uint32_t period = size - 1;
    LogTables t{std::vector<std::uint32_t>(size, 0), std::vector<gf_elem>(period, 0)};
    std::vector<bool> seen(size, false);
    std::uint64_t e = 1;
    for (std::uint32_t k = 0; k < period; ++k) {
        if (seen[e]) {
            throw error(errc::not_primitive, "generator does not span: x has order " + std::to_string(k) + " modulo " +
                                                 poly::to_monomials(reduction));
        }
        seen[e] = true;
        t.antilog[k] = static_cast<gf_elem>(e);
        t.log[e] = k;
        e <<= 1;
        if (e & size) e ^= reduction.bits;
    }
    if (e != 1) throw error(errc::not_primitive, "generator does not span modulo " + poly::to_monomials(reduction));
    return t;
}

class FieldSpec {
public:
    /// Validates that `reduction` is irreducible of degree 1..16; builds log
    /// tables when it is also primitive.
    explicit FieldSpec(BinaryPoly reduction) : reduction_(reduction), n_(reduction.degree()) {
        if (n_ < 1 || n_ > 16) {
            throw error(errc::domain, "field degree must be in 1..16, got polynomial " + poly::to_hex(reduction));
        }
        if (!is_irreducible_rabin(reduction)) {
            throw error(errc::not_irreducible, poly::to_monomials(reduction) + " is reducible over GF(2)");
        }
        primitive_ = classify(reduction).primitive;
        if (primitive_) tables_ = build_log_tables(reduction);
    }

    int degree() const noexcept { return n_; }
    std::uint32_t size() const noexcept { return std::uint32_t{1} << n_; }
    BinaryPoly reduction() const noexcept { return reduction_; }
    bool is_primitive() const noexcept { return primitive_; }

    /// Empty unless the reduction polynomial is primitive.
    std::span<const std::uint32_t> log_table() const noexcept { return tables_.log; }
    std::span<const gf_elem> antilog_table() const noexcept { return tables_.antilog; }

    gf_elem add(gf_elem a, gf_elem b) const {
        check(a);
        check(b);
        return a ^ b;
    }

    /// Table product when primitive, shift-and-reduce otherwise.
    gf_elem mul(gf_elem a, gf_elem b) const {
        check(a);
        check(b);
        if (!primitive_) return mul_unchecked_naive(a, b);
        if (a == 0 || b == 0) return 0;
        std::uint32_t k = tables_.log[a] + tables_.log[b];
        if (k >= size() - 1) k -= size() - 1;
        return tables_.antilog[k];
    }

    /// Schoolbook multiply-then-reduce. Kept as the reference path for mul.
    gf_elem mul_naive(gf_elem a, gf_elem b) const {
        check(a);
        check(b);
        return mul_unchecked_naive(a, b);
    }

    gf_elem pow(gf_elem a, std::uint64_t e) const {
        check(a);
        gf_elem r = 1;
        for (; e != 0; e >>= 1) {
            if (e & 1U) r = mul_unchecked_naive(r, a);
            a = mul_unchecked_naive(a, a);
        }
        return r;
    }

    /// Inverse by the extended Euclidean algorithm on polynomials.
    gf_elem inv(gf_elem a) const {
        check(a);
        if (a == 0) throw error(errc::no_inverse, "zero has no multiplicative inverse");
        // Invariant: s * a == r (mod reduction) for both rows.
        BinaryPoly r0 = reduction_, r1{a};
        BinaryPoly s0{0}, s1{1};
        while (r1 != poly::one) {
            auto [q, rem] = poly::divmod(r0, r1);
            BinaryPoly s2 = s0 + poly::mul(q, s1);
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s2;
        }
        return static_cast<gf_elem>(poly::mod(s1, reduction_).bits);
    }

    /// Inverse as a^(2^n - 2).
    gf_elem inv_fermat(gf_elem a) const {
        check(a);
        if (a == 0) throw error(errc::no_inverse, "zero has no multiplicative inverse");
        return pow(a, size() - 2);
    }

    gf_elem div(gf_elem a, gf_elem b) const { return mul(a, inv(b)); }

    /// Smallest k >= 1 with a^k = 1.
    std::uint64_t element_order(gf_elem a) const {
        check(a);
        if (a == 0) throw error(errc::domain, "zero has no multiplicative order");
        const std::uint64_t group = size() - 1;
        std::uint64_t order = group;
        for (std::uint64_t p : numtheory::prime_divisors(group)) {
            while (order % p == 0 && pow(a, order / p) == 1) order /= p;
        }
        return order;
    }

private:
    void check(gf_elem a) const {
        if (a >= size()) {
            throw error(errc::domain, "element " + std::to_string(a) + " outside GF(2^" + std::to_string(n_) + ")");
        }
    }

    gf_elem mul_unchecked_naive(gf_elem a, gf_elem b) const noexcept {
        const std::uint32_t top = size();
        std::uint32_t r = 0;
        std::uint32_t sa = a;
        for (; b != 0; b >>= 1) {
            if (b & 1U) r ^= sa;
            sa <<= 1;
            if (sa & top) sa ^= static_cast<std::uint32_t>(reduction_.bits);
        }
        return r;
    }

    BinaryPoly reduction_;
    int n_;
    bool primitive_ = false;
    LogTables tables_;
};

} // namespace chaosbox
