#pragma once

// Byte substitution boxes from linear fractional transformations
// g(z) = (az + b) / (cz + d) over GF(2^8).

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "chaosbox/error.hpp"
#include "chaosbox/gf2n.hpp"
#include "chaosbox/golden.hpp"

namespace chaosbox {

using SBoxTable = std::array<std::uint8_t, 256>;

/// Coefficients of the 2x2 matrix [[a, b], [c, d]] plus the field p_{poly_index}.
struct LftParams {
    std::uint8_t a = 1;
    std::uint8_t b = 0;
    std::uint8_t c = 0;
    std::uint8_t d = 1;
    int poly_index = 1;

    friend bool operator==(const LftParams&, const LftParams&) = default;
};

/// The published parameter choice.
inline constexpr LftParams default_lft{32, 22, 11, 8, 1};

/// Value multiplicities that keep a 256-entry table from being a permutation.
struct BijectivityReport {
    std::vector<std::pair<std::uint8_t, unsigned>> duplicated; // (value, count), count >= 2
    std::vector<std::uint8_t> missing;

    bool bijective() const noexcept { return duplicated.empty() && missing.empty(); }

    std::string describe() const {
        if (bijective()) return "bijective";
        std::string s = "duplicated:";
        for (auto [v, n] : duplicated) s += " " + std::to_string(v) + "x" + std::to_string(n);
        s += "; missing:";
        if (missing.size() > 16) {
            s += " " + std::to_string(missing.size()) + " values (" + std::to_string(missing.front()) + ".." +
                 std::to_string(missing.back()) + ")";
        } else {
            for (auto v : missing) s += " " + std::to_string(v);
        }
        return s;
    }
};

inline BijectivityReport scan_bijectivity(std::span<const std::uint8_t, 256> table) {
    std::array<unsigned, 256> count{};
    for (auto v : table) ++count[v];
    BijectivityReport r;
    for (unsigned v = 0; v < 256; ++v) {
        if (count[v] == 0) r.missing.push_back(static_cast<std::uint8_t>(v));
        else if (count[v] > 1) r.duplicated.emplace_back(static_cast<std::uint8_t>(v), count[v]);
    }
    return r;
}

/// Inverse permutation of a table. Throws not_bijective naming the repeated values.
inline SBoxTable invert_table(std::span<const std::uint8_t, 256> table) {
    const auto report = scan_bijectivity(table);
    if (!report.bijective()) throw error(errc::not_bijective, "table is not a bijection: " + report.describe());
    SBoxTable inv{};
    for (unsigned v = 0; v < 256; ++v) inv[table[v]] = static_cast<std::uint8_t>(v);
    return inv;
}

/// A bijective 8x8 S-box with its inverse. Immutable.
class SBox {
public:
    /// Throws not_bijective if `table` repeats a value.
    explicit SBox(const SBoxTable& table, std::optional<LftParams> provenance = std::nullopt)
        : table_(table), inverse_(invert_table(table)), provenance_(provenance) {}

    static SBox identity() {
        SBoxTable t{};
        for (unsigned v = 0; v < 256; ++v) t[v] = static_cast<std::uint8_t>(v);
        return SBox(t, LftParams{});
    }

    const SBoxTable& table() const noexcept { return table_; }
    const SBoxTable& inverse() const noexcept { return inverse_; }

    std::uint8_t operator()(std::uint8_t v) const noexcept { return table_[v]; }
    std::uint8_t invert(std::uint8_t v) const noexcept { return inverse_[v]; }

    /// Defining LFT, or nullopt for tables loaded from outside.
    const std::optional<LftParams>& provenance() const noexcept { return provenance_; }
    bool is_external() const noexcept { return !provenance_.has_value(); }

    friend bool operator==(const SBox& x, const SBox& y) noexcept { return x.table_ == y.table_; }

private:
    SBoxTable table_;
    SBoxTable inverse_;
    std::optional<LftParams> provenance_;
};

/// Evaluates the LFT on every byte with ordinary field division. The pole
/// z = d/c (when c != 0) takes the value a/c, the image of infinity, which
/// closes the map into a permutation of GF(2^8).
inline SBoxTable lft_table(const LftParams& p, const FieldSpec& field) {
    if (field.degree() != 8) throw error(errc::domain, "LFT S-boxes need a degree-8 field");
    if ((field.mul(p.a, p.d) ^ field.mul(p.b, p.c)) == 0) {
        throw error(errc::degenerate, "degenerate transformation: ad + bc = 0 for (a,b,c,d) = (" + std::to_string(p.a) +
                                          "," + std::to_string(p.b) + "," + std::to_string(p.c) + "," +
                                          std::to_string(p.d) + ") modulo " + poly::to_monomials(field.reduction()));
    }
    SBoxTable t{};
    for (gf_elem z = 0; z < 256; ++z) {
        const gf_elem den = field.mul(p.c, z) ^ p.d;
        const gf_elem value = den == 0 ? field.div(p.a, p.c) : field.div(field.mul(p.a, z) ^ p.b, den);
        t[z] = static_cast<std::uint8_t>(value);
    }
    return t;
}

/// S-box for p.poly_index in 1..16 under `field`.
inline SBox build_sbox(const LftParams& p, const FieldSpec& field) { return SBox(lft_table(p, field), p); }

inline SBox build_sbox(const LftParams& p) { return build_sbox(p, FieldSpec(golden::primitive_poly(p.poly_index))); }

/// One S-box per primitive polynomial p_1..p_16 with the same coefficients.
inline std::vector<SBox> build_family(std::uint8_t a, std::uint8_t b, std::uint8_t c, std::uint8_t d) {
    std::vector<SBox> family;
    family.reserve(golden::primitive_polys.size());
    for (int i = 1; i <= static_cast<int>(golden::primitive_polys.size()); ++i) {
        const LftParams p{a, b, c, d, i};
        try {
            family.push_back(build_sbox(p));
        } catch (const error& e) {
            throw error(e.code(), "family member p" + std::to_string(i) + " (" +
                                      poly::to_monomials(golden::primitive_poly(i)) + "): " + e.what());
        }
    }
    return family;
}

/// Inverse S-box. For an LFT box the inverse is the LFT with matrix [[d, b], [c, a]].
inline SBox invert_sbox(const SBox& s) {
    std::optional<LftParams> prov;
    if (const auto& p = s.provenance()) prov = LftParams{p->d, p->b, p->c, p->a, p->poly_index};
    return SBox(s.inverse(), prov);
}

/// Accepts 256 raw bytes; returns a usable S-box or the reason it is not one.
inline std::variant<SBox, BijectivityReport> load_external_sbox(std::span<const std::uint8_t> raw) {
    if (raw.size() != 256) {
        throw error(errc::format, "S-box needs exactly 256 bytes, got " + std::to_string(raw.size()));
    }
    const std::span<const std::uint8_t, 256> fixed(raw.data(), 256);
    auto report = scan_bijectivity(fixed);
    if (!report.bijective()) return report;
    SBoxTable t{};
    std::copy(raw.begin(), raw.end(), t.begin());
    return SBox(t);
}

} // namespace chaosbox
