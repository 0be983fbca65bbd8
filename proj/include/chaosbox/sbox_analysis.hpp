#pragma once

// Strength criteria for 8x8 S-boxes: nonlinearity, SAC, BIC, linear and
// differential approximation probabilities. Every figure is computed
// exhaustively over all inputs and masks.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <vector>

namespace chaosbox::analysis {

using Table = std::span<const std::uint8_t, 256>;
using TruthTable = std::array<std::uint8_t, 256>;
using Spectrum = std::array<int, 256>;

inline unsigned parity(unsigned v) noexcept { return static_cast<unsigned>(std::popcount(v)) & 1U; }

/// Boolean function x -> parity(mask & s(x)).
inline TruthTable component(Table s, std::uint8_t mask) {
    TruthTable f{};
    for (unsigned x = 0; x < 256; ++x) f[x] = static_cast<std::uint8_t>(parity(s[x] & mask));
    return f;
}

/// W(a) = sum_x (-1)^(f(x) + a.x), by the fast Walsh-Hadamard butterfly.
inline Spectrum walsh_spectrum(const TruthTable& f) {
    Spectrum w{};
    for (unsigned x = 0; x < 256; ++x) w[x] = f[x] ? -1 : 1;
    for (unsigned len = 1; len < 256; len <<= 1) {
        for (unsigned i = 0; i < 256; i += len << 1) {
            for (unsigned j = i; j < i + len; ++j) {
                const int u = w[j];
                const int v = w[j + len];
                w[j] = u + v;
                w[j + len] = u - v;
            }
        }
    }
    return w;
}

/// 2^7 - max|W| / 2.
inline int nonlinearity(const TruthTable& f) {
    const auto w = walsh_spectrum(f);
    int peak = 0;
    for (int v : w) peak = std::max(peak, std::abs(v));
    return 128 - peak / 2;
}

struct NonlinearityResult {
    std::array<int, 8> per_coordinate{};
    double average = 0;
    int minimum = 0;
};

inline NonlinearityResult coordinate_nonlinearity(Table s) {
    NonlinearityResult r;
    int sum = 0;
    for (unsigned j = 0; j < 8; ++j) {
        r.per_coordinate[j] = nonlinearity(component(s, static_cast<std::uint8_t>(1U << j)));
        sum += r.per_coordinate[j];
    }
    r.average = sum / 8.0;
    r.minimum = *std::min_element(r.per_coordinate.begin(), r.per_coordinate.end());
    return r;
}

struct SacMatrix {
    // entry[i][j]: probability that flipping input bit i flips output bit j
    std::array<std::array<double, 8>, 8> entry{};
    double mean = 0;
};

inline SacMatrix sac_matrix(Table s) {
    SacMatrix m;
    double total = 0;
    for (unsigned i = 0; i < 8; ++i) {
        std::array<unsigned, 8> flips{};
        for (unsigned x = 0; x < 256; ++x) {
            const unsigned diff = s[x] ^ s[x ^ (1U << i)];
            for (unsigned j = 0; j < 8; ++j) flips[j] += (diff >> j) & 1U;
        }
        for (unsigned j = 0; j < 8; ++j) {
            m.entry[i][j] = flips[j] / 256.0;
            total += m.entry[i][j];
        }
    }
    m.mean = total / 64.0;
    return m;
}

struct BicResult {
    double nonlinearity = 0; // mean NL of bit_j xor bit_k over the 28 pairs
    double sac = 0;          // mean SAC of those same 28 functions over 8 input bits
};

inline BicResult bic(Table s) {
    BicResult r;
    unsigned pairs = 0;
    for (unsigned j = 0; j < 8; ++j) {
        for (unsigned k = j + 1; k < 8; ++k) {
            const auto mask = static_cast<std::uint8_t>((1U << j) | (1U << k));
            const auto f = component(s, mask);
            r.nonlinearity += nonlinearity(f);
            unsigned flips = 0;
            for (unsigned i = 0; i < 8; ++i) {
                for (unsigned x = 0; x < 256; ++x) flips += f[x] ^ f[x ^ (1U << i)];
            }
            r.sac += flips / (8.0 * 256.0);
            ++pairs;
        }
    }
    r.nonlinearity /= pairs;
    r.sac /= pairs;
    return r;
}

struct LinearResult {
    unsigned max_count = 0; // max over nonzero (gx, gy) of #{x : gx.x = gy.s(x)}
    double bias = 0;        // max |count / 256 - 1/2|
};

/// Direct count over all 255 x 255 nonzero mask pairs.
inline LinearResult linear_probability(Table s) {
    LinearResult r;
    unsigned worst = 0;
    for (unsigned gy = 1; gy < 256; ++gy) {
        std::array<std::uint8_t, 256> out_parity{};
        for (unsigned x = 0; x < 256; ++x) out_parity[x] = static_cast<std::uint8_t>(parity(s[x] & gy));
        for (unsigned gx = 1; gx < 256; ++gx) {
            unsigned count = 0;
            for (unsigned x = 0; x < 256; ++x) count += parity(x & gx) == out_parity[x];
            r.max_count = std::max(r.max_count, count);
            worst = std::max(worst, count > 128 ? count - 128 : 128 - count);
        }
    }
    r.bias = worst / 256.0;
    return r;
}

/// Same quantity from component Walsh spectra: count = 128 + W(gx) / 2.
inline LinearResult linear_probability_walsh(Table s) {
    int top = -256;
    int peak = 0;
    for (unsigned gy = 1; gy < 256; ++gy) {
        const auto w = walsh_spectrum(component(s, static_cast<std::uint8_t>(gy)));
        for (unsigned gx = 1; gx < 256; ++gx) {
            top = std::max(top, w[gx]);
            peak = std::max(peak, std::abs(w[gx]));
        }
    }
    return LinearResult{static_cast<unsigned>(128 + top / 2), (peak / 2) / 256.0};
}

using DifferenceTable = std::vector<std::array<std::uint16_t, 256>>;

/// ddt[dx][dy] = #{x : s(x) ^ s(x ^ dx) = dy}.
inline DifferenceTable difference_table(Table s) {
    DifferenceTable ddt(256);
    for (unsigned dx = 0; dx < 256; ++dx) {
        for (unsigned x = 0; x < 256; ++x) ++ddt[dx][s[x] ^ s[x ^ dx]];
    }
    return ddt;
}

struct DifferentialResult {
    unsigned max_count = 0;
    double probability = 0; // max_count / 256
};

inline DifferentialResult differential_probability(Table s) {
    const auto ddt = difference_table(s);
    DifferentialResult r;
    for (unsigned dx = 1; dx < 256; ++dx) {
        r.max_count = std::max<unsigned>(r.max_count, *std::max_element(ddt[dx].begin(), ddt[dx].end()));
    }
    r.probability = r.max_count / 256.0;
    return r;
}

struct StrengthReport {
    NonlinearityResult nonlinearity;
    SacMatrix sac;
    BicResult bic;
    LinearResult lp;
    DifferentialResult dp;
};

inline StrengthReport analyze(Table s) {
    return StrengthReport{coordinate_nonlinearity(s), sac_matrix(s), bic(s), linear_probability(s),
                          differential_probability(s)};
}

} // namespace chaosbox::analysis
