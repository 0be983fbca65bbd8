#pragma once

// Statistical and security measurements for cipher images: adjacent-pixel
// correlation, entropy, GLCM texture features, NPCR/UACI, the corrupted
// ciphertext experiment, and key-space bookkeeping.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "chaosbox/cipher.hpp"
#include "chaosbox/error.hpp"
#include "chaosbox/sbox_analysis.hpp"

namespace chaosbox::metrics {

enum class Direction { horizontal, vertical };

using Histogram = std::array<std::uint64_t, 256>;

inline Histogram histogram(const ImageBuffer& img) {
    Histogram h{};
    for (auto v : img.data()) ++h[v];
    return h;
}

namespace detail {

struct PairStats {
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    std::size_t n = 0;

    void add(double x, double y) {
        sx += x;
        sy += y;
        sxx += x * x;
        syy += y * y;
        sxy += x * y;
        ++n;
    }

    std::optional<double> pearson() const {
        const double cov = n * sxy - sx * sy;
        const double vx = n * sxx - sx * sx;
        const double vy = n * syy - sy * sy;
        if (vx <= 0 || vy <= 0) return std::nullopt;
        return cov / std::sqrt(vx * vy);
    }
};

inline void require_extent(const ImageBuffer& img, Direction dir) {
    const std::size_t extent = dir == Direction::horizontal ? img.width() : img.height();
    if (extent < 2) throw error(errc::domain, "image needs at least 2 pixels along the correlation direction");
}

} // namespace detail

/// Pearson correlation over every adjacent pixel pair of one channel.
/// nullopt when either side of the pairs has zero variance.
inline std::optional<double> adjacency_correlation(const ImageBuffer& img, Direction dir, std::size_t channel = 0) {
    detail::require_extent(img, dir);
    detail::PairStats st;
    const std::size_t dr = dir == Direction::vertical ? 1 : 0;
    const std::size_t dc = dir == Direction::horizontal ? 1 : 0;
    for (std::size_t r = 0; r + dr < img.height(); ++r) {
        for (std::size_t c = 0; c + dc < img.width(); ++c) st.add(img.at(r, c, channel), img.at(r + dr, c + dc, channel));
    }
    return st.pearson();
}

/// Same statistic over `pairs` uniformly drawn adjacent pairs.
inline std::optional<double> adjacency_correlation_sampled(const ImageBuffer& img, Direction dir, std::size_t pairs,
                                                           std::uint64_t seed, std::size_t channel = 0) {
    detail::require_extent(img, dir);
    const std::size_t dr = dir == Direction::vertical ? 1 : 0;
    const std::size_t dc = dir == Direction::horizontal ? 1 : 0;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> row(0, img.height() - 1 - dr);
    std::uniform_int_distribution<std::size_t> col(0, img.width() - 1 - dc);
    detail::PairStats st;
    for (std::size_t i = 0; i < pairs; ++i) {
        const std::size_t r = row(rng);
        const std::size_t c = col(rng);
        st.add(img.at(r, c, channel), img.at(r + dr, c + dc, channel));
    }
    return st.pearson();
}

/// Shannon entropy of the byte histogram, in bits.
inline double entropy(const ImageBuffer& img) {
    const auto h = histogram(img);
    const double total = static_cast<double>(img.data().size());
    double e = 0;
    for (auto count : h) {
        if (count == 0) continue;
        const double p = count / total;
        e -= p * std::log2(p);
    }
    return e;
}

/// Pearson chi-square of the byte histogram against the uniform distribution (255 dof).
inline double chi_square_uniform(const ImageBuffer& img) {
    const auto h = histogram(img);
    const double expected = img.data().size() / 256.0;
    double chi = 0;
    for (auto count : h) chi += (count - expected) * (count - expected) / expected;
    return chi;
}

/// Upper 0.999 quantile of chi-square with 255 degrees of freedom.
inline constexpr double chi_square_255_q999 = 330.51974363400586;

/// Co-occurrence counts of (pixel, pixel at offset) over one channel.
class Glcm {
public:
    Glcm(const ImageBuffer& img, int dr = 0, int dc = 1, std::size_t channel = 0) : counts_(256 * 256, 0) {
        const auto h = static_cast<long long>(img.height());
        const auto w = static_cast<long long>(img.width());
        for (long long r = 0; r < h; ++r) {
            const long long r2 = r + dr;
            if (r2 < 0 || r2 >= h) continue;
            for (long long c = 0; c < w; ++c) {
                const long long c2 = c + dc;
                if (c2 < 0 || c2 >= w) continue;
                const unsigned i = img.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c), channel);
                const unsigned j = img.at(static_cast<std::size_t>(r2), static_cast<std::size_t>(c2), channel);
                ++counts_[i * 256 + j];
                ++total_;
            }
        }
        if (total_ == 0) throw error(errc::domain, "image too small for GLCM offset");
    }

    std::uint64_t count(unsigned i, unsigned j) const { return counts_[i * 256 + j]; }
    double normalized(unsigned i, unsigned j) const { return static_cast<double>(count(i, j)) / total_; }
    std::uint64_t total() const noexcept { return total_; }

    std::size_t nonzero_cells() const {
        std::size_t n = 0;
        for (auto c : counts_) n += c != 0;
        return n;
    }

private:
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

struct GlcmFeatures {
    double contrast = 0;    // sum |i-j|^2 p(i,j)
    double homogeneity = 0; // sum p(i,j) / (1 + |i-j|)
    double energy = 0;      // sum p(i,j)^2
};

inline GlcmFeatures glcm_features(const Glcm& g) {
    GlcmFeatures f;
    for (unsigned i = 0; i < 256; ++i) {
        for (unsigned j = 0; j < 256; ++j) {
            const auto c = g.count(i, j);
            if (c == 0) continue;
            const double p = g.normalized(i, j);
            const double d = std::abs(static_cast<double>(i) - static_cast<double>(j));
            f.contrast += d * d * p;
            f.homogeneity += p / (1.0 + d);
            f.energy += p * p;
        }
    }
    return f;
}

inline GlcmFeatures glcm_features(const ImageBuffer& img, int dr = 0, int dc = 1, std::size_t channel = 0) {
    return glcm_features(Glcm(img, dr, dc, channel));
}

struct AvalancheReport {
    double npcr = 0; // % of differing bytes
    double uaci = 0; // mean |c1 - c2| / 255, in %
    std::string location;
};

inline AvalancheReport npcr_uaci(const ImageBuffer& c1, const ImageBuffer& c2, std::string location = {}) {
    if (!c1.same_shape(c2)) throw error(errc::length, "NPCR/UACI needs images of identical shape");
    std::uint64_t changed = 0;
    std::uint64_t intensity = 0;
    const auto& a = c1.data();
    const auto& b = c2.data();
    for (std::size_t i = 0; i < a.size(); ++i) {
        changed += a[i] != b[i];
        intensity += static_cast<std::uint64_t>(a[i] > b[i] ? a[i] - b[i] : b[i] - a[i]);
    }
    const double n = static_cast<double>(a.size());
    return {100.0 * changed / n, 100.0 * intensity / (255.0 * n), std::move(location)};
}

/// Fraction of identical bytes.
inline double match_fraction(const ImageBuffer& a, const ImageBuffer& b) {
    if (!a.same_shape(b)) throw error(errc::length, "comparison needs images of identical shape");
    std::size_t same = 0;
    for (std::size_t i = 0; i < a.data().size(); ++i) same += a.data()[i] == b.data()[i];
    return static_cast<double>(same) / a.data().size();
}

struct NoiseReport {
    double match_fraction = 0;      // bytes of the recovered image equal to the plaintext
    double mean_absolute_error = 0; // over all bytes
    ImageBuffer recovered;
};

/// Whitens the first `corrupted` ciphertext pixels (every channel set to 255)
/// and decrypts.
inline NoiseReport noise_experiment(const ImageBuffer& img, const CipherKey& key, std::size_t corrupted) {
    if (corrupted > img.pixels()) throw error(errc::domain, "cannot corrupt more pixels than the image holds");
    const auto ks = keystream_for(img, key);
    ImageBuffer cipher = encrypt(img, key, ks);
    std::fill_n(cipher.data().begin(), static_cast<std::ptrdiff_t>(corrupted * img.channels()), std::uint8_t{255});
    NoiseReport r;
    r.recovered = decrypt(cipher, key, ks);
    r.match_fraction = match_fraction(img, r.recovered);
    double err = 0;
    for (std::size_t i = 0; i < img.data().size(); ++i) {
        err += std::abs(static_cast<int>(img.data()[i]) - static_cast<int>(r.recovered.data()[i]));
    }
    r.mean_absolute_error = err / img.data().size();
    return r;
}

/// Order of PGL(2, GF(2^8)): (q^2 - 1)(q^2 - q)/(q - 1) with q = 256.
inline constexpr std::uint64_t pgl2_gf256_order = 16776960;

struct KeySpace {
    double initial_condition_bits = 0; // 3 x 53 significand bits
    double lft_bits = 0;               // log2 |PGL(2, GF(2^8))|
    double polynomial_bits = 0;        // log2 16
    double total_bits() const { return initial_condition_bits + lft_bits + polynomial_bits; }
};

inline KeySpace keyspace() {
    return {3.0 * 53.0, std::log2(static_cast<double>(pgl2_gf256_order)), std::log2(16.0)};
}

inline std::string keyspace_report(const CipherKey& key) {
    const auto ks = keyspace();
    char line[160];
    std::ostringstream out;
    out << "key space\n";
    out << "  claimed figure:              10^60 (published claim)\n";
    std::snprintf(line, sizeof line, "  initial conditions x0,y0,z0: 2^%.0f (3 x 53-bit significands)\n",
                  ks.initial_condition_bits);
    out << line;
    std::snprintf(line, sizeof line, "  LFT choice (a,b,c,d):        2^%.2f (|PGL(2,GF(2^8))| = %llu)\n", ks.lft_bits,
                  static_cast<unsigned long long>(pgl2_gf256_order));
    out << line;
    std::snprintf(line, sizeof line, "  primitive polynomial:        2^%.0f\n", ks.polynomial_bits);
    out << line;
    std::snprintf(line, sizeof line, "  effective total:             2^%.2f\n", ks.total_bits());
    out << line;
    std::snprintf(line, sizeof line, "  this key: x0=%.17g y0=%.17g z0=%.17g lft=(%u,%u,%u,%u)\n", key.lorenz().x0,
                  key.lorenz().y0, key.lorenz().z0, key.lft().a, key.lft().b, key.lft().c, key.lft().d);
    out << line;
    return out.str();
}

/// Multiplies per-box maxima over `active` S-boxes, log2 domain. This is the
/// heuristic extrapolation quoted for the cipher, not a proven bound.
struct ActiveBoxEstimate {
    double lp_log2_per_box = 0;
    double dp_log2_per_box = 0;
    unsigned active = 0;
    double lp_log2_total() const { return lp_log2_per_box * active; }
    double dp_log2_total() const { return dp_log2_per_box * active; }
};

inline ActiveBoxEstimate active_box_estimate(std::span<const SBox> sboxes, unsigned active = 256) {
    double lp = 0, dp = 0;
    for (const auto& s : sboxes) {
        lp += std::log2(analysis::linear_probability_walsh(s.table()).bias);
        dp += std::log2(analysis::differential_probability(s.table()).probability);
    }
    const double n = static_cast<double>(sboxes.size());
    return {lp / n, dp / n, active};
}

} // namespace chaosbox::metrics
