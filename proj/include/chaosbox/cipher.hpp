#pragma once

// Permute -> XOR-mask -> substitute image cipher and its exact inverse.
//
// Multi-channel images are split into planes; each plane is enciphered with
// the same m*n keystream. Planes sharing a keystream is a known weakness of
// this construction: XOR of two ciphertext planes leaks plaintext structure
// wherever the selected S-boxes coincide.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chaosbox/error.hpp"
#include "chaosbox/lorenz.hpp"
#include "chaosbox/sbox.hpp"

namespace chaosbox {

using Bytes = std::vector<std::uint8_t>;

/// height x width raster, `channels` interleaved bytes per pixel, row-major.
class ImageBuffer {
public:
    ImageBuffer() = default;

    ImageBuffer(std::size_t width, std::size_t height, std::size_t channels)
        : ImageBuffer(width, height, channels, Bytes(width * height * channels, 0)) {}

    ImageBuffer(std::size_t width, std::size_t height, std::size_t channels, Bytes data)
        : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
        if (width == 0 || height == 0) throw error(errc::domain, "image dimensions must be positive");
        if (channels != 1 && channels != 3) throw error(errc::domain, "images have 1 or 3 channels");
        if (data_.size() != width * height * channels) {
            throw error(errc::length, "image data has " + std::to_string(data_.size()) + " bytes, expected " +
                                          std::to_string(width * height * channels));
        }
    }

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t channels() const noexcept { return channels_; }
    std::size_t pixels() const noexcept { return width_ * height_; }

    const Bytes& data() const noexcept { return data_; }
    Bytes& data() noexcept { return data_; }

    std::uint8_t at(std::size_t row, std::size_t col, std::size_t ch = 0) const {
        return data_[(row * width_ + col) * channels_ + ch];
    }
    std::uint8_t& at(std::size_t row, std::size_t col, std::size_t ch = 0) {
        return data_[(row * width_ + col) * channels_ + ch];
    }

    bool same_shape(const ImageBuffer& o) const noexcept {
        return width_ == o.width_ && height_ == o.height_ && channels_ == o.channels_;
    }

    friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::size_t channels_ = 0;
    Bytes data_;
};

/// Row-major planes, one after another: plane c holds channel c of every pixel.
inline Bytes flatten(const ImageBuffer& img) {
    const std::size_t n = img.pixels();
    const std::size_t ch = img.channels();
    Bytes out(img.data().size());
    for (std::size_t c = 0; c < ch; ++c) {
        for (std::size_t i = 0; i < n; ++i) out[c * n + i] = img.data()[i * ch + c];
    }
    return out;
}

/// Inverse of flatten for the given shape.
inline ImageBuffer reshape(std::span<const std::uint8_t> planes, std::size_t width, std::size_t height,
                           std::size_t channels) {
    const std::size_t n = width * height;
    if (planes.size() != n * channels) throw error(errc::length, "plane data does not match image shape");
    Bytes data(planes.size());
    for (std::size_t c = 0; c < channels; ++c) {
        for (std::size_t i = 0; i < n; ++i) data[i * channels + c] = planes[c * n + i];
    }
    return ImageBuffer(width, height, channels, std::move(data));
}

namespace detail {

inline void require_same_length(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw error(errc::length, std::string(what) + ": length mismatch (" + std::to_string(a) + " vs " +
                                      std::to_string(b) + ")");
    }
}

inline void require_permutation(std::span<const std::uint32_t> perm) {
    std::vector<bool> seen(perm.size(), false);
    for (auto p : perm) {
        if (p >= perm.size() || seen[p]) throw error(errc::domain, "index sequence is not a permutation");
        seen[p] = true;
    }
}

} // namespace detail

/// out[i] = v[perm[i]].
inline Bytes permute(std::span<const std::uint8_t> v, std::span<const std::uint32_t> perm) {
    detail::require_same_length(v.size(), perm.size(), "permute");
    detail::require_permutation(perm);
    Bytes out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[perm[i]];
    return out;
}

/// out[perm[i]] = v[i].
inline Bytes inverse_permute(std::span<const std::uint8_t> v, std::span<const std::uint32_t> perm) {
    detail::require_same_length(v.size(), perm.size(), "inverse_permute");
    detail::require_permutation(perm);
    Bytes out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[perm[i]] = v[i];
    return out;
}

inline Bytes xor_mask(std::span<const std::uint8_t> v, std::span<const std::uint8_t> mask) {
    detail::require_same_length(v.size(), mask.size(), "xor_mask");
    Bytes out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] ^ mask[i];
    return out;
}

namespace detail {

template <bool Forward>
Bytes substitute_impl(std::span<const std::uint8_t> v, std::span<const std::uint8_t> selectors,
                      std::span<const SBox> sboxes) {
    require_same_length(v.size(), selectors.size(), "substitute");
    Bytes out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (selectors[i] >= sboxes.size()) {
            throw error(errc::domain, "selector " + std::to_string(selectors[i]) + " at position " +
                                          std::to_string(i) + " exceeds S-box count " +
                                          std::to_string(sboxes.size()));
        }
        // High nibble picks the row, low nibble the column: a plain table lookup.
        const SBox& s = sboxes[selectors[i]];
        out[i] = Forward ? s(v[i]) : s.invert(v[i]);
    }
    return out;
}

} // namespace detail

/// Position i goes through sboxes[selectors[i]].
inline Bytes substitute(std::span<const std::uint8_t> v, std::span<const std::uint8_t> selectors,
                        std::span<const SBox> sboxes) {
    return detail::substitute_impl<true>(v, selectors, sboxes);
}

inline Bytes inverse_substitute(std::span<const std::uint8_t> v, std::span<const std::uint8_t> selectors,
                                std::span<const SBox> sboxes) {
    return detail::substitute_impl<false>(v, selectors, sboxes);
}

/// Order in which p_1..p_16 fill the 16 selector slots.
using PolyOrder = std::array<int, 16>;

inline constexpr PolyOrder natural_poly_order{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16};

/// Lorenz initial conditions plus the S-box family they select from. Immutable.
class CipherKey {
public:
    CipherKey(const LorenzParams& lorenz, const LftParams& lft = default_lft, const PolyOrder& polys = natural_poly_order)
        : lorenz_(lorenz), lft_(lft), polys_(polys) {
        validate(lorenz_);
        sboxes_.reserve(polys_.size());
        for (int idx : polys_) {
            LftParams p = lft_;
            p.poly_index = idx;
            sboxes_.push_back(build_sbox(p));
        }
    }

    const LorenzParams& lorenz() const noexcept { return lorenz_; }
    const LftParams& lft() const noexcept { return lft_; }
    const PolyOrder& polys() const noexcept { return polys_; }
    std::span<const SBox> sboxes() const noexcept { return sboxes_; }

private:
    LorenzParams lorenz_;
    LftParams lft_;
    PolyOrder polys_;
    std::vector<SBox> sboxes_;
};

/// Keystream for one plane of `img`.
inline Keystream keystream_for(const ImageBuffer& img, const CipherKey& key) {
    return make_keystream(key.lorenz(), img.pixels(), static_cast<unsigned>(key.sboxes().size()));
}

inline ImageBuffer encrypt(const ImageBuffer& img, const CipherKey& key, const Keystream& ks) {
    const std::size_t n = img.pixels();
    detail::require_same_length(ks.perm.size(), n, "encrypt keystream");
    const Bytes flat = flatten(img);
    Bytes out(flat.size());
    for (std::size_t c = 0; c < img.channels(); ++c) {
        const std::span<const std::uint8_t> plane(flat.data() + c * n, n);
        const Bytes mixed = xor_mask(permute(plane, ks.perm), ks.mask);
        const Bytes subbed = substitute(mixed, ks.selectors, key.sboxes());
        std::copy(subbed.begin(), subbed.end(), out.begin() + static_cast<std::ptrdiff_t>(c * n));
    }
    return reshape(out, img.width(), img.height(), img.channels());
}

inline ImageBuffer encrypt(const ImageBuffer& img, const CipherKey& key) {
    return encrypt(img, key, keystream_for(img, key));
}

inline ImageBuffer decrypt(const ImageBuffer& img, const CipherKey& key, const Keystream& ks) {
    const std::size_t n = img.pixels();
    detail::require_same_length(ks.perm.size(), n, "decrypt keystream");
    const Bytes flat = flatten(img);
    Bytes out(flat.size());
    for (std::size_t c = 0; c < img.channels(); ++c) {
        const std::span<const std::uint8_t> plane(flat.data() + c * n, n);
        const Bytes unsubbed = inverse_substitute(plane, ks.selectors, key.sboxes());
        const Bytes restored = inverse_permute(xor_mask(unsubbed, ks.mask), ks.perm);
        std::copy(restored.begin(), restored.end(), out.begin() + static_cast<std::ptrdiff_t>(c * n));
    }
    return reshape(out, img.width(), img.height(), img.channels());
}

inline ImageBuffer decrypt(const ImageBuffer& img, const CipherKey& key) {
    return decrypt(img, key, keystream_for(img, key));
}

} // namespace chaosbox
