#pragma once

// Binary PGM (P5) / PPM (P6) images with maxval 255, and headerless raw rasters.

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <span>
#include <string>
#include <string_view>

#include "chaosbox/cipher.hpp"
#include "chaosbox/error.hpp"

namespace chaosbox::io {

inline Bytes read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error(errc::io, "cannot open " + path.string());
    return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw error(errc::io, "cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw error(errc::io, "short write to " + path.string());
}

namespace detail {

class HeaderReader {
public:
    HeaderReader(std::span<const std::uint8_t> bytes, std::size_t pos) : bytes_(bytes), pos_(pos) {}

    std::size_t offset() const noexcept { return pos_; }

    [[noreturn]] void fail(const std::string& what) const {
        throw error(errc::format, "netpbm: " + what + " at byte offset " + std::to_string(pos_));
    }

    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            const auto c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else if (std::isspace(c)) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::size_t number(const char* field) {
        skip_space_and_comments();
        const std::size_t start = pos_;
        std::size_t v = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            v = v * 10 + (bytes_[pos_] - '0');
            if (v > 1u << 24) fail(std::string(field) + " too large");
            ++pos_;
        }
        if (pos_ == start) fail(std::string("expected ") + field);
        return v;
    }

    /// The single whitespace byte separating the header from the payload.
    void end_of_header() {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) fail("expected whitespace after maxval");
        ++pos_;
    }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline ImageBuffer decode_netpbm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6')) {
        throw error(errc::format, "netpbm: expected magic P5 or P6 at byte offset 0");
    }
    const std::size_t channels = bytes[1] == '5' ? 1 : 3;
    detail::HeaderReader body(bytes, 2);
    const std::size_t width = body.number("width");
    const std::size_t height = body.number("height");
    const std::size_t maxval = body.number("maxval");
    if (width == 0 || height == 0) body.fail("zero image dimension");
    if (maxval != 255) body.fail("unsupported maxval " + std::to_string(maxval));
    body.end_of_header();
    const std::size_t start = body.offset();
    const std::size_t need = width * height * channels;
    if (bytes.size() - start < need) {
        throw error(errc::format, "netpbm: truncated payload, expected " + std::to_string(need) + " bytes at offset " +
                                      std::to_string(start) + ", found " + std::to_string(bytes.size() - start));
    }
    Bytes data(bytes.begin() + static_cast<std::ptrdiff_t>(start),
               bytes.begin() + static_cast<std::ptrdiff_t>(start + need));
    return ImageBuffer(width, height, channels, std::move(data));
}

inline Bytes encode_netpbm(const ImageBuffer& img) {
    const std::string header = std::string(img.channels() == 1 ? "P5" : "P6") + "\n" + std::to_string(img.width()) +
                               " " + std::to_string(img.height()) + "\n255\n";
    Bytes out(header.begin(), header.end());
    out.insert(out.end(), img.data().begin(), img.data().end());
    return out;
}

inline ImageBuffer read_image(const std::filesystem::path& path) { return decode_netpbm(read_file(path)); }

inline void write_image(const ImageBuffer& img, const std::filesystem::path& path) {
    write_file(path, encode_netpbm(img));
}

struct RawShape {
    std::size_t width = 0;
    std::size_t height = 0;
    std::size_t channels = 1;
};

/// "WxH" or "WxHxC".
inline RawShape parse_raw_shape(std::string_view text) {
    const auto bad = [&] { return error(errc::format, "raw shape must look like WxH or WxHxC, got '" + std::string(text) + "'"); };
    std::size_t fields[3] = {0, 0, 1};
    int k = 0;
    std::size_t i = 0;
    while (true) {
        const std::size_t start = i;
        std::size_t v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) v = v * 10 + (text[i++] - '0');
        if (i == start || k > 2) throw bad();
        fields[k++] = v;
        if (i == text.size()) break;
        if (text[i] != 'x' && text[i] != 'X') throw bad();
        ++i;
    }
    if (k < 2) throw bad();
    return RawShape{fields[0], fields[1], fields[2]};
}

inline ImageBuffer read_raw(const std::filesystem::path& path, const RawShape& shape) {
    Bytes data = read_file(path);
    const std::size_t need = shape.width * shape.height * shape.channels;
    if (data.size() != need) {
        throw error(errc::format, "raw image " + path.string() + " has " + std::to_string(data.size()) +
                                      " bytes, shape needs " + std::to_string(need));
    }
    return ImageBuffer(shape.width, shape.height, shape.channels, std::move(data));
}

} // namespace chaosbox::io
