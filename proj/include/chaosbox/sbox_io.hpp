#pragma once

// S-box files: 16 lines of 16 space-separated decimal bytes, or 256 raw bytes.

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "chaosbox/error.hpp"
#include "chaosbox/netpbm.hpp"
#include "chaosbox/sbox.hpp"

namespace chaosbox::io {

inline std::string format_sbox_text(std::span<const std::uint8_t, 256> table) {
    std::string out;
    char cell[8];
    for (unsigned r = 0; r < 16; ++r) {
        for (unsigned c = 0; c < 16; ++c) {
            std::snprintf(cell, sizeof cell, c == 0 ? "%u" : " %u", static_cast<unsigned>(table[r * 16 + c]));
            out += cell;
        }
        out += '\n';
    }
    return out;
}

/// Reads exactly 256 decimal values in 0..255, any whitespace layout.
inline SBoxTable parse_sbox_text(std::string_view text) {
    SBoxTable t{};
    std::size_t n = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        unsigned v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            v = v * 10 + static_cast<unsigned>(text[i] - '0');
            if (v > 255) throw error(errc::format, "S-box value above 255 at offset " + std::to_string(start));
            ++i;
        }
        if (i == start) throw error(errc::format, "unexpected character in S-box text at offset " + std::to_string(i));
        if (n == 256) throw error(errc::format, "S-box text has more than 256 values");
        t[n++] = static_cast<std::uint8_t>(v);
    }
    if (n != 256) throw error(errc::format, "S-box text has " + std::to_string(n) + " values, expected 256");
    return t;
}

inline SBoxTable parse_sbox_binary(std::span<const std::uint8_t> raw) {
    if (raw.size() != 256) throw error(errc::format, "binary S-box must be 256 bytes, got " + std::to_string(raw.size()));
    SBoxTable t{};
    std::copy(raw.begin(), raw.end(), t.begin());
    return t;
}

enum class SBoxFormat { text, binary };

/// `.bin` selects the binary form, anything else the text form.
inline SBoxFormat sbox_format_for(const std::filesystem::path& path) {
    return path.extension() == ".bin" ? SBoxFormat::binary : SBoxFormat::text;
}

inline SBoxTable read_sbox_table(const std::filesystem::path& path, SBoxFormat format) {
    const Bytes raw = read_file(path);
    if (format == SBoxFormat::binary) return parse_sbox_binary(raw);
    return parse_sbox_text(std::string_view(reinterpret_cast<const char*>(raw.data()), raw.size()));
}

inline void write_sbox(std::span<const std::uint8_t, 256> table, const std::filesystem::path& path, SBoxFormat format) {
    if (format == SBoxFormat::binary) {
        write_file(path, table);
        return;
    }
    const std::string text = format_sbox_text(table);
    write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

} // namespace chaosbox::io
