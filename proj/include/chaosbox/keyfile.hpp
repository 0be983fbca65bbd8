#pragma once

// Text key files: one `name=value` per line, '#' starts a comment.
//
//   x0=0.10000000000000001      (required)
//   y0=0.20000000000000001      (required)
//   z0=0.29999999999999999      (required)
//   a=10  b=28  c=2.6666666666666665  step=0.01  burn_in=100
//   lft=32,22,11,8
//   polys=1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16
//
// Reals are written with 17 significant digits so they survive a round trip
// through binary64 exactly.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "chaosbox/cipher.hpp"
#include "chaosbox/error.hpp"
#include "chaosbox/lorenz.hpp"
#include "chaosbox/netpbm.hpp"
#include "chaosbox/sbox.hpp"

namespace chaosbox::io {

struct KeyFile {
    LorenzParams lorenz;
    LftParams lft = default_lft;
    PolyOrder polys = natural_poly_order;

    CipherKey to_cipher_key() const { return CipherKey(lorenz, lft, polys); }

    friend bool operator==(const KeyFile&, const KeyFile&) = default;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

class KeyParser {
public:
    KeyParser(std::string source, std::size_t line) : source_(std::move(source)), line_(line) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw error(errc::format, source_ + ":" + std::to_string(line_) + ": " + what);
    }

    double real(std::string_view name, std::string_view text) const {
        double v = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
            fail("'" + std::string(name) + "' needs a finite real, got '" + std::string(text) + "'");
        }
        return v;
    }

    long long integer(std::string_view name, std::string_view text, long long lo, long long hi) const {
        long long v = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc{} || ptr != text.data() + text.size() || v < lo || v > hi) {
            fail("'" + std::string(name) + "' needs an integer in " + std::to_string(lo) + ".." + std::to_string(hi) +
                 ", got '" + std::string(text) + "'");
        }
        return v;
    }

    std::vector<long long> integers(std::string_view name, std::string_view text, std::size_t count, long long lo,
                                    long long hi) const {
        std::vector<long long> out;
        std::size_t start = 0;
        while (true) {
            const auto comma = text.find(',', start);
            out.push_back(integer(name, trim(text.substr(start, comma - start)), lo, hi));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (out.size() != count) {
            fail("'" + std::string(name) + "' needs " + std::to_string(count) + " comma-separated values, got " +
                 std::to_string(out.size()));
        }
        return out;
    }

private:
    std::string source_;
    std::size_t line_;
};

} // namespace detail

inline KeyFile parse_key(std::string_view text, const std::string& source = "<key>") {
    KeyFile key;
    std::map<std::string, std::size_t, std::less<>> seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;

        const detail::KeyParser p(source, line_no);
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) p.fail("expected name=value");
        const std::string name(detail::trim(line.substr(0, eq)));
        const std::string_view value = detail::trim(line.substr(eq + 1));
        if (auto [it, fresh] = seen.emplace(name, line_no); !fresh) {
            p.fail("'" + name + "' already set on line " + std::to_string(it->second));
        }

        if (name == "x0") key.lorenz.x0 = p.real(name, value);
        else if (name == "y0") key.lorenz.y0 = p.real(name, value);
        else if (name == "z0") key.lorenz.z0 = p.real(name, value);
        else if (name == "a") key.lorenz.a = p.real(name, value);
        else if (name == "b") key.lorenz.b = p.real(name, value);
        else if (name == "c") key.lorenz.c = p.real(name, value);
        else if (name == "step") {
            key.lorenz.step = p.real(name, value);
            if (!(key.lorenz.step > 0)) p.fail("'step' must be positive");
        } else if (name == "burn_in") {
            key.lorenz.burn_in = static_cast<std::size_t>(p.integer(name, value, 0, 100000000));
        } else if (name == "lft") {
            const auto v = p.integers(name, value, 4, 0, 255);
            key.lft = LftParams{static_cast<std::uint8_t>(v[0]), static_cast<std::uint8_t>(v[1]),
                                static_cast<std::uint8_t>(v[2]), static_cast<std::uint8_t>(v[3]), 1};
        } else if (name == "polys") {
            const auto v = p.integers(name, value, 16, 1, 16);
            for (std::size_t i = 0; i < 16; ++i) key.polys[i] = static_cast<int>(v[i]);
        } else {
            p.fail("unknown key '" + name + "'");
        }
    }
    for (const char* required : {"x0", "y0", "z0"}) {
        if (!seen.contains(required)) {
            throw error(errc::format, source + ": missing required key '" + std::string(required) + "'");
        }
    }
    return key;
}

inline std::string format_key(const KeyFile& key) {
    std::string out;
    char buf[64];
    auto real = [&](const char* name, double v) {
        std::snprintf(buf, sizeof buf, "%s=%.17g\n", name, v);
        out += buf;
    };
    real("x0", key.lorenz.x0);
    real("y0", key.lorenz.y0);
    real("z0", key.lorenz.z0);
    real("a", key.lorenz.a);
    real("b", key.lorenz.b);
    real("c", key.lorenz.c);
    real("step", key.lorenz.step);
    out += "burn_in=" + std::to_string(key.lorenz.burn_in) + "\n";
    out += "lft=" + std::to_string(key.lft.a) + "," + std::to_string(key.lft.b) + "," + std::to_string(key.lft.c) +
           "," + std::to_string(key.lft.d) + "\n";
    out += "polys=";
    for (std::size_t i = 0; i < key.polys.size(); ++i) out += (i ? "," : "") + std::to_string(key.polys[i]);
    out += "\n";
    return out;
}

inline KeyFile read_key(const std::filesystem::path& path) {
    const Bytes raw = read_file(path);
    return parse_key(std::string_view(reinterpret_cast<const char*>(raw.data()), raw.size()), path.string());
}

} // namespace chaosbox::io
