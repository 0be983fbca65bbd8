#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chaosbox {

/// Machine-readable failure category carried by every library exception.
enum class errc {
    domain,          // argument outside the operation's domain
    no_inverse,      // zero has no multiplicative inverse
    not_irreducible, // reduction polynomial factors
    not_primitive,   // x does not generate the multiplicative group
    degenerate,      // LFT with ad + bc = 0
    not_bijective,   // table repeats values
    length,          // size mismatch between operands
    format,          // malformed file contents
    integration,     // ODE state left the finite range
    io,              // filesystem failure
};

constexpr std::string_view code_name(errc c) noexcept {
    switch (c) {
    case errc::domain: return "E_DOMAIN";
    case errc::no_inverse: return "E_NO_INVERSE";
    case errc::not_irreducible: return "E_NOT_IRREDUCIBLE";
    case errc::not_primitive: return "E_NOT_PRIMITIVE";
    case errc::degenerate: return "E_DEGENERATE";
    case errc::not_bijective: return "E_NOT_BIJECTIVE";
    case errc::length: return "E_LENGTH";
    case errc::format: return "E_FORMAT";
    case errc::integration: return "E_INTEGRATION";
    case errc::io: return "E_IO";
    }
    return "E_UNKNOWN";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

} // namespace chaosbox
