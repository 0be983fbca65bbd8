#pragma once

// Lorenz-system keystream: fixed-step RK4 integration with a periodic
// disturbance, fractional-part extraction, x/y/z interleaving, and the
// permutation / XOR-mask / S-box selector streams derived from it.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "chaosbox/error.hpp"

namespace chaosbox {

/// dx/dt = a(y - x), dy/dt = bx - y - xz, dz/dt = xy - cz.
struct LorenzParams {
    double a = 10.0;
    double b = 28.0;
    double c = 8.0 / 3.0;
    double x0 = 0.0;
    double y0 = 0.0;
    double z0 = 0.0;
    double step = 0.01;
    std::size_t burn_in = 100;

    friend bool operator==(const LorenzParams&, const LorenzParams&) = default;
};

struct LorenzState {
    double x = 0;
    double y = 0;
    double z = 0;

    friend bool operator==(const LorenzState&, const LorenzState&) = default;
};

/// Post-burn-in samples; after `fractional` every coordinate lies in [0, 1).
struct LorenzTrajectory {
    std::vector<LorenzState> samples;
};

/// Disturbance fires on post-burn-in sample t (counted from 1) when t % interval == 1.
inline constexpr std::size_t disturbance_interval = 10000;

inline LorenzState lorenz_rhs(const LorenzState& s, const LorenzParams& p) noexcept {
    return {p.a * (s.y - s.x), p.b * s.x - s.y - s.x * s.z, s.x * s.y - p.c * s.z};
}

/// One classical fourth-order Runge-Kutta step of size p.step.
inline LorenzState rk4_step(const LorenzState& s, const LorenzParams& p) noexcept {
    const double h = p.step;
    const auto k1 = lorenz_rhs(s, p);
    const auto k2 = lorenz_rhs({s.x + h / 2 * k1.x, s.y + h / 2 * k1.y, s.z + h / 2 * k1.z}, p);
    const auto k3 = lorenz_rhs({s.x + h / 2 * k2.x, s.y + h / 2 * k2.y, s.z + h / 2 * k2.z}, p);
    const auto k4 = lorenz_rhs({s.x + h * k3.x, s.y + h * k3.y, s.z + h * k3.z}, p);
    return {s.x + h / 6 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x), s.y + h / 6 * (k1.y + 2 * k2.y + 2 * k3.y + k4.y),
            s.z + h / 6 * (k1.z + 2 * k2.z + 2 * k3.z + k4.z)};
}

/// Nudges x and y depending on the sign of z.
inline LorenzState disturb(LorenzState s) noexcept {
    if (s.z <= 0) {
        s.x += 0.1;
        s.y -= 0.2;
    } else {
        s.x += 0.2;
        s.y -= 0.1;
    }
    return s;
}

inline void validate(const LorenzParams& p) {
    for (double v : {p.a, p.b, p.c, p.x0, p.y0, p.z0, p.step}) {
        if (!std::isfinite(v)) throw error(errc::domain, "Lorenz parameters must be finite");
    }
    if (!(p.step > 0)) throw error(errc::domain, "integration step must be positive");
}

/// Integrates burn_in + count steps from (x0, y0, z0) and keeps the last
/// count samples. The disturbance is applied to post-burn-in sample t
/// whenever t = 1 (mod 10000), and integration continues from the disturbed
/// state. Bit-identical for identical parameters.
inline LorenzTrajectory integrate(const LorenzParams& p, std::size_t count) {
    validate(p);
    LorenzTrajectory traj;
    traj.samples.reserve(count);
    LorenzState s{p.x0, p.y0, p.z0};
    const std::size_t total = p.burn_in + count;
    for (std::size_t i = 1; i <= total; ++i) {
        s = rk4_step(s, p);
        if (!std::isfinite(s.x) || !std::isfinite(s.y) || !std::isfinite(s.z)) {
            throw error(errc::integration, "Lorenz state became non-finite at step " + std::to_string(i));
        }
        if (i <= p.burn_in) continue;
        const std::size_t t = i - p.burn_in;
        if (t % disturbance_interval == 1) s = disturb(s);
        traj.samples.push_back(s);
    }
    return traj;
}

/// v - floor(v), kept strictly below 1 when rounding would reach it.
inline double fractional(double v) noexcept {
    const double f = v - std::floor(v);
    return f < 1.0 ? f : std::nextafter(1.0, 0.0);
}

inline LorenzTrajectory fractional(const LorenzTrajectory& traj) {
    LorenzTrajectory out;
    out.samples.reserve(traj.samples.size());
    for (const auto& s : traj.samples) out.samples.push_back({fractional(s.x), fractional(s.y), fractional(s.z)});
    return out;
}

/// x1, y1, z1, x2, y2, z2, ... truncated to `length` entries.
inline std::vector<double> interleave(const LorenzTrajectory& traj, std::size_t length) {
    const std::size_t needed = (length + 2) / 3;
    if (traj.samples.size() < needed) {
        throw error(errc::length, "trajectory has " + std::to_string(traj.samples.size()) + " samples, need " +
                                      std::to_string(needed) + " for " + std::to_string(length) + " values");
    }
    std::vector<double> k;
    k.reserve(length);
    for (std::size_t i = 0; k.size() < length; ++i) {
        const auto& s = traj.samples[i];
        for (double v : {s.x, s.y, s.z}) {
            if (k.size() == length) break;
            k.push_back(v);
        }
    }
    return k;
}

struct Keystream {
    std::vector<double> k;              // interleaved fractional sequence
    std::vector<std::uint32_t> perm;    // stable ascending argsort of k
    std::vector<std::uint8_t> mask;     // round(k * 10^4) mod 256
    std::vector<std::uint8_t> selectors; // floor(k * 10^4) mod sbox_count
};

/// Digests k into the three cipher streams. Rounding is half away from zero.
inline Keystream derive_keystream(std::span<const double> k, unsigned sbox_count = 16) {
    if (sbox_count == 0 || sbox_count > 256) throw error(errc::domain, "S-box count must be in 1..256");
    if (k.size() > std::numeric_limits<std::uint32_t>::max()) throw error(errc::length, "keystream too long");
    Keystream ks;
    ks.k.assign(k.begin(), k.end());
    ks.mask.reserve(k.size());
    ks.selectors.reserve(k.size());
    for (double v : k) {
        if (!(v >= 0.0 && v < 1.0)) throw error(errc::domain, "keystream source values must lie in [0, 1)");
        const double scaled = v * 1e4;
        ks.mask.push_back(static_cast<std::uint8_t>(static_cast<std::uint64_t>(std::round(scaled)) % 256));
        ks.selectors.push_back(static_cast<std::uint8_t>(static_cast<std::uint64_t>(std::floor(scaled)) % sbox_count));
    }
    ks.perm.resize(k.size());
    std::iota(ks.perm.begin(), ks.perm.end(), std::uint32_t{0});
    std::stable_sort(ks.perm.begin(), ks.perm.end(), [&](std::uint32_t i, std::uint32_t j) { return k[i] < k[j]; });
    return ks;
}

/// Full pipeline from key material to a keystream of `length` entries.
inline Keystream make_keystream(const LorenzParams& p, std::size_t length, unsigned sbox_count = 16) {
    const auto traj = fractional(integrate(p, (length + 2) / 3));
    const auto k = interleave(traj, length);
    return derive_keystream(k, sbox_count);
}

} // namespace chaosbox
