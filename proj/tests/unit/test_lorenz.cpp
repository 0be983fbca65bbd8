#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <vector>

#include "chaosbox/lorenz.hpp"

using namespace chaosbox;

namespace {

LorenzParams key(double x0, double y0, double z0) {
    LorenzParams p;
    p.x0 = x0;
    p.y0 = y0;
    p.z0 = z0;
    return p;
}

double mask_change_fraction(const LorenzParams& a, const LorenzParams& b, std::size_t length) {
    const auto ka = make_keystream(a, length);
    const auto kb = make_keystream(b, length);
    std::size_t diff = 0;
    for (std::size_t i = 0; i < length; ++i) diff += ka.mask[i] != kb.mask[i];
    return static_cast<double>(diff) / length;
}

} // namespace

TEST(Rk4, SingleStepMatchesHighPrecisionReference) {
    // One classical RK4 step from (1,1,1), h = 0.01, evaluated in 40-digit arithmetic.
    const LorenzState s = rk4_step({1, 1, 1}, LorenzParams{});
    EXPECT_NEAR(s.x, 1.0125671910736111111, 1e-9);
    EXPECT_NEAR(s.y, 1.2599177989452742781, 1e-9);
    EXPECT_NEAR(s.z, 0.98489097179160534052, 1e-9);
}

TEST(Rk4, FineStepsConvergeToTheFlow) {
    // Solution of the ODE at t = 0.01 from a 40-digit Taylor-series integration.
    LorenzParams p;
    p.step = 1e-4;
    LorenzState s{1, 1, 1};
    for (int i = 0; i < 100; ++i) s = rk4_step(s, p);
    EXPECT_NEAR(s.x, 1.0125657329784085106, 1e-9);
    EXPECT_NEAR(s.y, 1.259920026252338851, 1e-9);
    EXPECT_NEAR(s.z, 0.98489104491646584621, 1e-9);
}

TEST(Rk4, OriginIsAFixedPoint) {
    LorenzState s{0, 0, 0};
    for (int i = 0; i < 1000; ++i) s = rk4_step(s, LorenzParams{});
    EXPECT_EQ(s, (LorenzState{0, 0, 0}));
    EXPECT_EQ(lorenz_rhs({0, 0, 0}, LorenzParams{}), (LorenzState{0, 0, 0}));
}

TEST(Disturbance, Rule) {
    EXPECT_EQ(disturb({1, 1, 1}), (LorenzState{1 + 0.2, 1 - 0.1, 1}));
    EXPECT_EQ(disturb({1, 1, 0}), (LorenzState{1 + 0.1, 1 - 0.2, 0}));
    EXPECT_EQ(disturb({1, 1, -3}), (LorenzState{1 + 0.1, 1 - 0.2, -3}));
}

TEST(Disturbance, FiresOnFirstSampleAfterBurnIn) {
    const LorenzParams p = key(0.1, 0.2, 0.3);
    LorenzState s{p.x0, p.y0, p.z0};
    for (std::size_t i = 0; i <= p.burn_in; ++i) s = rk4_step(s, p);
    ASSERT_GT(s.z, 0);
    const auto traj = integrate(p, 3);
    EXPECT_EQ(traj.samples[0].x, s.x + 0.2);
    EXPECT_EQ(traj.samples[0].y, s.y - 0.1);
    EXPECT_EQ(traj.samples[0].z, s.z);
    EXPECT_EQ(traj.samples[1], rk4_step(traj.samples[0], p));
}

TEST(Disturbance, PeriodIsTenThousand) {
    const LorenzParams p = key(0.1, 0.2, 0.3);
    const auto traj = integrate(p, 10002);
    const auto& s = traj.samples;
    EXPECT_EQ(s[9999], rk4_step(s[9998], p));
    EXPECT_EQ(s[10000], disturb(rk4_step(s[9999], p)));
    EXPECT_EQ(s[10001], rk4_step(s[10000], p));
}

TEST(Disturbance, KicksTheOriginOffItsFixedPoint) {
    LorenzParams p = key(0, 0, 0);
    p.burn_in = 0;
    const auto traj = integrate(p, 2);
    EXPECT_EQ(traj.samples[0], (LorenzState{0.1, -0.2, 0}));
    EXPECT_NE(traj.samples[1], traj.samples[0]);
}

TEST(Integrate, DeterministicAndSized) {
    const LorenzParams p = key(0.1, 0.2, 0.3);
    const auto a = integrate(p, 5000);
    const auto b = integrate(p, 5000);
    ASSERT_EQ(a.samples.size(), 5000u);
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        ASSERT_EQ(std::memcmp(&a.samples[i], &b.samples[i], sizeof(LorenzState)), 0);
    }
}

TEST(Integrate, RejectsBadParameters) {
    LorenzParams p = key(0.1, 0.2, 0.3);
    p.step = 0;
    EXPECT_THROW(integrate(p, 1), error);
    p.step = -0.01;
    EXPECT_THROW(integrate(p, 1), error);
    p = key(std::numeric_limits<double>::quiet_NaN(), 0, 0);
    EXPECT_THROW(integrate(p, 1), error);
}

TEST(Integrate, OverflowNamesTheStep) {
    LorenzParams p = key(1e200, 1e200, 1e200);
    try {
        integrate(p, 10);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::integration);
        EXPECT_NE(std::string(e.what()).find("step 1"), std::string::npos);
    }
}

TEST(Fractional, FloorSemantics) {
    EXPECT_EQ(fractional(3.25), 0.25);
    EXPECT_EQ(fractional(-1.75), 0.25);
    EXPECT_EQ(fractional(0.0), 0.0);
    EXPECT_EQ(fractional(-3.0), 0.0);
    // -1e-20 + 1 rounds to 1.0; the result must stay below 1.
    EXPECT_LT(fractional(-1e-20), 1.0);
    EXPECT_GE(fractional(-1e-20), 0.0);
}

TEST(Fractional, TrajectoryLandsInUnitInterval) {
    const auto traj = fractional(integrate(key(0.1, 0.2, 0.3), 20000));
    for (const auto& s : traj.samples) {
        for (double v : {s.x, s.y, s.z}) {
            ASSERT_GE(v, 0.0);
            ASSERT_LT(v, 1.0);
        }
    }
}

TEST(Interleave, OrderAndTruncation) {
    LorenzTrajectory t{{{.1, .2, .3}, {.4, .5, .6}}};
    EXPECT_EQ(interleave(t, 4), (std::vector<double>{.1, .2, .3, .4}));
    EXPECT_EQ(interleave(t, 6), (std::vector<double>{.1, .2, .3, .4, .5, .6}));
    EXPECT_TRUE(interleave(t, 0).empty());
    EXPECT_THROW(interleave(t, 7), error);
}

TEST(Keystream, DerivationRules) {
    const std::vector<double> k{0.0, 0.02575, 0.99999, 0.12345678};
    const auto ks = derive_keystream(k);
    EXPECT_EQ(ks.mask[0], 0);
    EXPECT_EQ(ks.selectors[0], 0);
    EXPECT_EQ(0.02575 * 1e4, 257.5); // exact in binary64, so the rounding rule decides
    EXPECT_EQ(ks.mask[1], 2);        // round(257.5) = 258
    EXPECT_EQ(ks.selectors[1], 1);   // floor(257.5) = 257
    EXPECT_EQ(ks.mask[2], 10000 % 256);
    EXPECT_EQ(ks.selectors[2], 9999 % 16);
    EXPECT_EQ(ks.mask[3], 1235 % 256);
    EXPECT_EQ(ks.selectors[3], 1234 % 16);
}

TEST(Keystream, PermutationIsStableArgsort) {
    const std::vector<double> k{0.5, 0.1, 0.9};
    EXPECT_EQ(derive_keystream(k).perm, (std::vector<std::uint32_t>{1, 0, 2}));
    const std::vector<double> ties{0.5, 0.1, 0.5, 0.0};
    EXPECT_EQ(derive_keystream(ties).perm, (std::vector<std::uint32_t>{3, 1, 0, 2}));
}

TEST(Keystream, RejectsOutOfRange) {
    EXPECT_THROW(derive_keystream(std::vector<double>{1.0}), error);
    EXPECT_THROW(derive_keystream(std::vector<double>{-0.1}), error);
    EXPECT_THROW(derive_keystream(std::vector<double>{0.5}, 0), error);
}

TEST(Keystream, FullLengthInvariants) {
    const auto ks = make_keystream(key(0.1, 0.2, 0.3), 65536);
    ASSERT_EQ(ks.k.size(), 65536u);
    std::vector<bool> seen(65536, false);
    for (auto p : ks.perm) {
        ASSERT_LT(p, 65536u);
        ASSERT_FALSE(seen[p]);
        seen[p] = true;
    }
    for (auto s : ks.selectors) ASSERT_LT(s, 16);

    // No histogram bin of the mask further than 5 binomial sigmas from uniform.
    std::vector<int> hist(256, 0);
    for (auto m : ks.mask) ++hist[m];
    const double mean = 65536.0 / 256.0;
    const double sigma = std::sqrt(65536.0 * (1.0 / 256.0) * (255.0 / 256.0));
    for (int h : hist) EXPECT_LE(std::abs(h - mean), 5 * sigma);
}

TEST(Keystream, Deterministic) {
    const auto a = make_keystream(key(0.3, -0.7, 12.5), 30000);
    const auto b = make_keystream(key(0.3, -0.7, 12.5), 30000);
    EXPECT_EQ(a.mask, b.mask);
    EXPECT_EQ(a.perm, b.perm);
    EXPECT_EQ(a.selectors, b.selectors);
    EXPECT_EQ(std::memcmp(a.k.data(), b.k.data(), a.k.size() * sizeof(double)), 0);
}

TEST(Keystream, SensitiveToInitialConditions) {
    // A 1e-10 change in x0 should alter at least 99% of the 65536 mask bytes.
    const LorenzParams base = key(0.1, 0.2, 0.3);
    LorenzParams moved = base;
    moved.x0 += 1e-10;
    const double frac = mask_change_fraction(base, moved, 65536);
    RecordProperty("mask_change_fraction", std::to_string(frac));
    EXPECT_GE(frac, 0.99) << "fraction of mask bytes changed: " << frac;
}
