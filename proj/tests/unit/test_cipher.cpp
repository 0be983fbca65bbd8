#include <gtest/gtest.h>

#include <chrono>
#include <random>

#include "chaosbox/cipher.hpp"

using namespace chaosbox;

namespace {

LorenzParams test_lorenz() {
    LorenzParams p;
    p.x0 = 0.1;
    p.y0 = 0.2;
    p.z0 = 0.3;
    return p;
}

const CipherKey& test_key() {
    static const CipherKey key(test_lorenz());
    return key;
}

ImageBuffer random_image(std::size_t w, std::size_t h, std::size_t c, std::mt19937& rng) {
    Bytes data(w * h * c);
    for (auto& b : data) b = static_cast<std::uint8_t>(rng());
    return ImageBuffer(w, h, c, std::move(data));
}

} // namespace

TEST(ImageBuffer, ShapeChecks) {
    EXPECT_THROW(ImageBuffer(0, 4, 1), error);
    EXPECT_THROW(ImageBuffer(4, 4, 2), error);
    EXPECT_THROW(ImageBuffer(2, 2, 1, Bytes(3)), error);
    ImageBuffer img(3, 2, 3);
    img.at(1, 2, 1) = 9;
    EXPECT_EQ(img.data()[(1 * 3 + 2) * 3 + 1], 9);
    EXPECT_EQ(img.pixels(), 6u);
}

TEST(Planes, FlattenAndReshapeAreInverse) {
    std::mt19937 rng(1);
    const auto img = random_image(5, 3, 3, rng);
    const Bytes flat = flatten(img);
    EXPECT_EQ(flat[0], img.at(0, 0, 0));
    EXPECT_EQ(flat[15], img.at(0, 0, 1));
    EXPECT_EQ(flat[30 + 7], img.at(1, 2, 2));
    EXPECT_EQ(reshape(flat, 5, 3, 3), img);
    EXPECT_THROW(reshape(flat, 5, 3, 1), error);
}

TEST(Permute, Semantics) {
    const Bytes v{10, 20, 30, 40};
    const std::vector<std::uint32_t> perm{2, 0, 3, 1};
    EXPECT_EQ(permute(v, perm), (Bytes{30, 10, 40, 20}));
    EXPECT_EQ(inverse_permute(permute(v, perm), perm), v);
    EXPECT_THROW(permute(v, std::vector<std::uint32_t>{0, 0, 1, 2}), error);
    EXPECT_THROW(permute(v, std::vector<std::uint32_t>{0, 1, 2}), error);
    EXPECT_THROW(permute(v, std::vector<std::uint32_t>{0, 1, 2, 4}), error);
}

TEST(XorMask, InvolutionAndLengthCheck) {
    const Bytes v{1, 2, 3};
    const Bytes m{0xFF, 0x0F, 0x00};
    EXPECT_EQ(xor_mask(v, m), (Bytes{0xFE, 0x0D, 0x03}));
    EXPECT_EQ(xor_mask(xor_mask(v, m), m), v);
    EXPECT_THROW(xor_mask(v, Bytes{1, 2}), error);
}

TEST(Substitute, SelectsPerPosition) {
    const auto sboxes = test_key().sboxes();
    const Bytes v{0, 0, 7};
    const Bytes sel{0, 5, 15};
    const Bytes out = substitute(v, sel, sboxes);
    EXPECT_EQ(out[0], sboxes[0](0));
    EXPECT_EQ(out[1], sboxes[5](0));
    EXPECT_EQ(out[2], sboxes[15](7));
    EXPECT_EQ(inverse_substitute(out, sel, sboxes), v);
    EXPECT_THROW(substitute(v, Bytes{0, 16, 0}, sboxes), error);
    EXPECT_THROW(substitute(v, Bytes{0, 1}, sboxes), error);
}

TEST(CipherKey, BuildsSixteenBoxesInOrder) {
    PolyOrder reversed{};
    for (int i = 0; i < 16; ++i) reversed[i] = 16 - i;
    const CipherKey k(test_lorenz(), default_lft, reversed);
    ASSERT_EQ(k.sboxes().size(), 16u);
    EXPECT_EQ(k.sboxes()[0], test_key().sboxes()[15]);
    EXPECT_EQ(k.sboxes()[15], test_key().sboxes()[0]);
    LorenzParams bad = test_lorenz();
    bad.step = 0;
    EXPECT_THROW(CipherKey{bad}, error);
}

TEST(Cipher, EncryptMatchesManualPipeline) {
    std::mt19937 rng(4);
    const auto img = random_image(7, 5, 1, rng);
    const auto ks = keystream_for(img, test_key());
    const Bytes plane = flatten(img);
    const Bytes expect = substitute(xor_mask(permute(plane, ks.perm), ks.mask), ks.selectors, test_key().sboxes());
    EXPECT_EQ(encrypt(img, test_key()).data(), expect);
}

TEST(Cipher, RoundTripGrid) {
    std::mt19937 rng(2023);
    const std::size_t dims[][3] = {{1, 1, 1}, {1, 1, 3}, {2, 3, 1}, {17, 1, 1}, {1, 19, 3},
                                   {31, 29, 3}, {64, 64, 1}, {100, 37, 3}, {256, 256, 1}, {256, 256, 3}};
    int count = 0;
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto& d : dims) {
        for (int rep = 0; rep < 10; ++rep) {
            const auto img = random_image(d[0], d[1], d[2], rng);
            const auto enc = encrypt(img, test_key());
            EXPECT_TRUE(enc.same_shape(img));
            ASSERT_EQ(decrypt(enc, test_key()), img) << d[0] << "x" << d[1] << "x" << d[2];
            ++count;
        }
    }
    EXPECT_EQ(count, 100);
    EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 60.0);
}

TEST(Cipher, WrongKeystreamLengthRejected) {
    std::mt19937 rng(6);
    const auto img = random_image(4, 4, 1, rng);
    const auto ks = make_keystream(test_lorenz(), 15);
    EXPECT_THROW(encrypt(img, test_key(), ks), error);
    EXPECT_THROW(decrypt(img, test_key(), ks), error);
}

TEST(Cipher, PlanesShareTheKeystream) {
    // Equal colour planes give equal cipher planes: the planes reuse one keystream.
    std::mt19937 rng(8);
    const auto grey = random_image(16, 16, 1, rng);
    ImageBuffer rgb(16, 16, 3);
    for (std::size_t r = 0; r < 16; ++r) {
        for (std::size_t c = 0; c < 16; ++c) {
            for (std::size_t ch = 0; ch < 3; ++ch) rgb.at(r, c, ch) = grey.at(r, c);
        }
    }
    const auto enc = encrypt(rgb, test_key());
    const auto enc_grey = encrypt(grey, test_key());
    for (std::size_t r = 0; r < 16; ++r) {
        for (std::size_t c = 0; c < 16; ++c) {
            for (std::size_t ch = 0; ch < 3; ++ch) ASSERT_EQ(enc.at(r, c, ch), enc_grey.at(r, c));
        }
    }
}

TEST(Cipher, SinglePlaintextChangeTouchesOneCipherByte) {
    // Every stage is position-wise, so a plaintext change cannot spread.
    std::mt19937 rng(9);
    auto img = random_image(32, 32, 1, rng);
    const auto c1 = encrypt(img, test_key());
    img.at(16, 16) ^= 1;
    const auto c2 = encrypt(img, test_key());
    std::size_t diff = 0;
    for (std::size_t i = 0; i < c1.data().size(); ++i) diff += c1.data()[i] != c2.data()[i];
    EXPECT_EQ(diff, 1u);
}

TEST(Cipher, Timing256) {
    std::mt19937 rng(10);
    const auto img = random_image(256, 256, 1, rng);
    const auto t0 = std::chrono::steady_clock::now();
    const auto enc = encrypt(img, test_key());
    const auto dec = decrypt(enc, test_key());
    EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 5.0);
    EXPECT_EQ(dec, img);
}
