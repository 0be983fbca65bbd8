#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include "chaosbox/netpbm.hpp"

namespace fs = std::filesystem;
using chaosbox::io::read_file;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

// Runs the CLI with stderr folded into stdout.
Run cli(const std::string& args) {
    const std::string cmd = std::string(CHAOSBOX_CLI) + " " + args + " 2>&1";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("chaosbox_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        FILE* f = std::fopen((dir_ / "k.key").c_str(), "w");
        std::fputs("x0=0.1\ny0=0.2\nz0=0.3\n", f);
        std::fclose(f);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string p(const char* name) { return (dir_ / name).string(); }
    std::string key() { return "--key " + p("k.key"); }
    static std::string camera() { return std::string(CHAOSBOX_TEST_DATA) + "/camera.pgm"; }

    fs::path dir_;
};

int count_lines_with(const std::string& text, const std::string& needle) {
    int n = 0;
    std::size_t pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        ++n;
        pos += needle.size();
    }
    return n;
}

} // namespace

TEST_F(Cli, EncryptIsDeterministicAndDecrypts) {
    ASSERT_EQ(cli(key() + " encrypt --in " + camera() + " --out " + p("c1.pgm")).status, 0);
    ASSERT_EQ(cli(key() + " encrypt --in " + camera() + " --out " + p("c2.pgm")).status, 0);
    EXPECT_EQ(read_file(p("c1.pgm")), read_file(p("c2.pgm")));
    ASSERT_EQ(cli(key() + " decrypt --in " + p("c1.pgm") + " --out " + p("d.pgm")).status, 0);
    EXPECT_EQ(read_file(p("d.pgm")), read_file(camera()));
    EXPECT_NE(read_file(p("c1.pgm")), read_file(camera()));
}

TEST_F(Cli, RawMode) {
    const auto img = chaosbox::io::read_image(camera());
    chaosbox::io::write_file(p("cam.raw"), img.data());
    ASSERT_EQ(cli(key() + " encrypt --raw 256x256 --in " + p("cam.raw") + " --out " + p("cam.enc")).status, 0);
    ASSERT_EQ(cli(key() + " encrypt --in " + camera() + " --out " + p("cam.pgm")).status, 0);
    EXPECT_EQ(read_file(p("cam.enc")), chaosbox::io::read_image(p("cam.pgm")).data());
    EXPECT_NE(cli(key() + " encrypt --raw 100x100 --in " + p("cam.raw") + " --out " + p("x")).status, 0);
}

TEST_F(Cli, KeystreamDumpsAreIdentical) {
    ASSERT_EQ(cli(key() + " keystream --length 4096 --out " + p("ks1.txt")).status, 0);
    ASSERT_EQ(cli(key() + " keystream --length 4096 --out " + p("ks2.txt")).status, 0);
    const auto a = read_file(p("ks1.txt"));
    EXPECT_EQ(a, read_file(p("ks2.txt")));
    EXPECT_EQ(count_lines_with(std::string(a.begin(), a.end()), "\n"), 4097);

    // encrypt --emit-keystream dumps the same stream for a 64x64 image.
    chaosbox::io::write_image(chaosbox::ImageBuffer(64, 64, 1), p("z.pgm"));
    ASSERT_EQ(cli(key() + " encrypt --in " + p("z.pgm") + " --out " + p("z.enc.pgm") + " --emit-keystream " +
                  p("ks3.txt"))
                  .status,
              0);
    EXPECT_EQ(read_file(p("ks3.txt")), a);
}

TEST_F(Cli, EnumeratePolys) {
    const auto r = cli("enumerate-polys --degree 8");
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(count_lines_with(r.out, "\tyes\tyes\t255\n"), 16);
    EXPECT_EQ(count_lines_with(r.out, "\tyes\t"), 30);
    EXPECT_NE(r.out.find("0x11D\tx^8+x^4+x^3+x^2+1\tyes\tyes\t255"), std::string::npos);
    const auto prim = cli("enumerate-polys --degree 4 --primitive-only");
    EXPECT_EQ(count_lines_with(prim.out, "\n"), 3);
}

TEST_F(Cli, GenerateAndAnalyze) {
    ASSERT_EQ(cli("gen-sbox --poly-index 1 --lft 32,22,11,8 --out " + p("s.txt")).status, 0);
    const auto r = cli("analyze-sbox --in " + p("s.txt"));
    ASSERT_EQ(r.status, 0) << r.out;
    EXPECT_NE(r.out.find("N.L=112.000000"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("DP=0.015625"), std::string::npos);
    EXPECT_NE(r.out.find("LP=0.062500"), std::string::npos);
    EXPECT_NE(r.out.find("bijective=yes"), std::string::npos);

    ASSERT_EQ(cli("gen-sbox --poly-index 3 --out " + p("s.bin")).status, 0);
    EXPECT_EQ(fs::file_size(p("s.bin")), 256u);
    EXPECT_EQ(cli("analyze-sbox --in " + p("s.bin")).status, 0);
}

TEST_F(Cli, MetricsAndAttackSim) {
    ASSERT_EQ(cli(key() + " encrypt --in " + camera() + " --out " + p("m.pgm")).status, 0);
    const auto r = cli(key() + " metrics --in " + p("m.pgm") + " --against " + camera());
    ASSERT_EQ(r.status, 0) << r.out;
    EXPECT_NE(r.out.find("NPCR"), std::string::npos);
    EXPECT_NE(r.out.find("entropy"), std::string::npos);
    EXPECT_NE(r.out.find("2^187"), std::string::npos);

    const auto s1 = cli("--seed 5 metrics --sample-pairs 2000 --in " + camera());
    const auto s2 = cli("--seed 5 metrics --sample-pairs 2000 --in " + camera());
    EXPECT_EQ(s1.out, s2.out);

    const auto a = cli(key() + " attack-sim --in " + camera() + " --corrupt 10000 --out " + p("rec.pgm"));
    ASSERT_EQ(a.status, 0) << a.out;
    EXPECT_NE(a.out.find("match_fraction="), std::string::npos);
    EXPECT_TRUE(fs::exists(p("rec.pgm")));
}

TEST_F(Cli, ErrorsAreSingleLineWithCode) {
    const std::pair<std::string, std::string> cases[] = {
        {"gen-sbox --lft 1,1,1,1", "error: E_DEGENERATE: "},
        {"encrypt --in " + camera() + " --out " + p("n.pgm"), "error: E_DOMAIN: "},
        {"analyze-sbox --in " + camera(), "error: E_FORMAT: "},
        {"enumerate-polys --degree 40", "error: E_USAGE: "},
        {"no-such-command", "error: E_USAGE: "},
        {key() + " keystream --length 0", "error: E_DOMAIN: "},
    };
    for (const auto& [args, prefix] : cases) {
        const auto r = cli(args);
        EXPECT_NE(r.status, 0) << args;
        EXPECT_EQ(r.out.rfind(prefix, 0), 0u) << args << " -> " << r.out;
        EXPECT_EQ(count_lines_with(r.out, "\n"), 1) << r.out;
    }
}

TEST_F(Cli, BadKeyFileReportsLine) {
    FILE* f = std::fopen(p("bad.key").c_str(), "w");
    std::fputs("x0=0.1\ny0=zz\nz0=0.3\n", f);
    std::fclose(f);
    const auto r = cli("--key " + p("bad.key") + " encrypt --in " + camera() + " --out " + p("n.pgm"));
    EXPECT_NE(r.status, 0);
    EXPECT_NE(r.out.find("E_FORMAT"), std::string::npos);
    EXPECT_NE(r.out.find("bad.key:2:"), std::string::npos) << r.out;
}
