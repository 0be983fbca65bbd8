// chaosbox command-line front end.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "chaosbox/chaosbox.hpp"

namespace fs = std::filesystem;
using namespace chaosbox;

namespace {

struct Globals {
    std::string key_path;
    std::uint64_t seed = 0;
};

struct ImageArgs {
    std::string in;
    std::string raw;

    ImageBuffer load() const {
        if (raw.empty()) return io::read_image(in);
        return io::read_raw(in, io::parse_raw_shape(raw));
    }
};

void save_image(const ImageBuffer& img, const std::string& path, bool raw) {
    if (raw) io::write_file(path, img.data());
    else io::write_image(img, path);
}

io::KeyFile require_key(const Globals& g) {
    if (g.key_path.empty()) throw error(errc::domain, "this command needs --key FILE");
    return io::read_key(g.key_path);
}

LftParams parse_lft(const std::string& text, int poly_index) {
    const auto key = io::parse_key("x0=0\ny0=0\nz0=0\nlft=" + text + "\n", "--lft");
    LftParams p = key.lft;
    p.poly_index = poly_index;
    return p;
}

// --- enumerate-polys -------------------------------------------------------

int run_enumerate(unsigned degree, bool primitive_only) {
    std::printf("hex\tpolynomial\tirreducible\tprimitive\torder\n");
    for (const auto& c : enumerate_classified(degree)) {
        if (primitive_only && !c.primitive) continue;
        const std::string order = c.order ? std::to_string(*c.order) : "-";
        std::printf("%s\t%s\t%s\t%s\t%s\n", poly::to_hex(c.poly).c_str(), poly::to_monomials(c.poly).c_str(),
                    c.irreducible ? "yes" : "no", c.primitive ? "yes" : "no", order.c_str());
    }
    return 0;
}

// --- gen-sbox / analyze-sbox ----------------------------------------------

int run_gen_sbox(int poly_index, const std::string& lft, const std::string& out, bool binary) {
    const SBox s = build_sbox(parse_lft(lft, poly_index));
    if (out.empty()) {
        std::fputs(io::format_sbox_text(s.table()).c_str(), stdout);
        return 0;
    }
    io::write_sbox(s.table(), out, binary ? io::SBoxFormat::binary : io::sbox_format_for(out));
    return 0;
}

int run_analyze(const std::string& in, bool binary) {
    const SBoxTable t = io::read_sbox_table(in, binary ? io::SBoxFormat::binary : io::sbox_format_for(in));
    const auto bij = scan_bijectivity(t);
    const auto r = analysis::analyze(t);
    const auto lpw = analysis::linear_probability_walsh(t);

    std::printf("S-box %s\n", in.c_str());
    std::printf("  %-12s %s\n", "bijective", bij.describe().c_str());
    std::printf("  %-12s %.3f (min %d)\n", "N.L", r.nonlinearity.average, r.nonlinearity.minimum);
    std::printf("  %-12s %.3f\n", "BIC", r.bic.nonlinearity);
    std::printf("  %-12s %.4f\n", "BIC of SAC", r.bic.sac);
    std::printf("  %-12s %.4f\n", "SAC", r.sac.mean);
    std::printf("  %-12s %u/256 (bias %.4f)\n", "LP", r.lp.max_count, r.lp.bias);
    std::printf("  %-12s %u/256 (%.5f)\n", "DP", r.dp.max_count, r.dp.probability);
    std::printf("\n");
    std::printf("bijective=%s\n", bij.bijective() ? "yes" : "no");
    std::printf("N.L=%.6f\n", r.nonlinearity.average);
    std::printf("N.L.min=%d\n", r.nonlinearity.minimum);
    std::printf("BIC=%.6f\n", r.bic.nonlinearity);
    std::printf("BIC_of_SAC=%.6f\n", r.bic.sac);
    std::printf("SAC=%.6f\n", r.sac.mean);
    std::printf("LP=%.6f\n", r.lp.bias);
    std::printf("LP.count=%u\n", r.lp.max_count);
    std::printf("LP.walsh=%.6f\n", lpw.bias);
    std::printf("DP=%.6f\n", r.dp.probability);
    std::printf("DP.count=%u\n", r.dp.max_count);
    return 0;
}

// --- encrypt / decrypt / keystream ----------------------------------------

void dump_keystream(const Keystream& ks, const std::string& path) {
    std::ostringstream out;
    out << "# index k perm mask selector\n";
    char line[96];
    for (std::size_t i = 0; i < ks.k.size(); ++i) {
        std::snprintf(line, sizeof line, "%zu %.17g %u %u %u\n", i, ks.k[i], ks.perm[i],
                      static_cast<unsigned>(ks.mask[i]), static_cast<unsigned>(ks.selectors[i]));
        out << line;
    }
    const std::string text = out.str();
    if (path == "-") {
        std::fputs(text.c_str(), stdout);
        return;
    }
    io::write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

int run_cipher(const Globals& g, const ImageArgs& in, const std::string& out, const std::string& emit, bool forward) {
    const CipherKey key = require_key(g).to_cipher_key();
    const ImageBuffer img = in.load();
    const Keystream ks = keystream_for(img, key);
    const ImageBuffer result = forward ? encrypt(img, key, ks) : decrypt(img, key, ks);
    save_image(result, out, !in.raw.empty());
    if (!emit.empty()) dump_keystream(ks, emit);
    return 0;
}

int run_keystream(const Globals& g, std::size_t length, const std::string& out) {
    const CipherKey key = require_key(g).to_cipher_key();
    if (length == 0) throw error(errc::domain, "--length must be positive");
    dump_keystream(make_keystream(key.lorenz(), length, static_cast<unsigned>(key.sboxes().size())), out);
    return 0;
}

// --- metrics / attack-sim -------------------------------------------------

std::string fmt_corr(const std::optional<double>& c) {
    if (!c) return "undefined";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", *c);
    return buf;
}

std::pair<int, int> parse_offset(const std::string& text) {
    int dr = 0, dc = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%d,%d%c", &dr, &dc, &tail) != 2 || (dr == 0 && dc == 0)) {
        throw error(errc::domain, "--offset needs two integers dr,dc, not both zero; got '" + text + "'");
    }
    return {dr, dc};
}

int run_metrics(const Globals& g, const ImageArgs& in, const ImageArgs& against, std::size_t sample_pairs,
                const std::string& offset) {
    const auto [dr, dc] = parse_offset(offset);
    const ImageBuffer img = in.load();
    std::printf("image %s: %zux%zu, %zu channel(s)\n\n", in.in.c_str(), img.width(), img.height(), img.channels());

    std::printf("%-8s %10s %12s %12s %12s %10s %12s %10s\n", "channel", "entropy", "corr_h", "corr_v", "chi2",
                "contrast", "homogeneity", "energy");
    // Per-channel statistics read one plane at a time.
    const Bytes flat = flatten(img);
    for (std::size_t ch = 0; ch < img.channels(); ++ch) {
        const ImageBuffer plane(img.width(), img.height(), 1,
                                Bytes(flat.begin() + static_cast<std::ptrdiff_t>(ch * img.pixels()),
                                      flat.begin() + static_cast<std::ptrdiff_t>((ch + 1) * img.pixels())));
        std::optional<double> ch_h, ch_v;
        if (sample_pairs > 0) {
            ch_h = metrics::adjacency_correlation_sampled(plane, metrics::Direction::horizontal, sample_pairs, g.seed);
            ch_v = metrics::adjacency_correlation_sampled(plane, metrics::Direction::vertical, sample_pairs, g.seed + 1);
        } else {
            ch_h = metrics::adjacency_correlation(plane, metrics::Direction::horizontal);
            ch_v = metrics::adjacency_correlation(plane, metrics::Direction::vertical);
        }
        const auto f = metrics::glcm_features(plane, dr, dc);
        std::printf("%-8zu %10.4f %12s %12s %12.2f %10.2f %12.4f %10.6f\n", ch, metrics::entropy(plane),
                    fmt_corr(ch_h).c_str(), fmt_corr(ch_v).c_str(), metrics::chi_square_uniform(plane), f.contrast,
                    f.homogeneity, f.energy);
    }
    std::printf("chi2 0.999 quantile (255 dof): %.2f; GLCM offset (%d,%d)\n", metrics::chi_square_255_q999, dr, dc);
    if (sample_pairs > 0) std::printf("correlation sampled over %zu pairs, seed %llu\n", sample_pairs,
                                      static_cast<unsigned long long>(g.seed));

    if (!against.in.empty()) {
        const ImageBuffer other = against.load();
        const auto av = metrics::npcr_uaci(img, other);
        std::printf("\n%-24s %10s %10s\n", "against", "NPCR", "UACI");
        std::printf("%-24s %10.4f %10.4f\n", against.in.c_str(), av.npcr, av.uaci);
    }
    if (!g.key_path.empty()) {
        std::printf("\n%s", metrics::keyspace_report(require_key(g).to_cipher_key()).c_str());
    }
    return 0;
}

int run_attack_sim(const Globals& g, const ImageArgs& in, std::size_t corrupt, const std::string& out) {
    const CipherKey key = require_key(g).to_cipher_key();
    const ImageBuffer img = in.load();
    const auto r = metrics::noise_experiment(img, key, corrupt);
    std::printf("corrupted_pixels=%zu\n", corrupt);
    std::printf("match_fraction=%.6f\n", r.match_fraction);
    std::printf("mean_absolute_error=%.4f\n", r.mean_absolute_error);
    if (!out.empty()) save_image(r.recovered, out, !in.raw.empty());
    return 0;
}

std::string one_line(std::string s) {
    for (char& c : s) {
        if (c == '\n' || c == '\r') c = ' ';
    }
    return s;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"chaosbox: GF(2^8) LFT S-boxes and a Lorenz-keyed image cipher"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    Globals g;
    app.add_option("--key", g.key_path, "Key file (name=value lines)")->check(CLI::ExistingFile);
    app.add_option("--seed", g.seed, "Seed for sampled statistics; the cipher takes no randomness");

    int rc = 0;

    auto* enumerate = app.add_subcommand("enumerate-polys", "Classify every degree-N polynomial with constant term 1");
    unsigned degree = 8;
    bool primitive_only = false;
    enumerate->add_option("--degree", degree, "Degree, 1..16")->required()->check(CLI::Range(1, 16));
    enumerate->add_flag("--primitive-only", primitive_only, "Print primitive polynomials only");
    enumerate->callback([&] { rc = run_enumerate(degree, primitive_only); });

    auto* gen = app.add_subcommand("gen-sbox", "Build the LFT S-box over p_I");
    int poly_index = 1;
    std::string lft = "32,22,11,8";
    std::string sbox_out;
    bool gen_binary = false;
    gen->add_option("--poly-index", poly_index, "Primitive polynomial p_I, I in 1..16")->check(CLI::Range(1, 16));
    gen->add_option("--lft", lft, "a,b,c,d");
    gen->add_option("--out", sbox_out, "Output file (stdout when omitted)");
    gen->add_flag("--binary", gen_binary, "Write 256 raw bytes");
    gen->callback([&] { rc = run_gen_sbox(poly_index, lft, sbox_out, gen_binary); });

    auto* analyze = app.add_subcommand("analyze-sbox", "Nonlinearity, SAC, BIC, LP and DP of an S-box file");
    std::string sbox_in;
    bool analyze_binary = false;
    analyze->add_option("--in", sbox_in, "S-box file")->required()->check(CLI::ExistingFile);
    analyze->add_flag("--binary", analyze_binary, "Input is 256 raw bytes");
    analyze->callback([&] { rc = run_analyze(sbox_in, analyze_binary); });

    ImageArgs img_in;
    std::string img_out;
    std::string emit;
    auto add_image_in = [&](CLI::App* sub, ImageArgs& args) {
        sub->add_option("--in", args.in, "PGM/PPM image, or raw bytes with --raw")->required()->check(CLI::ExistingFile);
        sub->add_option("--raw", args.raw, "Headerless input of shape WxH or WxHxC");
    };

    auto* enc = app.add_subcommand("encrypt", "Encrypt an image");
    auto* dec = app.add_subcommand("decrypt", "Decrypt an image");
    for (auto* sub : {enc, dec}) {
        add_image_in(sub, img_in);
        sub->add_option("--out", img_out, "Output image")->required();
        sub->add_option("--emit-keystream", emit, "Dump k/perm/mask/selectors to FILE. Reveals the key stream");
    }
    enc->callback([&] { rc = run_cipher(g, img_in, img_out, emit, true); });
    dec->callback([&] { rc = run_cipher(g, img_in, img_out, emit, false); });

    auto* met = app.add_subcommand("metrics", "Entropy, correlation, chi-square, GLCM, and NPCR/UACI");
    ImageArgs against;
    std::size_t sample_pairs = 0;
    add_image_in(met, img_in);
    met->add_option("--against", against.in, "Second image for NPCR/UACI")->check(CLI::ExistingFile);
    met->add_option("--sample-pairs", sample_pairs, "Estimate correlation from N random pairs (uses --seed)");
    std::string offset = "0,1";
    met->add_option("--offset", offset, "GLCM pixel-pair offset dr,dc");
    met->callback([&] {
        against.raw = img_in.raw;
        rc = run_metrics(g, img_in, against, sample_pairs, offset);
    });

    auto* attack = app.add_subcommand("attack-sim", "Whiten the first N ciphertext pixels and decrypt");
    std::size_t corrupt = 10000;
    add_image_in(attack, img_in);
    attack->add_option("--corrupt", corrupt, "Pixels set to 255 before decryption");
    attack->add_option("--out", img_out, "Write the recovered image");
    attack->callback([&] { rc = run_attack_sim(g, img_in, corrupt, img_out); });

    auto* keys = app.add_subcommand("keystream", "Dump the keystream for a key. Reveals the key stream");
    std::size_t length = 0;
    std::string ks_out = "-";
    keys->add_option("--length", length, "Number of entries (pixels per plane)")->required();
    keys->add_option("--out", ks_out, "Output file, '-' for stdout");
    keys->callback([&] { rc = run_keystream(g, length, ks_out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: E_USAGE: " << one_line(e.what()) << "\n";
        return 2;
    } catch (const error& e) {
        std::cerr << "error: " << code_name(e.code()) << ": " << one_line(e.what()) << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: E_INTERNAL: " << one_line(e.what()) << "\n";
        return 3;
    }
    return rc;
}
