#include <doctest.h>

#include <vector>

#include "gstbc/quotient.hpp"
#include "gstbc/schemes.hpp"
#include "helpers.hpp"

using namespace gstbc;

namespace {

std::vector<std::uint8_t> random_bits(Rng& rng, std::size_t n) {
    std::vector<std::uint8_t> b(n);
    for (auto& x : b) x = rng.bit();
    return b;
}

std::vector<std::uint8_t> bits_of(std::uint64_t v, std::size_t n) {
    std::vector<std::uint8_t> b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = (v >> i) & 1;
    return b;
}

double mean_transmitted_energy(const SchemeConfig& s, Rng& rng, int blocks) {
    double acc = 0;
    std::size_t count = 0;
    for (int t = 0; t < blocks; ++t) {
        const auto blk = encode(s, random_bits(rng, s.bits_per_block));
        for (const auto& w : blk.words)
            for (int k = 0; k < 4; ++k) {
                acc += std::norm(w.coords[k].to_complex() - blk.offset[k]);
                ++count;
            }
    }
    return acc / static_cast<double>(count);
}

}  // namespace

TEST_CASE("rational arithmetic") {
    CHECK(Rational{6, 4}.reduced().num == 3);
    CHECK(Rational{6, 4}.reduced().den == 2);
    CHECK(Rational{1, 2} + Rational{1, 3} == Rational{5, 6});
    CHECK(Rational{3, 2} / Rational{3, 4} == Rational{2, 1});
    CHECK(Rational{-2, -4}.reduced().den > 0);
}

TEST_CASE("constellations") {
    const auto b = Constellation::bpsk(), q4 = Constellation::qam4(), q16 = Constellation::qam16();
    CHECK(b.bits() == 1);
    CHECK(q4.bits() == 2);
    CHECK(q16.bits() == 4);
    CHECK(b.energy == Rational{1, 4});
    CHECK(q4.energy == Rational{1, 2});
    CHECK(q16.energy == Rational{5, 2});
    CHECK(q4.centroid == cplx(0.5, 0.5));
    CHECK(q16.centroid == cplx(1.5, 1.5));
    CHECK(q4.points[1] == GaussianInt{1, 0});
    CHECK(q4.points[2] == GaussianInt{0, 1});
    // low label bits carry the residue mod 2
    for (int l = 0; l < 16; ++l) {
        CHECK(((q16.points[l].re & 1) == (l & 1)));
        CHECK(((q16.points[l].im & 1) == ((l >> 1) & 1)));
    }
}

TEST_CASE("scheme parameters") {
    const auto mix = make_scheme(SchemeKind::UncodedBpskMix, 2);
    CHECK(mix.energy == Rational{3, 8});
    CHECK(mix.spectral_efficiency == Rational{3, 1});
    const auto bpsk = make_scheme(SchemeKind::UncodedBpsk, 4);
    CHECK(bpsk.energy == Rational{1, 4});
    CHECK(bpsk.spectral_efficiency == Rational{2, 1});
    CHECK(bpsk.label() == "uncoded_bpsk_L4");
    const auto six = make_scheme(SchemeKind::Uncoded6Bpcu, 4);
    CHECK(six.energy == Rational{3, 2});
    CHECK(six.spectral_efficiency == Rational{6, 1});
    CHECK(make_scheme(SchemeKind::Uncoded4Qam).energy == Rational{1, 2});

    const auto rep = make_scheme(SchemeKind::RepetitionId);
    CHECK(rep.block_length == 2);
    CHECK(rep.bits_per_block == 12);
    CHECK(rep.spectral_efficiency == Rational{3, 1});
    CHECK(rep.energy == Rational{1, 2});

    const auto g4 = make_scheme(SchemeKind::Grs4Qam, 1, RSCode(4, 2));
    CHECK(g4.block_length == 4);
    CHECK(g4.bits_per_block == 16);
    CHECK(g4.spectral_efficiency == Rational{2, 1});
    CHECK(g4.label() == "grs_4qam_4_2_ml");
    CHECK(make_scheme(SchemeKind::Grs4Qam, 1, RSCode(8, 4), DecoderKind::Suboptimal).label() == "grs_4qam_8_4_sub");

    const auto g16 = make_scheme(SchemeKind::Grs16Qam, 1, RSCode(4, 2));
    CHECK(g16.bits_per_block == 48);
    CHECK(g16.spectral_efficiency == Rational{6, 1});
    CHECK(g16.energy == Rational{5, 2});

    CHECK_THROWS_AS(make_scheme(SchemeKind::Grs4Qam), std::invalid_argument);
    CHECK_THROWS_AS(make_scheme(SchemeKind::RepetitionId, 1, RSCode(4, 2)), std::invalid_argument);
    CHECK_THROWS_AS(make_scheme(SchemeKind::UncodedBpsk, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_scheme(SchemeKind::Grs16Qam, 1, RSCode(4, 2), DecoderKind::Suboptimal),
                    std::invalid_argument);
    CHECK(parse_scheme_kind("repetition_hbar") == SchemeKind::RepetitionHbar);
    CHECK_FALSE(parse_scheme_kind("nope").has_value());
}

TEST_CASE("repetition encoder") {
    const std::vector<std::uint8_t> zero(12, 0);
    const auto z = encode_repetition(zero, RepetitionVariant::Identity);
    REQUIRE(z.length() == 2);
    CHECK(z.words[0].is_zero());
    CHECK(z.words[1].is_zero());

    auto e1 = zero;
    e1[0] = 1;
    const auto& e = e_basis();
    const auto id = encode_repetition(e1, RepetitionVariant::Identity);
    CHECK(project_codeword_mod_1pi(id.words[0]) == e[0]);
    CHECK(project_codeword_mod_1pi(id.words[1]) == e[0]);
    const auto hb = encode_repetition(e1, RepetitionVariant::Hbar);
    CHECK(project_codeword_mod_1pi(hb.words[0]) == e[0]);
    CHECK(project_codeword_mod_1pi(hb.words[1]) == e[0] + e[1] + e[3]);

    for (int c = 0; c < 2; ++c)
        for (int i = 0; i < 2; ++i) {
            const auto p = repetition_point(c, i);
            CHECK(((p.re + p.im) & 1) == c);
        }
    CHECK_THROWS_AS(encode_repetition(std::vector<std::uint8_t>(11, 0), RepetitionVariant::Identity),
                    std::invalid_argument);

    for (std::uint64_t v = 0; v < 4096; ++v) {
        const auto blk = encode_repetition(bits_of(v, 12), RepetitionVariant::Hbar);
        const auto c = from_e_coordinates(static_cast<std::uint8_t>(v & 15));
        REQUIRE(project_codeword_mod_1pi(blk.words[0]) == c);
        REQUIRE(project_codeword_mod_1pi(blk.words[1]) == hbar(c));
    }
}

TEST_CASE("grs 4-QAM encoder") {
    const RSCode code(4, 2);
    const auto z = encode_grs4(std::vector<std::uint8_t>{0, 0}, code);
    REQUIRE(z.length() == 4);
    for (const auto& w : z.words) CHECK(w.is_zero());
    CHECK(z.offset[0] == cplx(0.5, 0.5));

    Rng rng(51);
    for (auto [n, k] : {std::pair{4, 2}, {6, 3}, {8, 4}, {16, 12}}) {
        const RSCode c(n, k);
        for (int t = 0; t < 100; ++t) {
            std::vector<std::uint8_t> msg(k);
            for (auto& b : msg) b = static_cast<std::uint8_t>(rng.next_u64());
            const auto v = rs_encode(msg, c);
            const auto blk = encode_grs4(msg, c);
            for (int i = 0; i < n; ++i) {
                CHECK(byte_unmap(project_codeword_mod_2(blk.words[i])) == v[i]);
                CHECK(byte_from_coords(blk.words[i].coords) == v[i]);
            }
        }
    }
    CHECK_THROWS_AS(encode_grs4(std::vector<std::uint8_t>{1}, code), std::invalid_argument);
}

TEST_CASE("grs 16-QAM encoder") {
    const RSCode code(4, 2);
    const auto z = encode_grs16(std::vector<std::uint8_t>{0, 0}, std::vector<std::uint8_t>(4, 0), code);
    for (const auto& w : z.words) CHECK(w.is_zero());
    CHECK(z.offset[0] == cplx(1.5, 1.5));

    Rng rng(52);
    for (int t = 0; t < 200; ++t) {
        std::vector<std::uint8_t> msg{static_cast<std::uint8_t>(rng.next_u64()), static_cast<std::uint8_t>(rng.next_u64())};
        std::vector<std::uint8_t> u1(4), u2(4);
        for (auto& b : u1) b = static_cast<std::uint8_t>(rng.next_u64());
        for (auto& b : u2) b = static_cast<std::uint8_t>(rng.next_u64());
        const auto a = encode_grs16(msg, u1, code), b = encode_grs16(msg, u2, code);
        const auto v = rs_encode(msg, code);
        for (int i = 0; i < 4; ++i) {
            CHECK(project_codeword_mod_2(a.words[i]) == project_codeword_mod_2(b.words[i]));
            CHECK(byte_unmap(project_codeword_mod_2(a.words[i])) == v[i]);
            for (const auto& c : a.words[i].coords) CHECK((c.re >= 0 && c.re <= 3 && c.im >= 0 && c.im <= 3));
        }
    }
    CHECK_THROWS_AS(encode_grs16(std::vector<std::uint8_t>{0, 0}, std::vector<std::uint8_t>(3, 0), code),
                    std::invalid_argument);
}

TEST_CASE("uncoded encoder") {
    const auto s = make_scheme(SchemeKind::UncodedBpskMix, 2);
    CHECK(uncoded_bits_per_word(s) == 6);
    const auto z = encode_uncoded(std::vector<std::uint8_t>(12, 0), s);
    REQUIRE(z.length() == 2);
    for (const auto& w : z.words) CHECK(w.is_zero());
    const auto cands = uncoded_candidates(s);
    CHECK(cands.size() == 64);
    CHECK(cands[1] == Coords{GaussianInt{1, 0}, {}, {}, {}});
    CHECK(cands[4] == Coords{GaussianInt{}, {1, 0}, {}, {}});
    CHECK_THROWS_AS(encode_uncoded(std::vector<std::uint8_t>(11, 0), s), std::invalid_argument);
    CHECK(uncoded_candidates(make_scheme(SchemeKind::Uncoded6Bpcu)).size() == 4096);
}

TEST_CASE("empirical transmitted energy") {
    Rng rng(53);
    // Exhaustive label averages are exact; random bits converge to the same value.
    for (auto kind : {SchemeKind::UncodedBpsk, SchemeKind::UncodedBpskMix, SchemeKind::Uncoded4Qam,
                      SchemeKind::Uncoded6Bpcu}) {
        const auto s = make_scheme(kind, 1);
        double acc = 0;
        const auto cands = uncoded_candidates(s);
        const auto off = s.offset();
        for (const auto& c : cands)
            for (int k = 0; k < 4; ++k) acc += std::norm(c[k].to_complex() - off[k]);
        CHECK(std::abs(acc / (4.0 * cands.size()) - s.energy.value()) < 1e-12);
    }
    for (auto s : {make_scheme(SchemeKind::RepetitionId), make_scheme(SchemeKind::Grs4Qam, 1, RSCode(4, 2)),
                   make_scheme(SchemeKind::Grs16Qam, 1, RSCode(4, 2))})
        CHECK(mean_transmitted_energy(s, rng, 4000) == doctest::Approx(s.energy.value()).epsilon(0.03));
}

TEST_CASE("bit packing") {
    const std::vector<std::uint8_t> bits{1, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0};
    const auto bytes = pack_bytes(bits);
    CHECK(bytes == std::vector<std::uint8_t>{0x81, 0x02});
    CHECK(unpack_bytes(bytes) == bits);
    CHECK_THROWS_AS(pack_bytes(std::vector<std::uint8_t>(7, 0)), std::invalid_argument);
}

TEST_CASE("encode dispatch") {
    Rng rng(54);
    const auto s = make_scheme(SchemeKind::Grs4Qam, 1, RSCode(6, 3));
    const auto bits = random_bits(rng, s.bits_per_block);
    const auto blk = encode(s, bits);
    const auto direct = encode_grs4(pack_bytes(bits), *s.rs);
    for (int i = 0; i < 6; ++i) CHECK(blk.words[i].coords == direct.words[i].coords);
    CHECK_THROWS_AS(encode(s, random_bits(rng, 8)), std::invalid_argument);
}
