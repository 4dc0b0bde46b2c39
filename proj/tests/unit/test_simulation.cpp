#include <doctest.h>

#include <cmath>
#include <sstream>

#include "gstbc/simulation.hpp"

using namespace gstbc;

namespace {

SweepConfig small_sweep() {
    SweepConfig c;
    c.schemes = {make_scheme(SchemeKind::UncodedBpskMix, 2), make_scheme(SchemeKind::RepetitionId)};
    c.snr_db = {4.0, 8.0};
    c.min_frames = 300;
    c.min_frame_errors = 20;
    c.max_frames = 5000;
    c.seed = 99;
    return c;
}

std::string csv_of(const SweepResult& r) {
    std::ostringstream os;
    write_csv(os, r);
    return os.str();
}

}  // namespace

TEST_CASE("snr conventions") {
    const auto s = make_scheme(SchemeKind::Uncoded4Qam);
    CHECK(sweep_noise(s, 10.0, SnrConvention::SymbolEnergy).n0 == doctest::Approx(0.05));
    CHECK(sweep_noise(s, 10.0, SnrConvention::Lattice).n0 == doctest::Approx(0.1));
    CHECK(parse_snr_convention("es") == SnrConvention::SymbolEnergy);
    CHECK(parse_snr_convention("lattice") == SnrConvention::Lattice);
    CHECK(snr_convention_name(SnrConvention::Lattice) == "lattice");
    CHECK_THROWS_AS(parse_snr_convention("ebn0"), std::invalid_argument);
}

TEST_CASE("snr lists") {
    CHECK(parse_snr_list("0 2 4") == std::vector<double>{0, 2, 4});
    CHECK(parse_snr_list("0, 2, 4") == std::vector<double>{0, 2, 4});
    CHECK(parse_snr_list("4:2:10") == std::vector<double>{4, 6, 8, 10});
    CHECK(parse_snr_list("0:0.5:1") == std::vector<double>{0, 0.5, 1});
    CHECK_THROWS_AS(parse_snr_list("0:0:1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_snr_list("x"), std::invalid_argument);
}

TEST_CASE("scheme specs") {
    CHECK(parse_scheme_spec("grs_4qam:4:2:ml").label() == "grs_4qam_4_2_ml");
    CHECK(parse_scheme_spec("grs_4qam:8:4:sub").decoder == DecoderKind::Suboptimal);
    CHECK(parse_scheme_spec("uncoded_bpsk:4").block_length == 4);
    CHECK(parse_scheme_spec("repetition_hbar").kind == SchemeKind::RepetitionHbar);
    CHECK(parse_scheme_spec("grs_16qam:4:2").rs->n() == 4);
    CHECK_THROWS_AS(parse_scheme_spec("grs_4qam"), std::invalid_argument);
    CHECK_THROWS_AS(parse_scheme_spec("what"), std::invalid_argument);
    CHECK_THROWS_AS(parse_scheme_spec("repetition_id:4:2"), std::invalid_argument);
}

TEST_CASE("config file") {
    std::istringstream in(R"(# comment
snr_db = 0:5:10
min_frames = 50
min_frame_errors = 5
seed = 3
snr_convention = lattice
scheme = uncoded_bpsk:4

[scheme]
name = grs_4qam
n = 6
k = 3
decoder = sub
)");
    const auto c = parse_sweep_config(in);
    CHECK(c.snr_db == std::vector<double>{0, 5, 10});
    CHECK(c.min_frames == 50);
    CHECK(c.seed == 3);
    CHECK(c.snr_convention == SnrConvention::Lattice);
    REQUIRE(c.schemes.size() == 2);
    CHECK(c.schemes[1].label() == "grs_4qam_6_3_sub");
    std::istringstream bad("frobnicate = 1\n");
    CHECK_THROWS_AS(parse_sweep_config(bad), std::invalid_argument);
    CHECK_THROWS_AS(load_sweep_config("/nonexistent/file.cfg"), std::invalid_argument);
}

TEST_CASE("figure recipes") {
    for (auto name : {"repetition", "grs_ml", "suboptimal", "grs16"}) {
        const auto c = figure_config(name);
        CHECK_NOTHROW(c.validate());
        CHECK(c.snr_convention == SnrConvention::Lattice);
        for (std::size_t a = 0; a < c.schemes.size(); ++a)
            for (std::size_t b = a + 1; b < c.schemes.size(); ++b)
                CHECK(c.schemes[a].label() != c.schemes[b].label());
    }
    CHECK_THROWS_AS(figure_config("fig7"), std::invalid_argument);
}

TEST_CASE("validation") {
    auto c = small_sweep();
    CHECK_NOTHROW(c.validate());
    c.snr_db.clear();
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = small_sweep();
    c.coherence_blocks = 1;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = small_sweep();
    c.max_frames = 10;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("noiseless sweep has no errors") {
    auto c = small_sweep();
    c.noiseless = true;
    c.schemes.push_back(make_scheme(SchemeKind::Grs4Qam, 1, RSCode(4, 2)));
    c.schemes.push_back(make_scheme(SchemeKind::Grs16Qam, 1, RSCode(4, 2)));
    c.min_frames = 256;
    c.max_frames = 256;
    const auto r = run_sweep(c);
    CHECK(r.points.size() == 8);
    for (const auto& p : r.points) {
        CHECK(p.errors == 0);
        CHECK(p.fer == 0.0);
    }
}

TEST_CASE("sweeps are deterministic and independent of the worker count") {
    auto c = small_sweep();
    c.workers = 1;
    const auto a = csv_of(run_sweep(c));
    c.workers = 4;
    const auto b = csv_of(run_sweep(c));
    CHECK(a == b);
    CHECK(a == csv_of(run_sweep(c)));
    c.seed = 100;
    CHECK(a != csv_of(run_sweep(c)));
}

TEST_CASE("stop rule") {
    const auto c = small_sweep();
    std::size_t calls = 0;
    const auto r = run_sweep(c, [&](const SweepPoint&) { ++calls; });
    CHECK(calls == r.points.size());
    for (const auto& p : r.points) {
        CHECK(p.frames >= c.min_frames);
        CHECK(p.frames <= c.max_frames);
        CHECK(p.frames % kFrameBatch == 0);
        CHECK(p.fer == doctest::Approx(static_cast<double>(p.errors) / p.frames));
        CHECK((p.errors >= c.min_frame_errors || p.capped));
    }
    const auto curve = r.curve(c.schemes[0].label());
    REQUIRE(curve.size() == 2);
    CHECK(curve[0].fer > curve[1].fer);
}

TEST_CASE("frame seeds") {
    CHECK(frame_seed(1, "a", 4.0, 0) == frame_seed(1, "a", 4.0, 0));
    CHECK(frame_seed(1, "a", 4.0, 0) != frame_seed(1, "a", 4.0, 1));
    CHECK(frame_seed(1, "a", 4.0, 0) != frame_seed(1, "b", 4.0, 0));
    CHECK(frame_seed(1, "a", 4.0, 0) != frame_seed(1, "a", 6.0, 0));
}

TEST_CASE("csv") {
    std::ostringstream empty;
    write_csv(empty, SweepResult{});
    CHECK(empty.str() == "scheme,snr_db,frames,errors,fer,seed\n");

    SweepResult r;
    r.points.push_back({"uncoded_bpsk_L4", 4.5, 1024, 101, 101.0 / 1024, 7, 0.0, false});
    r.points.push_back({"grs_4qam_4_2_ml", 10, 300000, 3, 1e-5, 7, 0.0, false});
    const auto text = csv_of(r);
    CHECK(text.rfind("scheme,snr_db,frames,errors,fer,seed\nuncoded_bpsk_L4,4.5,1024,101,", 0) == 0);
    std::istringstream in(text);
    const auto back = parse_csv(in);
    REQUIRE(back.points.size() == 2);
    for (int i = 0; i < 2; ++i) {
        CHECK(back.points[i].scheme == r.points[i].scheme);
        CHECK(back.points[i].snr_db == r.points[i].snr_db);
        CHECK(back.points[i].frames == r.points[i].frames);
        CHECK(back.points[i].errors == r.points[i].errors);
        CHECK(back.points[i].fer == r.points[i].fer);
        CHECK(back.points[i].seed == r.points[i].seed);
    }
    std::istringstream bad("a,b\n");
    CHECK_THROWS_AS(parse_csv(bad), std::invalid_argument);
}

TEST_CASE("interpolated crossing") {
    std::vector<SweepPoint> c(3);
    c[0].snr_db = 0, c[0].fer = 1e-1;
    c[1].snr_db = 2, c[1].fer = 1e-2;
    c[2].snr_db = 4, c[2].fer = 1e-4;
    CHECK(*snr_at_fer(c, 1e-2) == doctest::Approx(2.0));
    CHECK(*snr_at_fer(c, 1e-3) == doctest::Approx(3.0));
    CHECK(*snr_at_fer(c, std::pow(10.0, -1.5)) == doctest::Approx(1.0));
    CHECK_FALSE(snr_at_fer(c, 1e-6).has_value());
}
