// gstbc: Golden space-time coded modulation simulator and analysis driver.

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "gstbc/analysis.hpp"
#include "gstbc/channel.hpp"
#include "gstbc/decoders.hpp"
#include "gstbc/kernels.hpp"
#include "gstbc/quotient.hpp"
#include "gstbc/simulation.hpp"

using namespace gstbc;

namespace {

// Exit codes: 0 success, 1 invariant violation, 2 bad input.
constexpr int kViolation = 1;
constexpr int kBadInput = 2;

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << text;
}

int cmd_sweep(const std::string& config_path, const std::string& figure, const std::vector<std::string>& specs,
              const std::string& snr, std::optional<std::uint64_t> seed, std::optional<std::uint64_t> min_frames,
              std::optional<std::uint64_t> min_errors, std::optional<std::uint64_t> max_frames,
              std::optional<unsigned> workers, bool noiseless, const std::string& convention, std::string output) {
    SweepConfig cfg;
    if (!config_path.empty()) {
        cfg = load_sweep_config(config_path);
    } else if (!figure.empty()) {
        cfg = figure_config(figure);
    } else {
        for (const auto& s : specs) cfg.schemes.push_back(parse_scheme_spec(s));
    }
    if (!snr.empty()) cfg.snr_db = parse_snr_list(snr);
    if (seed) cfg.seed = *seed;
    if (min_frames) cfg.min_frames = *min_frames;
    if (min_errors) cfg.min_frame_errors = *min_errors;
    if (max_frames) cfg.max_frames = *max_frames;
    if (workers) cfg.workers = *workers;
    if (noiseless) cfg.noiseless = true;
    if (!convention.empty()) cfg.snr_convention = parse_snr_convention(convention);
    if (!output.empty()) cfg.output = output;

    auto res = run_sweep(cfg, [](const SweepPoint& p) {
        std::cerr << p.scheme << " snr " << p.snr_db << " dB: " << p.errors << "/" << p.frames << " fer " << p.fer
                  << " (" << std::fixed << std::setprecision(1) << p.wall_time << " s)" << std::defaultfloat
                  << std::setprecision(6) << "\n";
        if (p.capped)
            std::cerr << "warning: " << p.scheme << " at " << p.snr_db << " dB hit the frame cap with " << p.errors
                      << " errors\n";
    });
    std::ostringstream csv;
    write_csv(csv, res);
    emit(cfg.output, csv.str());
    return 0;
}

int cmd_spectrum(const std::string& spec, std::size_t terms, const std::string& output) {
    const auto scheme = parse_scheme_spec(spec);
    const auto s = det_spectrum(scheme);
    std::cout << scheme.label() << ": " << s.q_series(terms) << "\n";
    std::cout << "codewords " << s.total() << ", max deviation from integer " << s.max_deviation << "\n";
    if (!output.empty()) {
        std::ostringstream csv;
        write_spectrum_csv(csv, s);
        emit(output, csv.str());
    }
    return 0;
}

int cmd_dmin(const std::string& spec, bool pairwise) {
    const auto scheme = parse_scheme_spec(spec);
    const auto d = pairwise ? delta_min_pairwise(scheme) : delta_min_search(scheme);
    std::cout << scheme.label() << " delta_min = " << d << " delta";
    if (scheme.rs) std::cout << " (d_min^2 = " << scheme.rs->d_min() * scheme.rs->d_min() << ")";
    std::cout << "\n";
    return 0;
}

std::int64_t known_delta(const SchemeConfig& scheme, std::optional<std::int64_t> given) {
    if (given) return *given;
    if (scheme.bits_per_block <= 24) return delta_min_search(scheme);
    return coset_bound(scheme);
}

int cmd_gain(const std::string& spec, const std::string& reference, std::optional<std::int64_t> delta,
             std::optional<std::int64_t> ref_delta, const std::string& output) {
    const auto scheme = parse_scheme_spec(spec);
    const auto ref = parse_scheme_spec(reference);
    const auto g = asymptotic_gain(scheme, known_delta(scheme, delta), ref, known_delta(ref, ref_delta));
    std::ostringstream csv;
    write_gain_csv(csv, g);
    std::cout << scheme.label() << " vs " << ref.label() << ": gamma = "
              << (g.gamma_exact ? to_string(*g.gamma_exact) : "sqrt(" + to_string(g.gamma_squared) + ")") << " = "
              << g.gamma_as << " (" << g.gamma_db << " dB)\n";
    if (!output.empty()) emit(output, csv.str());
    return 0;
}

int cmd_bounds(const std::string& spec, std::uint64_t samples, std::uint64_t seed) {
    const auto scheme = parse_scheme_spec(spec);
    const auto r = verify_bounds(scheme, samples, seed);
    std::cout << scheme.label() << ": " << r.checked << " nonzero codewords checked, min det " << r.observed_min
              << " delta, coset bound " << r.coset_bound << ", margins (w_H^2) " << r.hamming_margin << " (coset) "
              << r.coset_margin << "\n";
    return 0;
}

int cmd_selftest() {
    int failures = 0;
    auto check = [&](bool ok, const std::string& what) {
        std::cout << (ok ? "ok    " : "FAIL  ") << what << "\n";
        if (!ok) ++failures;
    };

    check(reduced_discriminant_check() == GaussianInt{25, 0}, "reduced discriminant = 25");

    bool psi_ok = true;
    for (int x = 0; x < 16 && psi_ok; ++x)
        for (int y = 0; y < 16; ++y) {
            const auto wx = OrderElement::from_coefficients(
                {GaussianInt{x & 1, 0}, GaussianInt{(x >> 1) & 1, 0}, GaussianInt{(x >> 2) & 1, 0},
                 GaussianInt{(x >> 3) & 1, 0}});
            const auto wy = OrderElement::from_coefficients(
                {GaussianInt{y & 1, 0}, GaussianInt{(y >> 1) & 1, 0}, GaussianInt{(y >> 2) & 1, 0},
                 GaussianInt{(y >> 3) & 1, 0}});
            if (!(project_mod_1pi(wx * wy) == project_mod_1pi(wx) * project_mod_1pi(wy))) psi_ok = false;
        }
    check(psi_ok, "psi multiplicative on 16 x 16 pairs");

    const auto rep = det_spectrum(make_scheme(SchemeKind::RepetitionId), 1);
    check(rep.min_nonzero() == 4 && rep.total() == 4096, "repetition delta_min = 4");

    bool kernels_ok = true;
    if (const auto* simd = kernels::avx2_table() ? kernels::avx2_table() : kernels::neon_table()) {
        Rng rng(7);
        kernels::MatrixSoA pts(37);
        for (std::size_t i = 0; i < pts.size(); ++i)
            pts.set(i, {rng.complex_gaussian(1), rng.complex_gaussian(1), rng.complex_gaussian(1),
                        rng.complex_gaussian(1)});
        const ComplexMat2 y{rng.complex_gaussian(1), rng.complex_gaussian(1), rng.complex_gaussian(1),
                            rng.complex_gaussian(1)};
        std::vector<double> a(pts.size()), b(pts.size());
        kernels::scalar_table().squared_distances(pts, kernels::flatten(y), a.data());
        simd->squared_distances(pts, kernels::flatten(y), b.data());
        kernels_ok = a == b;
    }
    check(kernels_ok, std::string("kernel ") + std::string(kernels::isa_name(kernels::active().isa)) +
                          " matches scalar reference");

    for (const char* spec : {"uncoded_bpsk:2", "uncoded_bpsk_mix:2", "uncoded_4qam:1", "uncoded_6bpcu:2",
                             "repetition_id", "repetition_hbar", "grs_4qam:4:2:ml", "grs_4qam:4:2:sub",
                             "grs_16qam:4:2"}) {
        const auto scheme = parse_scheme_spec(spec);
        const Receiver rx(scheme);
        bool ok = true;
        for (std::uint64_t f = 0; f < 20; ++f)
            if (simulate_frame(scheme, rx, NoiseConfig::noiseless(), 0, derive_seed(99, f))) ok = false;
        check(ok, scheme.label() + " noiseless round trip");
    }

    try {
        verify_bounds(make_scheme(SchemeKind::Grs4Qam, 1, RSCode(4, 2)));
        check(true, "GRS(4,2,3) bounds");
    } catch (const BoundViolation& e) {
        check(false, e.what());
    }
    return failures == 0 ? 0 : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Golden space-time coded modulation: simulation and analysis"};
    app.require_subcommand(1);

    auto* sweep = app.add_subcommand("sweep", "Monte Carlo FER sweep, CSV output");
    std::string config_path, figure, snr, convention, output;
    std::vector<std::string> specs;
    std::optional<std::uint64_t> seed, min_frames, min_errors, max_frames;
    std::optional<unsigned> workers;
    bool noiseless = false;
    sweep->add_option("-c,--config", config_path, "key = value config file")->check(CLI::ExistingFile);
    sweep->add_option("-f,--figure", figure, "named recipe: repetition, grs_ml, suboptimal, grs16");
    sweep->add_option("-s,--scheme", specs, "scheme spec, e.g. grs_4qam:4:2:ml (repeatable)");
    sweep->add_option("--snr", snr, "SNR list \"0 2 4\" or range start:step:stop (dB)");
    sweep->add_option("--seed", seed, "master seed");
    sweep->add_option("--min-frames", min_frames);
    sweep->add_option("--min-errors", min_errors);
    sweep->add_option("--max-frames", max_frames);
    sweep->add_option("-j,--workers", workers, "threads (default: all cores)");
    sweep->add_flag("--noiseless", noiseless);
    sweep->add_option("--snr-convention", convention, "es or lattice");
    sweep->add_option("-o,--output", output, "CSV path (default stdout)");

    auto* spectrum = app.add_subcommand("spectrum", "exhaustive block determinant spectrum");
    std::string spec;
    std::size_t terms = 8;
    spectrum->add_option("scheme", spec)->required();
    spectrum->add_option("-t,--terms", terms, "q-series terms to print");
    spectrum->add_option("-o,--output", output, "CSV of det/delta counts");

    auto* dmin = app.add_subcommand("dmin", "minimum block determinant search");
    bool pairwise = false;
    dmin->add_option("scheme", spec)->required();
    dmin->add_flag("--pairwise", pairwise, "over codeword differences (small codebooks)");

    auto* gain = app.add_subcommand("gain", "asymptotic coding gain against a reference");
    std::string reference = "uncoded_bpsk:1";
    std::optional<std::int64_t> delta, ref_delta;
    gain->add_option("scheme", spec)->required();
    gain->add_option("-r,--reference", reference, "reference scheme spec");
    gain->add_option("--delta", delta, "delta_min of the scheme in units of delta (default: search or bound)");
    gain->add_option("--reference-delta", ref_delta);
    gain->add_option("-o,--output", output);

    auto* bounds = app.add_subcommand("bounds", "check det >= w_H^2 delta and the coset bound");
    std::uint64_t samples = 0, bseed = 1;
    bounds->add_option("scheme", spec)->required();
    bounds->add_option("-n,--samples", samples, "random codewords (0: exhaustive)");
    bounds->add_option("--seed", bseed);

    auto* selftest = app.add_subcommand("selftest", "quick invariant checks");

    CLI11_PARSE(app, argc, argv);
    try {
        if (sweep->parsed())
            return cmd_sweep(config_path, figure, specs, snr, seed, min_frames, min_errors, max_frames, workers,
                             noiseless, convention, output);
        if (spectrum->parsed()) return cmd_spectrum(spec, terms, output);
        if (dmin->parsed()) return cmd_dmin(spec, pairwise);
        if (gain->parsed()) return cmd_gain(spec, reference, delta, ref_delta, output);
        if (bounds->parsed()) return cmd_bounds(spec, samples, bseed);
        if (selftest->parsed()) return cmd_selftest();
    } catch (const BoundViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kViolation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const std::runtime_error& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kViolation;
    }
    return 0;
}
