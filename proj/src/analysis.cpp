#include "gstbc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>
#include <vector>

#include "gstbc/channel.hpp"
#include "gstbc/quotient.hpp"
#include "gstbc/tolerances.hpp"

namespace gstbc {

namespace {

// Upper triangle of a Hermitian 2x2 matrix.
struct Herm {
    double q00 = 0.0;
    double q11 = 0.0;
    cplx q01{};

    void add_outer(const ComplexMat2& x) {
        q00 += std::norm(x.a) + std::norm(x.b);
        q11 += std::norm(x.c) + std::norm(x.d);
        q01 += x.a * std::conj(x.c) + x.b * std::conj(x.d);
    }
    Herm& operator+=(const Herm& o) {
        q00 += o.q00;
        q11 += o.q11;
        q01 += o.q01;
        return *this;
    }
    double det() const { return q00 * q11 - std::norm(q01); }
};

unsigned resolve_workers(unsigned workers) {
    if (workers != 0) return workers;
    return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(begin, end, slot) over [0, total) split into `workers` ranges.
template <class Body>
void parallel_ranges(std::uint64_t total, unsigned workers, Body body) {
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(total, 1)));
    if (workers <= 1) {
        body(0, total, 0u);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::uint64_t chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t b = std::min(total, w * chunk);
        const std::uint64_t e = std::min(total, b + chunk);
        pool.emplace_back([&, b, e, w] {
            try {
                body(b, e, w);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::int64_t to_delta_units(double det, double& max_dev) {
    const double v = det / kDelta;
    const double r = std::round(v);
    const double dev = std::abs(v - r);
    max_dev = std::max(max_dev, dev);
    if (dev > tol::kIntegrality) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "block determinant " << v << " delta is not an integer multiple of delta";
        throw std::runtime_error(msg.str());
    }
    return static_cast<std::int64_t>(r);
}

std::vector<std::uint8_t> index_bits(std::uint64_t index, std::size_t count) {
    std::vector<std::uint8_t> bits(count);
    for (std::size_t b = 0; b < count; ++b) bits[b] = static_cast<std::uint8_t>((index >> b) & 1);
    return bits;
}

double lattice_det(const GoldenBlock& block) {
    Herm h;
    for (const auto& w : block.words) h.add_outer(w.matrix);
    return h.det();
}

std::string describe(const GoldenBlock& block) {
    std::ostringstream os;
    for (std::size_t i = 0; i < block.words.size(); ++i) {
        const auto& c = block.words[i].coords;
        os << (i ? " " : "") << "(" << c[0] << ", " << c[1] << ", " << c[2] << ", " << c[3] << ")";
    }
    return os.str();
}

struct Partial {
    std::map<std::int64_t, std::uint64_t> hist;
    double max_dev = 0.0;
};

DetSpectrum merge(std::vector<Partial>& parts) {
    DetSpectrum out;
    for (auto& p : parts) {
        for (const auto& [k, v] : p.hist) out.histogram[k] += v;
        out.max_deviation = std::max(out.max_deviation, p.max_dev);
    }
    return out;
}

DetSpectrum grs4_spectrum(const SchemeConfig& scheme, unsigned workers) {
    const RSCode& code = *scheme.rs;
    const auto n = static_cast<std::size_t>(code.n());
    const auto k = static_cast<std::size_t>(code.k());
    std::array<Herm, 256> q{};
    for (int b = 0; b < 256; ++b) q[b].add_outer(golden_encode(coords_from_byte(static_cast<std::uint8_t>(b))).matrix);

    const std::uint64_t total = codebook_size(scheme);
    std::vector<Partial> parts(workers);
    parallel_ranges(total, workers, [&](std::uint64_t b, std::uint64_t e, unsigned slot) {
        std::vector<std::uint8_t> msg(k), par(n - k);
        // Local flat histogram; determinants stay far below this bound for
        // 4-QAM blocks of short length.
        std::map<std::int64_t, std::uint64_t>& hist = parts[slot].hist;
        std::vector<std::uint64_t> flat(4096, 0);
        for (std::uint64_t m = b; m < e; ++m) {
            for (std::size_t t = 0; t < k; ++t) msg[t] = static_cast<std::uint8_t>(m >> (8 * t));
            code.parity(msg, par);
            Herm acc;
            for (auto s : msg) acc += q[s];
            for (auto s : par) acc += q[s];
            const std::int64_t key = to_delta_units(acc.det(), parts[slot].max_dev);
            if (key >= 0 && key < static_cast<std::int64_t>(flat.size()))
                ++flat[static_cast<std::size_t>(key)];
            else
                ++hist[key];
        }
        for (std::size_t key = 0; key < flat.size(); ++key)
            if (flat[key] != 0) hist[static_cast<std::int64_t>(key)] += flat[key];
    });
    return merge(parts);
}

}  // namespace

std::uint64_t DetSpectrum::total() const {
    std::uint64_t t = 0;
    for (const auto& [k, v] : histogram) t += v;
    return t;
}

std::optional<std::int64_t> DetSpectrum::min_nonzero() const {
    for (const auto& [k, v] : histogram)
        if (k != 0 && v != 0) return k;
    return std::nullopt;
}

std::string DetSpectrum::q_series(std::size_t max_terms) const {
    std::ostringstream os;
    std::size_t written = 0;
    for (const auto& [k, v] : histogram) {
        if (written == max_terms) break;
        if (written) os << " + ";
        if (k == 0)
            os << v;
        else
            os << (v == 1 ? "" : std::to_string(v)) << "q^" << k;
        ++written;
    }
    if (written < histogram.size()) os << " + ...";
    return os.str();
}

std::uint64_t codebook_size(const SchemeConfig& scheme) {
    if (scheme.bits_per_block > 24)
        throw std::length_error("codebook of " + scheme.label() + " has 2^" + std::to_string(scheme.bits_per_block) +
                                " words, above the enumeration limit of 2^24");
    return std::uint64_t{1} << scheme.bits_per_block;
}

DetSpectrum det_spectrum(const SchemeConfig& scheme, unsigned workers) {
    workers = resolve_workers(workers);
    const std::uint64_t total = codebook_size(scheme);
    if (scheme.kind == SchemeKind::Grs4Qam) return grs4_spectrum(scheme, workers);

    std::vector<Partial> parts(workers);
    parallel_ranges(total, workers, [&](std::uint64_t b, std::uint64_t e, unsigned slot) {
        for (std::uint64_t m = b; m < e; ++m) {
            const auto block = encode(scheme, index_bits(m, scheme.bits_per_block));
            ++parts[slot].hist[to_delta_units(lattice_det(block), parts[slot].max_dev)];
        }
    });
    return merge(parts);
}

std::int64_t delta_min_search(const SchemeConfig& scheme, unsigned workers) {
    const auto spec = det_spectrum(scheme, workers);
    const auto m = spec.min_nonzero();
    if (!m) throw std::runtime_error("delta_min_search: codebook has no nonzero codeword");
    return *m;
}

std::int64_t delta_min_pairwise(const SchemeConfig& scheme) {
    const std::uint64_t total = codebook_size(scheme);
    if (total > (std::uint64_t{1} << 13))
        throw std::length_error("delta_min_pairwise: " + std::to_string(total) + " codewords, limit is 2^13");
    std::vector<std::vector<ComplexMat2>> words;
    words.reserve(total);
    for (std::uint64_t m = 0; m < total; ++m)
        words.push_back(encode(scheme, index_bits(m, scheme.bits_per_block)).lattice_matrices());
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    double dev = 0.0;
    for (std::size_t i = 0; i < words.size(); ++i) {
        for (std::size_t j = i + 1; j < words.size(); ++j) {
            Herm h;
            for (std::size_t p = 0; p < words[i].size(); ++p) h.add_outer(words[i][p] - words[j][p]);
            const std::int64_t v = to_delta_units(h.det(), dev);
            best = std::min(best, v);
        }
    }
    return best;
}

std::string to_string(const Rational& r) {
    const Rational x = r.reduced();
    return x.den == 1 ? std::to_string(x.num) : std::to_string(x.num) + "/" + std::to_string(x.den);
}

namespace {

std::optional<std::int64_t> exact_sqrt(std::int64_t v) {
    if (v < 0) return std::nullopt;
    auto s = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(v))));
    while (s * s > v) --s;
    while ((s + 1) * (s + 1) <= v) ++s;
    if (s * s != v) return std::nullopt;
    return s;
}

}  // namespace

GainReport asymptotic_gain(Rational delta_min, Rational energy, Rational reference_delta,
                           Rational reference_energy) {
    if (delta_min.num <= 0 || reference_delta.num <= 0 || energy.num <= 0 || reference_energy.num <= 0)
        throw std::invalid_argument("asymptotic_gain: determinants and energies must be positive");
    GainReport g{delta_min.reduced(), energy.reduced(), reference_delta.reduced(), reference_energy.reduced(), {}, {},
                 0.0, 0.0};
    g.gamma_squared = (g.delta_min * g.reference_energy * g.reference_energy) /
                      (g.reference_delta * g.energy * g.energy);
    const auto sn = exact_sqrt(g.gamma_squared.num);
    const auto sd = exact_sqrt(g.gamma_squared.den);
    if (sn && sd) g.gamma_exact = Rational{*sn, *sd}.reduced();
    g.gamma_as = g.gamma_exact ? g.gamma_exact->value() : std::sqrt(g.gamma_squared.value());
    g.gamma_db = 10.0 * std::log10(g.gamma_as);
    return g;
}

GainReport asymptotic_gain(const SchemeConfig& scheme, std::int64_t delta_min, const SchemeConfig& reference,
                           std::int64_t reference_delta) {
    if (!(scheme.spectral_efficiency == reference.spectral_efficiency))
        throw std::invalid_argument("asymptotic_gain: " + scheme.label() + " and " + reference.label() +
                                    " differ in spectral efficiency");
    return asymptotic_gain(Rational{delta_min, 1}, scheme.energy, Rational{reference_delta, 1}, reference.energy);
}

std::int64_t coset_bound(const SchemeConfig& scheme) {
    switch (scheme.kind) {
        case SchemeKind::RepetitionId:
        case SchemeKind::RepetitionHbar: return 4;
        case SchemeKind::Grs4Qam: return std::int64_t{scheme.rs->d_min()} * scheme.rs->d_min();
        case SchemeKind::Grs16Qam:
            return std::min<std::int64_t>(16, std::int64_t{scheme.rs->d_min()} * scheme.rs->d_min());
        default: return 1;
    }
}

BoundsReport verify_bounds(const SchemeConfig& scheme, std::uint64_t samples, std::uint64_t seed) {
    BoundsReport rep;
    rep.coset_bound = coset_bound(scheme);
    rep.observed_min = std::numeric_limits<double>::infinity();
    rep.hamming_margin = std::numeric_limits<double>::infinity();
    rep.coset_margin = std::numeric_limits<double>::infinity();
    const std::uint64_t count = samples == 0 ? codebook_size(scheme) : samples;
    for (std::uint64_t m = 0; m < count; ++m) {
        std::vector<std::uint8_t> bits;
        if (samples == 0) {
            bits = index_bits(m, scheme.bits_per_block);
        } else {
            Rng rng(derive_seed(seed, m));
            bits.resize(scheme.bits_per_block);
            for (auto& b : bits) b = rng.bit();
        }
        const auto block = encode(scheme, bits);
        const std::size_t w = block.hamming_weight();
        if (w == 0) continue;
        ++rep.checked;
        const double d = lattice_det(block) / kDelta;
        const double margin = d - static_cast<double>(w * w);
        const double coset = d - static_cast<double>(rep.coset_bound);
        if (margin < -tol::kDeterminant)
            throw BoundViolation("det below w_H^2 delta for " + scheme.label(), describe(block));
        if (coset < -tol::kDeterminant)
            throw BoundViolation("det below the coset bound for " + scheme.label(), describe(block));
        rep.observed_min = std::min(rep.observed_min, d);
        rep.hamming_margin = std::min(rep.hamming_margin, margin);
        rep.coset_margin = std::min(rep.coset_margin, coset);
    }
    return rep;
}

void write_spectrum_csv(std::ostream& os, const DetSpectrum& spectrum) {
    os << "det_over_delta,count\n";
    for (const auto& [k, v] : spectrum.histogram) os << k << ',' << v << '\n';
}

void write_gain_csv(std::ostream& os, const GainReport& g) {
    os << "delta_min,energy,reference_delta,reference_energy,gamma_squared,gamma_as,gamma_db\n";
    os << to_string(g.delta_min) << ',' << to_string(g.energy) << ',' << to_string(g.reference_delta) << ','
       << to_string(g.reference_energy) << ',' << to_string(g.gamma_squared) << ','
       << (g.gamma_exact ? to_string(*g.gamma_exact) : std::to_string(g.gamma_as)) << ',' << g.gamma_db << '\n';
}

}  // namespace gstbc
