#include "gstbc/schemes.hpp"

#include <numeric>
#include <stdexcept>

#include "gstbc/quotient.hpp"

namespace gstbc {

Rational Rational::reduced() const {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    std::int64_t g = std::gcd(num, den);
    if (g == 0) g = 1;
    Rational r{num / g, den / g};
    if (r.den < 0) r = {-r.num, -r.den};
    return r;
}

namespace {

Constellation carve(std::string name, std::vector<GaussianInt> points) {
    Constellation c;
    c.name = std::move(name);
    c.points = std::move(points);
    // Integer arithmetic on 4*|p - mean|^2 keeps the energy exact.
    const auto m = static_cast<std::int64_t>(c.points.size());
    std::int64_t sr = 0, si = 0;
    for (const auto& p : c.points) {
        sr += p.re;
        si += p.im;
    }
    c.centroid = {static_cast<double>(sr) / static_cast<double>(m), static_cast<double>(si) / static_cast<double>(m)};
    std::int64_t acc = 0;  // sum |m p - s|^2
    for (const auto& p : c.points) {
        const std::int64_t dr = m * p.re - sr;
        const std::int64_t di = m * p.im - si;
        acc += dr * dr + di * di;
    }
    c.energy = Rational{acc, m * m * m}.reduced();
    return c;
}

void require_bits(std::span<const std::uint8_t> bits, std::size_t expected, const char* what) {
    if (bits.size() != expected)
        throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(expected) + " bits, got " +
                                    std::to_string(bits.size()));
    for (auto b : bits)
        if (b > 1) throw std::invalid_argument(std::string(what) + ": bit values must be 0 or 1");
}

ComplexCoords centroids(const std::array<Constellation, 4>& cs) {
    return {cs[0].centroid, cs[1].centroid, cs[2].centroid, cs[3].centroid};
}

}  // namespace

int Constellation::bits() const {
    int b = 0;
    while ((std::size_t{1} << b) < points.size()) ++b;
    return b;
}

Constellation Constellation::bpsk() { return carve("bpsk", {{0, 0}, {1, 0}}); }

Constellation Constellation::qam4() { return carve("4qam", {{0, 0}, {1, 0}, {0, 1}, {1, 1}}); }

Constellation Constellation::qam16() {
    std::vector<GaussianInt> pts(16);
    for (int l = 0; l < 16; ++l) pts[l] = {(l & 1) + 2 * ((l >> 2) & 1), ((l >> 1) & 1) + 2 * ((l >> 3) & 1)};
    return carve("16qam", std::move(pts));
}

std::string_view scheme_name(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::UncodedBpsk: return "uncoded_bpsk";
        case SchemeKind::UncodedBpskMix: return "uncoded_bpsk_mix";
        case SchemeKind::Uncoded4Qam: return "uncoded_4qam";
        case SchemeKind::Uncoded6Bpcu: return "uncoded_6bpcu";
        case SchemeKind::RepetitionId: return "repetition_id";
        case SchemeKind::RepetitionHbar: return "repetition_hbar";
        case SchemeKind::Grs4Qam: return "grs_4qam";
        case SchemeKind::Grs16Qam: return "grs_16qam";
    }
    return "unknown";
}

std::optional<SchemeKind> parse_scheme_kind(std::string_view name) {
    for (auto k : {SchemeKind::UncodedBpsk, SchemeKind::UncodedBpskMix, SchemeKind::Uncoded4Qam,
                   SchemeKind::Uncoded6Bpcu, SchemeKind::RepetitionId, SchemeKind::RepetitionHbar,
                   SchemeKind::Grs4Qam, SchemeKind::Grs16Qam})
        if (scheme_name(k) == name) return k;
    return std::nullopt;
}

bool is_uncoded(SchemeKind kind) {
    return kind == SchemeKind::UncodedBpsk || kind == SchemeKind::UncodedBpskMix ||
           kind == SchemeKind::Uncoded4Qam || kind == SchemeKind::Uncoded6Bpcu;
}

std::string SchemeConfig::label() const {
    std::string out(scheme_name(kind));
    if (is_uncoded(kind)) return out + "_L" + std::to_string(block_length);
    if (rs) out += "_" + std::to_string(rs->n()) + "_" + std::to_string(rs->k());
    if (kind == SchemeKind::Grs4Qam) out += decoder == DecoderKind::Ml ? "_ml" : "_sub";
    return out;
}

std::array<Constellation, 4> SchemeConfig::symbol_constellations() const {
    const auto b = Constellation::bpsk();
    const auto q4 = Constellation::qam4();
    const auto q16 = Constellation::qam16();
    switch (kind) {
        case SchemeKind::UncodedBpsk: return {b, b, b, b};
        case SchemeKind::UncodedBpskMix: return {q4, b, q4, b};
        case SchemeKind::Uncoded6Bpcu: return {q16, q4, q16, q4};
        case SchemeKind::Grs16Qam: return {q16, q16, q16, q16};
        default: return {q4, q4, q4, q4};
    }
}

ComplexCoords SchemeConfig::offset() const { return centroids(symbol_constellations()); }

SchemeConfig make_scheme(SchemeKind kind, std::size_t block_length, std::optional<RSCode> rs, DecoderKind decoder) {
    SchemeConfig cfg;
    cfg.kind = kind;
    cfg.decoder = decoder;
    const bool coded_rs = kind == SchemeKind::Grs4Qam || kind == SchemeKind::Grs16Qam;
    if (coded_rs && !rs) throw std::invalid_argument("make_scheme: " + std::string(scheme_name(kind)) +
                                                     " needs a Reed-Solomon code");
    if (!coded_rs && rs) throw std::invalid_argument("make_scheme: " + std::string(scheme_name(kind)) +
                                                     " takes no Reed-Solomon code");
    if (is_uncoded(kind)) {
        if (block_length == 0) throw std::invalid_argument("make_scheme: block length must be positive");
        cfg.block_length = block_length;
        std::size_t per_word = 0;
        for (const auto& c : cfg.symbol_constellations()) per_word += static_cast<std::size_t>(c.bits());
        cfg.bits_per_block = per_word * block_length;
    } else if (kind == SchemeKind::RepetitionId || kind == SchemeKind::RepetitionHbar) {
        cfg.block_length = 2;
        cfg.bits_per_block = 12;
    } else {
        cfg.rs = rs;
        cfg.block_length = static_cast<std::size_t>(rs->n());
        cfg.bits_per_block = kind == SchemeKind::Grs4Qam ? static_cast<std::size_t>(8 * rs->k())
                                                         : static_cast<std::size_t>(8 * (rs->k() + rs->n()));
    }
    if (kind == SchemeKind::Grs16Qam && decoder != DecoderKind::Ml)
        throw std::invalid_argument("make_scheme: grs_16qam supports the ML decoder only");
    cfg.spectral_efficiency =
        Rational{static_cast<std::int64_t>(cfg.bits_per_block), static_cast<std::int64_t>(2 * cfg.block_length)}
            .reduced();
    Rational e{0, 1};
    for (const auto& c : cfg.symbol_constellations()) e = e + c.energy;
    cfg.energy = e / Rational{4, 1};
    return cfg;
}

GaussianInt repetition_point(int coset_bit, int inner_bit) {
    if (coset_bit == 0) return inner_bit ? GaussianInt{1, 1} : GaussianInt{0, 0};
    return inner_bit ? GaussianInt{0, 1} : GaussianInt{1, 0};
}

GoldenBlock encode_repetition(std::span<const std::uint8_t> bits, RepetitionVariant variant) {
    require_bits(bits, 12, "encode_repetition");
    std::uint8_t c1 = 0;
    for (int k = 0; k < 4; ++k) c1 |= static_cast<std::uint8_t>(bits[k] << k);
    const M2F2 label = from_e_coordinates(c1);
    const std::uint8_t c2 = variant == RepetitionVariant::Identity ? c1 : e_coordinates(hbar(label));

    GoldenBlock block;
    block.offset = centroids(make_scheme(SchemeKind::RepetitionId).symbol_constellations());
    for (int pos = 0; pos < 2; ++pos) {
        const std::uint8_t c = pos == 0 ? c1 : c2;
        Coords coords{};
        for (int k = 0; k < 4; ++k) coords[k] = repetition_point((c >> k) & 1, bits[4 + 4 * pos + k]);
        block.words.push_back(golden_encode(coords));
    }
    return block;
}

GoldenBlock encode_grs4(std::span<const std::uint8_t> msg, const RSCode& code) {
    if (msg.size() != static_cast<std::size_t>(code.k()))
        throw std::invalid_argument("encode_grs4: message length " + std::to_string(msg.size()) + " != k = " +
                                    std::to_string(code.k()));
    const auto v = rs_encode(msg, code);
    GoldenBlock block;
    block.offset = ComplexCoords{cplx{0.5, 0.5}, cplx{0.5, 0.5}, cplx{0.5, 0.5}, cplx{0.5, 0.5}};
    block.words.reserve(v.size());
    for (auto sym : v) block.words.push_back(coset_leader_2(byte_map(sym)).lift);
    return block;
}

GoldenBlock encode_grs16(std::span<const std::uint8_t> msg, std::span<const std::uint8_t> uncoded,
                         const RSCode& code) {
    if (msg.size() != static_cast<std::size_t>(code.k()) || uncoded.size() != static_cast<std::size_t>(code.n()))
        throw std::invalid_argument("encode_grs16: expected " + std::to_string(code.k()) + " message and " +
                                    std::to_string(code.n()) + " uncoded bytes");
    const auto v = rs_encode(msg, code);
    GoldenBlock block;
    block.offset = ComplexCoords{cplx{1.5, 1.5}, cplx{1.5, 1.5}, cplx{1.5, 1.5}, cplx{1.5, 1.5}};
    for (std::size_t i = 0; i < v.size(); ++i) {
        Coords coords = coset_leader_2(byte_map(v[i])).lift.coords;
        const Coords inner = coords_from_byte(uncoded[i]);
        for (int k = 0; k < 4; ++k) coords[k] += GaussianInt{2, 0} * inner[k];
        block.words.push_back(golden_encode(coords));
    }
    return block;
}

std::size_t uncoded_bits_per_word(const SchemeConfig& config) {
    if (!is_uncoded(config.kind)) throw std::invalid_argument("uncoded_bits_per_word: not an uncoded scheme");
    return config.bits_per_block / config.block_length;
}

std::vector<Coords> uncoded_candidates(const SchemeConfig& config) {
    const auto cs = config.symbol_constellations();
    const std::size_t count = std::size_t{1} << uncoded_bits_per_word(config);
    std::vector<Coords> out(count);
    for (std::size_t label = 0; label < count; ++label) {
        std::size_t rest = label;
        for (int k = 0; k < 4; ++k) {
            const std::size_t m = cs[k].points.size();
            out[label][k] = cs[k].points[rest % m];
            rest /= m;
        }
    }
    return out;
}

GoldenBlock encode_uncoded(std::span<const std::uint8_t> bits, const SchemeConfig& config) {
    if (!is_uncoded(config.kind)) throw std::invalid_argument("encode_uncoded: not an uncoded scheme");
    require_bits(bits, config.bits_per_block, "encode_uncoded");
    const auto cs = config.symbol_constellations();
    GoldenBlock block;
    block.offset = centroids(cs);
    std::size_t pos = 0;
    for (std::size_t w = 0; w < config.block_length; ++w) {
        Coords coords{};
        for (int k = 0; k < 4; ++k) {
            std::size_t label = 0;
            for (int b = 0; b < cs[k].bits(); ++b) label |= std::size_t{bits[pos++]} << b;
            coords[k] = cs[k].points[label];
        }
        block.words.push_back(golden_encode(coords));
    }
    return block;
}

GoldenBlock encode(const SchemeConfig& config, std::span<const std::uint8_t> bits) {
    switch (config.kind) {
        case SchemeKind::RepetitionId: return encode_repetition(bits, RepetitionVariant::Identity);
        case SchemeKind::RepetitionHbar: return encode_repetition(bits, RepetitionVariant::Hbar);
        case SchemeKind::Grs4Qam: {
            require_bits(bits, config.bits_per_block, "encode");
            return encode_grs4(pack_bytes(bits), *config.rs);
        }
        case SchemeKind::Grs16Qam: {
            require_bits(bits, config.bits_per_block, "encode");
            const auto bytes = pack_bytes(bits);
            const auto k = static_cast<std::size_t>(config.rs->k());
            return encode_grs16(std::span(bytes).first(k), std::span(bytes).subspan(k), *config.rs);
        }
        default: return encode_uncoded(bits, config);
    }
}

std::vector<std::uint8_t> pack_bytes(std::span<const std::uint8_t> bits) {
    if (bits.size() % 8 != 0) throw std::invalid_argument("pack_bytes: bit count not a multiple of 8");
    std::vector<std::uint8_t> out(bits.size() / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i) out[i / 8] |= static_cast<std::uint8_t>((bits[i] & 1) << (i % 8));
    return out;
}

std::vector<std::uint8_t> unpack_bytes(std::span<const std::uint8_t> bytes) {
    std::vector<std::uint8_t> out(bytes.size() * 8);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (bytes[i / 8] >> (i % 8)) & 1;
    return out;
}

}  // namespace gstbc
