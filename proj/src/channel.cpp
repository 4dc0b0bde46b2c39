#include "gstbc/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gstbc {

double Rng::gaussian() {
    if (spare_) {
        const double z = *spare_;
        spare_.reset();
        return z;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phase = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phase);
    return r * std::cos(phase);
}

cplx Rng::complex_gaussian(double variance) {
    const double s = std::sqrt(variance / 2.0);
    const double re = gaussian();
    const double im = gaussian();
    return {s * re, s * im};
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    std::uint64_t h = mix(master);
    h = mix(h ^ a);
    h = mix(h ^ b);
    h = mix(h ^ c);
    return h;
}

NoiseConfig NoiseConfig::from_snr_db(double snr_db, double es) {
    if (es <= 0.0) throw std::invalid_argument("NoiseConfig: symbol energy must be positive");
    return {es / std::pow(10.0, snr_db / 10.0)};
}

double NoiseConfig::snr_db(double es) const { return 10.0 * std::log10(es / n0); }

ChannelRealization draw_channel(Rng& rng, std::size_t coherence_blocks) {
    ChannelRealization ch;
    ch.h.a = rng.complex_gaussian(1.0);
    ch.h.b = rng.complex_gaussian(1.0);
    ch.h.c = rng.complex_gaussian(1.0);
    ch.h.d = rng.complex_gaussian(1.0);
    ch.coherence_blocks = coherence_blocks;
    return ch;
}

std::vector<ComplexMat2> transmit(std::span<const ComplexMat2> sent, const ChannelRealization& channel,
                                  const NoiseConfig& noise, Rng& rng) {
    if (sent.size() > channel.coherence_blocks)
        throw std::invalid_argument("transmit: block of " + std::to_string(sent.size()) +
                                    " codewords exceeds channel coherence of " +
                                    std::to_string(channel.coherence_blocks));
    std::vector<ComplexMat2> out;
    out.reserve(sent.size());
    for (const auto& x : sent) {
        ComplexMat2 y = channel.h * x;
        if (noise.n0 > 0.0) {
            y.a += rng.complex_gaussian(noise.n0);
            y.b += rng.complex_gaussian(noise.n0);
            y.c += rng.complex_gaussian(noise.n0);
            y.d += rng.complex_gaussian(noise.n0);
        }
        out.push_back(y);
    }
    return out;
}

std::vector<ComplexMat2> transmit(const GoldenBlock& block, const ChannelRealization& channel,
                                  const NoiseConfig& noise, Rng& rng) {
    const auto sent = block.transmitted();
    return transmit(std::span<const ComplexMat2>(sent), channel, noise, rng);
}

}  // namespace gstbc
