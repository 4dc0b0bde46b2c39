#pragma once

// Coherent 2x2 slow block-fading channel: Y_i = H X_i + W_i, with H fixed for
// the whole block.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "gstbc/golden.hpp"

namespace gstbc {

/// std::mt19937_64 bit stream, uniforms as (x >> 11) * 2^-53, normals by the
/// Box-Muller transform (both outputs used, cosine branch first).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// Standard normal.
    double gaussian();
    /// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
    cplx complex_gaussian(double variance);
    /// Uniform random bit.
    std::uint8_t bit() { return static_cast<std::uint8_t>(engine_() >> 63); }

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

/// SplitMix64 finalizer applied along (master, a, b, c); used to give every
/// simulated frame its own independent stream.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

struct ChannelRealization {
    ComplexMat2 h;
    std::size_t coherence_blocks = 1;  // codewords over which h is constant
};

struct NoiseConfig {
    double n0 = 0.0;  // variance per complex entry; 0 disables noise

    /// snr_db = 10 log10(es / n0).
    static NoiseConfig from_snr_db(double snr_db, double es);
    static NoiseConfig noiseless() { return {0.0}; }
    double snr_db(double es) const;
};

/// Four i.i.d. CN(0, 1) entries (variance 1/2 per real dimension).
ChannelRealization draw_channel(Rng& rng, std::size_t coherence_blocks = 1);

/// Y_i = H X_i + W_i over the transmitted (centered) matrices of the block.
/// Throws std::invalid_argument if the block is longer than the coherence span.
std::vector<ComplexMat2> transmit(const GoldenBlock& block, const ChannelRealization& channel,
                                  const NoiseConfig& noise, Rng& rng);

/// Same, starting from already-centered matrices.
std::vector<ComplexMat2> transmit(std::span<const ComplexMat2> sent, const ChannelRealization& channel,
                                  const NoiseConfig& noise, Rng& rng);

}  // namespace gstbc
