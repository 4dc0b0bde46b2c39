#pragma once

// Monte Carlo frame-error-rate sweeps, their plain-text configuration and
// CSV output.

#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "gstbc/channel.hpp"
#include "gstbc/decoders.hpp"
#include "gstbc/schemes.hpp"

namespace gstbc {

/// Meaning of the SNR axis. SymbolEnergy: snr = E_S/N0 with the scheme's own
/// average symbol energy. Lattice: snr = 1/N0 on the unscaled Z[i] lattice,
/// so every scheme sees the same N0 at a given axis value.
enum class SnrConvention { SymbolEnergy, Lattice };

std::string_view snr_convention_name(SnrConvention c);
SnrConvention parse_snr_convention(std::string_view text);

/// Noise of one sweep point.
NoiseConfig sweep_noise(const SchemeConfig& scheme, double snr_db, SnrConvention convention);

struct SweepConfig {
    std::vector<SchemeConfig> schemes;
    std::vector<double> snr_db;
    std::uint64_t min_frames = 1000;
    std::uint64_t min_frame_errors = 100;
    std::uint64_t max_frames = 10'000'000;
    std::uint64_t seed = 1;
    std::size_t coherence_blocks = 0;  // 0: one channel per block
    bool noiseless = false;
    SnrConvention snr_convention = SnrConvention::SymbolEnergy;
    unsigned workers = 0;  // 0: hardware concurrency
    std::string output;

    /// Throws std::invalid_argument when unusable.
    void validate() const;
};

/// Frames are simulated in batches of this size; the stop rule is checked
/// between batches, so results do not depend on the worker count.
inline constexpr std::uint64_t kFrameBatch = 256;

struct SweepPoint {
    std::string scheme;
    double snr_db = 0.0;
    std::uint64_t frames = 0;
    std::uint64_t errors = 0;
    double fer = 0.0;
    std::uint64_t seed = 0;
    double wall_time = 0.0;  // seconds, not written to CSV
    bool capped = false;     // frame cap hit before min_frame_errors
};

struct SweepResult {
    std::vector<SweepPoint> points;

    std::vector<SweepPoint> curve(std::string_view scheme) const;
};

/// Seed of one frame.
std::uint64_t frame_seed(std::uint64_t master, std::string_view scheme, double snr_db, std::uint64_t frame);

/// True if the decoded bits of one simulated frame differ from the sent ones.
bool simulate_frame(const SchemeConfig& scheme, const Receiver& receiver, const NoiseConfig& noise,
                    std::size_t coherence_blocks, std::uint64_t seed);

using ProgressFn = std::function<void(const SweepPoint&)>;

SweepResult run_sweep(const SweepConfig& config, const ProgressFn& progress = {});

/// Header "scheme,snr_db,frames,errors,fer,seed"; shortest round-trip numbers.
void write_csv(std::ostream& os, const SweepResult& result);
SweepResult parse_csv(std::istream& is);

/// SNR where the curve crosses `fer`, interpolating log10(FER) linearly
/// between the bracketing points.
std::optional<double> snr_at_fer(const std::vector<SweepPoint>& curve, double fer);

/// "0 2 4", "0, 2, 4" or start:step:stop.
std::vector<double> parse_snr_list(std::string_view text);

/// Parses "name[:n:k][:decoder]" or "uncoded_*:L", e.g. "grs_4qam:4:2:ml".
SchemeConfig parse_scheme_spec(std::string_view spec);

/// key = value lines, '#' comments, a "[scheme]" header per scheme.
SweepConfig parse_sweep_config(std::istream& is);
SweepConfig load_sweep_config(const std::string& path);

/// Named comparison sets: "repetition", "grs_ml", "suboptimal", "grs16".
SweepConfig figure_config(std::string_view name);

}  // namespace gstbc
