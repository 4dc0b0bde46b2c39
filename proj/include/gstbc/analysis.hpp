#pragma once

// Exhaustive determinant spectra, minimum-determinant searches, asymptotic
// coding gains and bound checks over finite codebooks.

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include "gstbc/schemes.hpp"

namespace gstbc {

/// Largest codebook the enumerations accept.
inline constexpr std::uint64_t kMaxEnumeration = std::uint64_t{1} << 24;

/// Histogram of block determinants in units of delta.
struct DetSpectrum {
    std::map<std::int64_t, std::uint64_t> histogram;
    double max_deviation = 0.0;  // largest distance of det/delta to an integer

    std::uint64_t total() const;
    /// Smallest nonzero key.
    std::optional<std::int64_t> min_nonzero() const;
    /// "1 + 66q^4 + 120q^8 + ..." with at most max_terms terms.
    std::string q_series(std::size_t max_terms) const;
};

/// Number of codewords; throws std::length_error above kMaxEnumeration.
std::uint64_t codebook_size(const SchemeConfig& scheme);

/// Every codeword of the scheme, uncentered. `workers` = 0 picks the
/// hardware concurrency. Throws std::runtime_error if a determinant is not
/// within kIntegrality of an integer multiple of delta.
DetSpectrum det_spectrum(const SchemeConfig& scheme, unsigned workers = 0);

/// min det/delta over nonzero codewords.
std::int64_t delta_min_search(const SchemeConfig& scheme, unsigned workers = 0);

/// min det/delta over differences of distinct codewords (codebooks up to 2^13).
std::int64_t delta_min_pairwise(const SchemeConfig& scheme);

struct GainReport {
    Rational delta_min;
    Rational energy;
    Rational reference_delta;
    Rational reference_energy;
    Rational gamma_squared;
    std::optional<Rational> gamma_exact;  // when gamma_squared is a rational square
    double gamma_as = 0.0;
    double gamma_db = 0.0;
};

/// gamma = (sqrt(delta)/energy) / (sqrt(reference_delta)/reference_energy).
GainReport asymptotic_gain(Rational delta_min, Rational energy, Rational reference_delta,
                           Rational reference_energy);
GainReport asymptotic_gain(const SchemeConfig& scheme, std::int64_t delta_min, const SchemeConfig& reference,
                           std::int64_t reference_delta = 1);

/// Lower bound on det/delta of every nonzero codeword: the minimum
/// determinant of the ideal versus d_min^2 of the label code.
std::int64_t coset_bound(const SchemeConfig& scheme);

struct BoundsReport {
    std::uint64_t checked = 0;
    std::int64_t coset_bound = 0;
    double observed_min = 0.0;       // det/delta over the checked nonzero words
    double hamming_margin = 0.0;     // min of det/delta - w_H^2
    double coset_margin = 0.0;       // min of det/delta - coset_bound
};

class BoundViolation : public std::runtime_error {
public:
    BoundViolation(const std::string& what, std::string witness)
        : std::runtime_error(what + ": " + witness), witness_(std::move(witness)) {}
    const std::string& witness() const { return witness_; }

private:
    std::string witness_;
};

/// Checks det >= w_H^2 delta and the coset bound on every nonzero codeword
/// (samples = 0, enumerable codebooks) or on `samples` random codewords.
/// Throws BoundViolation with the offending codeword.
BoundsReport verify_bounds(const SchemeConfig& scheme, std::uint64_t samples = 0, std::uint64_t seed = 1);

void write_spectrum_csv(std::ostream& os, const DetSpectrum& spectrum);
void write_gain_csv(std::ostream& os, const GainReport& report);
std::string to_string(const Rational& r);

}  // namespace gstbc
