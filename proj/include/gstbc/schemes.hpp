#pragma once

// Transmit-side schemes: uncoded Golden Code references, the length-2
// repetition codes over G/(1+i)G, and the Golden-RS coset codes over G/2G.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gstbc/golden.hpp"
#include "gstbc/reed_solomon.hpp"

namespace gstbc {

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    Rational reduced() const;
    friend bool operator==(const Rational& a, const Rational& b) { return a.num * b.den == b.num * a.den; }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational{a.num * b.num, a.den * b.den}.reduced();
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        return Rational{a.num * b.den, a.den * b.num}.reduced();
    }
    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational{a.num * b.den + b.num * a.den, a.den * b.den}.reduced();
    }
};

/// Points carved from Z[i]; label l selects points[l]. Transmission
/// subtracts the centroid.
struct Constellation {
    std::string name;
    std::vector<GaussianInt> points;
    cplx centroid;
    Rational energy;  // average |p - centroid|^2

    int bits() const;

    /// {0, 1}.
    static Constellation bpsk();
    /// {0,1} + {0,1}i; label bit 0 = real, bit 1 = imaginary.
    static Constellation qam4();
    /// {0..3} + {0..3}i; label bits (b0, b1) select the coset of 2Z[i]
    /// (real and imaginary parity), (b2, b3) the point inside the coset.
    static Constellation qam16();
};

enum class SchemeKind {
    UncodedBpsk,     // 2 bpcu reference, BPSK on a, b, c, d
    UncodedBpskMix,  // 3 bpcu reference, 4-QAM on a, c and BPSK on b, d
    Uncoded4Qam,     // 4 bpcu, 4-QAM on all symbols
    Uncoded6Bpcu,    // 6 bpcu reference, 16-QAM on a, c and 4-QAM on b, d
    RepetitionId,
    RepetitionHbar,
    Grs4Qam,
    Grs16Qam,
};

enum class DecoderKind { Ml, Suboptimal };

std::string_view scheme_name(SchemeKind kind);
std::optional<SchemeKind> parse_scheme_kind(std::string_view name);
bool is_uncoded(SchemeKind kind);

struct SchemeConfig {
    SchemeKind kind = SchemeKind::Uncoded4Qam;
    std::optional<RSCode> rs;
    std::size_t block_length = 1;  // L
    std::size_t bits_per_block = 0;
    Rational spectral_efficiency;  // bits per channel use
    Rational energy;               // average symbol energy E_S
    DecoderKind decoder = DecoderKind::Ml;

    /// Short identifier, e.g. "grs_4qam_4_2_ml".
    std::string label() const;
    /// Per-symbol constellations for (a, b, c, d) of every codeword.
    std::array<Constellation, 4> symbol_constellations() const;
    ComplexCoords offset() const;
};

/// Builds and validates a configuration. `block_length` is used by the uncoded
/// schemes only; coded schemes derive L from their structure. Throws
/// std::invalid_argument on inconsistent parameters.
SchemeConfig make_scheme(SchemeKind kind, std::size_t block_length = 1, std::optional<RSCode> rs = std::nullopt,
                         DecoderKind decoder = DecoderKind::Ml);

enum class RepetitionVariant { Identity, Hbar };

/// Point of the repetition 4-QAM for a coordinate: coset bit (residue mod 1+i)
/// and inner bit. coset 0: {0, 1+i}, coset 1: {1, i}.
GaussianInt repetition_point(int coset_bit, int inner_bit);

/// bits[0..3] select C = sum b_k e_k, bits[4..7] and bits[8..11] the points
/// of X1 and X2 inside their cosets; X2 lies in the coset h(C).
GoldenBlock encode_repetition(std::span<const std::uint8_t> bits, RepetitionVariant variant);

/// RS encode, then each symbol through byte_map and coset_leader_2.
GoldenBlock encode_grs4(std::span<const std::uint8_t> msg, const RSCode& code);

/// RS symbols select the coset of 2Z[i] of every 16-QAM symbol; the uncoded
/// bytes select the point inside it (two bits per symbol).
GoldenBlock encode_grs16(std::span<const std::uint8_t> msg, std::span<const std::uint8_t> uncoded,
                         const RSCode& code);

/// Independent codewords, each carrying the concatenated labels of a, b, c, d.
GoldenBlock encode_uncoded(std::span<const std::uint8_t> bits, const SchemeConfig& config);

/// Dispatches on config.kind; bits has length config.bits_per_block.
GoldenBlock encode(const SchemeConfig& config, std::span<const std::uint8_t> bits);

/// Bits per codeword of an uncoded scheme and the candidate lattice points in
/// label order (label = concatenation of the a, b, c, d labels, a lowest).
std::size_t uncoded_bits_per_word(const SchemeConfig& config);
std::vector<Coords> uncoded_candidates(const SchemeConfig& config);

std::vector<std::uint8_t> pack_bytes(std::span<const std::uint8_t> bits);
std::vector<std::uint8_t> unpack_bytes(std::span<const std::uint8_t> bytes);

}  // namespace gstbc
