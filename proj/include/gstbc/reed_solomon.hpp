#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gstbc {

/// Shortened systematic narrow-sense (n, k) Reed-Solomon code over GF(256).
///
/// Codeword V = (V_1, ..., V_n) holds the coefficient of x^(n-i) in V_i, so the
/// message occupies V_1..V_k and the parity V_{k+1}..V_n. The generator
/// polynomial has roots generator^1 .. generator^(n-k).
class RSCode {
public:
    RSCode(int n, int k);

    int n() const { return n_; }
    int k() const { return k_; }
    int d_min() const { return n_ - k_ + 1; }
    /// Guaranteed correction radius floor((n-k)/2).
    int t() const { return (n_ - k_) / 2; }
    std::string name() const;

    /// Monic generator polynomial, highest degree first.
    const std::vector<std::uint8_t>& generator() const { return generator_; }

    /// Writes the n-k parity symbols of `msg` (length k) into `parity`.
    void parity(std::span<const std::uint8_t> msg, std::span<std::uint8_t> parity) const;

    friend bool operator==(const RSCode& a, const RSCode& b) { return a.n_ == b.n_ && a.k_ == b.k_; }

private:
    int n_;
    int k_;
    std::vector<std::uint8_t> generator_;
    std::vector<std::uint8_t> parity_rows_;  // k x (n-k): parity of each unit message
};

std::vector<std::uint8_t> rs_encode(std::span<const std::uint8_t> msg, const RSCode& code);

/// Bounded-distance decoding (Berlekamp-Massey, Chien search, Forney).
/// Returns the message when a codeword lies within t() of `recv`, and
/// std::nullopt when decoding fails.
std::optional<std::vector<std::uint8_t>> rs_decode(std::span<const std::uint8_t> recv, const RSCode& code);

}  // namespace gstbc
