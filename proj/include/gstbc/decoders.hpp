#pragma once

// Receivers: per-component distance tables, the stack sequential decoder,
// the hard-decision (suboptimal) decoder, the two-phase 16-QAM decoder and the
// per-codeword decoder of the uncoded references.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gstbc/kernels.hpp"
#include "gstbc/reed_solomon.hpp"
#include "gstbc/schemes.hpp"

namespace gstbc {

/// rows x cols table of squared distances d(i, j) with a per-row ordering.
class DistanceTable {
public:
    DistanceTable(std::size_t rows = 0, std::size_t cols = 256);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double operator()(std::size_t i, std::size_t j) const { return d_[i * cols_ + j]; }
    double& at(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }
    std::span<double> row(std::size_t i) { return {d_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const { return {d_.data() + i * cols_, cols_}; }

    /// Sorts every row increasingly, ties by ascending column. Call after filling.
    void sort_rows();
    /// j_1(i), ..., j_cols(i).
    std::span<const std::uint16_t> order(std::size_t i) const { return {order_.data() + i * cols_, cols_}; }
    std::uint16_t best(std::size_t i) const { return order_[i * cols_]; }
    double row_min(std::size_t i) const { return (*this)(i, best(i)); }
    /// sum of row minima over rows s..rows-1 (0 for s = rows).
    double lookahead(std::size_t s) const { return tail_[s]; }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> d_;
    std::vector<std::uint16_t> order_;
    std::vector<double> tail_;
};

/// Images H * X^(j) of a candidate set, ready for the distance kernels.
kernels::MatrixSoA candidate_images(const ComplexMat2& h, std::span<const ComplexMat2> candidates);

/// d(i, j) = ||H X^(j) - Y_i||^2 for the centered candidates, rows sorted.
DistanceTable build_distance_table(std::span<const ComplexMat2> y, const ComplexMat2& h,
                                   std::span<const ComplexMat2> candidates);

/// The 256 transmitted (centered) 4-QAM Golden matrices in byte order.
const std::vector<ComplexMat2>& grs4_candidates();

/// Distance of the codeword of `msg`.
double codeword_distance(const DistanceTable& table, const RSCode& code, std::span<const std::uint8_t> msg);

struct StackResult {
    std::optional<std::vector<std::uint8_t>> message;  // empty when every path was pruned
    double distance = 0.0;
    std::size_t expansions = 0;  // entries popped
    std::size_t max_stack = 0;
};

/// Best-first search over partial messages. Children with
/// dist + lookahead(s) >= T are dropped. Ties on distance go to the
/// lexicographically smaller path.
StackResult stack_decode(const DistanceTable& table, const RSCode& code, double bound);

struct MlResult {
    std::vector<std::uint8_t> message;
    double distance = 0.0;
};

/// Reference ML by enumerating all 256^k messages (lowest message on ties).
MlResult exhaustive_ml(const DistanceTable& table, const RSCode& code);

/// Per-row argmin, RS decoding, systematic fallback.
std::vector<std::uint8_t> suboptimal_decode(const DistanceTable& table, const RSCode& code);
std::vector<std::uint8_t> suboptimal_decode(std::span<const ComplexMat2> y, const ComplexMat2& h,
                                            const RSCode& code);

/// Stack decoding with T = min(suboptimal codeword distance, closest-choice
/// distance); the incumbent is returned when the stack empties.
MlResult ml_decode(const DistanceTable& table, const RSCode& code);

struct Ml16Result {
    std::vector<std::uint8_t> message;
    std::vector<std::uint8_t> uncoded;
    double distance = 0.0;
    std::size_t products = 0;  // H-multiplications of phase 1
};

Ml16Result ml16_decode(std::span<const ComplexMat2> y, const ComplexMat2& h, const RSCode& code);

/// Brute force over all (RS message, uncoded bytes) pairs; tiny codes only.
Ml16Result ml16_exhaustive(std::span<const ComplexMat2> y, const ComplexMat2& h, const RSCode& code);

/// Bits of an uncoded block, one argmin per position.
std::vector<std::uint8_t> ml_uncoded(std::span<const ComplexMat2> y, const ComplexMat2& h,
                                     const SchemeConfig& config);

/// ML decision for the repetition codes: min over C of the two in-coset minima.
std::vector<std::uint8_t> ml_repetition(std::span<const ComplexMat2> y, const ComplexMat2& h,
                                        RepetitionVariant variant);

/// Decoder for any configured scheme; candidate sets are built once.
class Receiver {
public:
    explicit Receiver(SchemeConfig config);

    const SchemeConfig& config() const { return config_; }
    std::vector<std::uint8_t> decode(std::span<const ComplexMat2> y, const ComplexMat2& h) const;

private:
    SchemeConfig config_;
    std::vector<ComplexMat2> candidates_;  // uncoded schemes
};

}  // namespace gstbc
