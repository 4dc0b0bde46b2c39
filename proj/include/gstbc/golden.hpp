#pragma once

// The Golden Code: information symbols (a, b, c, d) in Z[i]^4 map to
// X = (1/sqrt5) * A * W with A = diag(alpha, sigma(alpha)) and
// W = (a + b theta) + (c + d theta) j.

#include <array>
#include <vector>

#include "gstbc/algebra.hpp"

namespace gstbc {

/// Minimum squared determinant of the Golden Code.
inline constexpr double kDelta = 0.2;

using Coords = std::array<GaussianInt, 4>;
using ComplexCoords = std::array<cplx, 4>;
using Mat4c = std::array<std::array<cplx, 4>, 4>;

struct GoldenCodeword {
    Coords coords{};
    OrderElement exact{};  // W, with X = (1/sqrt5) A W
    ComplexMat2 matrix{};

    bool is_zero() const { return exact.is_zero(); }
    /// sqrt5 * X as an element of alpha*O.
    OrderElement lattice_element() const { return OrderElement::alpha() * exact; }
};

GoldenCodeword golden_encode(GaussianInt a, GaussianInt b, GaussianInt c, GaussianInt d);
GoldenCodeword golden_encode(const Coords& coords);

/// Evaluates the codeword formula on arbitrary complex symbols (used for
/// centered constellations, where symbols leave Z[i]).
ComplexMat2 golden_matrix(const ComplexCoords& symbols);

/// Unitary R with vectorize(golden_matrix(s)) = R * s.
Mat4c generator_matrix();

/// phi([[a, c], [b, d]]) = (a, b, c, d).
ComplexCoords vectorize(const ComplexMat2& x);

enum class IdealLevel { One, OnePlusI, Two };

GoldenCodeword scale_ideal(const GoldenCodeword& x, IdealLevel level);

/// Length-L sequence of Golden codewords. `offset` holds the per-symbol
/// constellation centroid subtracted before transmission.
struct GoldenBlock {
    std::vector<GoldenCodeword> words;
    ComplexCoords offset{};

    std::size_t length() const { return words.size(); }
    std::size_t hamming_weight() const;
    /// Uncentered lattice matrices X_i.
    std::vector<ComplexMat2> lattice_matrices() const;
    /// Matrices actually sent: golden_matrix(coords - offset).
    std::vector<ComplexMat2> transmitted() const;
};

/// det(sum X_i X_i^H) over the uncentered lattice matrices.
double block_det(const GoldenBlock& block);

}  // namespace gstbc
