#pragma once

// Quotient rings G/(1+i)G ~ M2(F2) and G/2G ~ M2(F2[i]), with the projections
// psi and phi, coset leaders, and the byte identification used by the
// Reed-Solomon layer.

#include <array>
#include <cstdint>
#include <ostream>

#include "gstbc/golden.hpp"

namespace gstbc {

/// 2x2 matrix over F2 packed row-major: bit 0 = (0,0), 1 = (0,1), 2 = (1,0), 3 = (1,1).
struct M2F2 {
    std::uint8_t bits = 0;

    static M2F2 from_entries(int m00, int m01, int m10, int m11);
    static M2F2 identity() { return from_entries(1, 0, 0, 1); }
    int entry(int row, int col) const { return (bits >> (2 * row + col)) & 1; }
    int det() const { return (entry(0, 0) & entry(1, 1)) ^ (entry(0, 1) & entry(1, 0)); }
    bool is_zero() const { return bits == 0; }

    friend bool operator==(M2F2, M2F2) = default;
    friend M2F2 operator+(M2F2 x, M2F2 y) { return {static_cast<std::uint8_t>(x.bits ^ y.bits)}; }
    friend M2F2 operator*(M2F2 x, M2F2 y);
};

/// F2[i] = Z[i]/2 as 2 bits: bit 0 = real part, bit 1 = imaginary part. i^2 = 1.
using F2i = std::uint8_t;

F2i f2i_mul(F2i x, F2i y);

/// 2x2 matrix over F2[i]; entry k (row-major) occupies bits 2k (re) and 2k+1 (im).
struct M2F2i {
    std::uint8_t bits = 0;

    static M2F2i from_entries(F2i m00, F2i m01, F2i m10, F2i m11);
    static M2F2i identity() { return from_entries(1, 0, 0, 1); }
    F2i entry(int row, int col) const { return (bits >> (2 * (2 * row + col))) & 3; }
    F2i det() const;
    bool is_zero() const { return bits == 0; }
    /// Entry-wise multiplication by a scalar of F2[i].
    M2F2i scaled(F2i s) const;

    friend bool operator==(M2F2i, M2F2i) = default;
    friend M2F2i operator+(M2F2i x, M2F2i y) { return {static_cast<std::uint8_t>(x.bits ^ y.bits)}; }
    /// Table-driven product.
    friend M2F2i operator*(M2F2i x, M2F2i y);
};

std::ostream& operator<<(std::ostream& os, M2F2 m);
std::ostream& operator<<(std::ostream& os, M2F2i m);

/// psi images of {1, theta, j, theta j}.
const std::array<M2F2, 4>& psi_basis();
/// phi images of {1, theta, j, theta j}.
const std::array<M2F2i, 4>& phi_basis();

/// e1..e4 = psi of {alpha, alpha theta, alpha j, alpha theta j}.
const std::array<M2F2, 4>& e_basis();
/// phi of {alpha, alpha theta, alpha j, alpha theta j}.
const std::array<M2F2i, 4>& phi_alpha_basis();

/// Reduce basis coefficients mod (1+i) (a+bi -> (a+b) mod 2) and map through psi.
M2F2 project_mod_1pi(const OrderElement& w);
/// Reduce basis coefficients mod 2 and map through phi.
M2F2i project_mod_2(const OrderElement& w);

/// Projections of a Golden codeword X (through sqrt5 X = alpha W).
M2F2 project_codeword_mod_1pi(const GoldenCodeword& x);
M2F2i project_codeword_mod_2(const GoldenCodeword& x);

/// Coordinates of m in the F2-basis e1..e4 (bit k-1 = coefficient of e_k).
std::uint8_t e_coordinates(M2F2 m);
M2F2 from_e_coordinates(std::uint8_t coords);

struct CosetLeader {
    std::uint8_t label = 0;  // packed M2F2 (4 bits) or M2F2i (8 bits)
    GoldenCodeword lift;
};

/// Lift with coordinates (b1, b2, b3, b4) in {0,1}^4, m = sum b_k e_k.
CosetLeader coset_leader_1pi(M2F2 m);
/// Lift with coordinates in ({0,1} + {0,1}i)^4.
CosetLeader coset_leader_2(M2F2i v);

bool is_invertible(M2F2 m);
bool is_invertible(M2F2i m);

/// Additive map with e1 -> e1+e2+e4, e2 -> e2+e3+e4, e3 -> e1+e2+e3, e4 -> e1+e3+e4.
M2F2 hbar(M2F2 m);

/// Byte b0..b7 = (a_re, a_im, b_re, b_im, c_re, c_im, d_re, d_im) of the
/// coordinates of a phi(alpha) + b phi(alpha theta) + c phi(alpha j) + d phi(alpha theta j).
M2F2i byte_map(std::uint8_t byte);
std::uint8_t byte_unmap(M2F2i m);

/// Coordinates (a, b, c, d) in ({0,1} + {0,1}i)^4 carried by a byte.
Coords coords_from_byte(std::uint8_t byte);
/// Inverse of coords_from_byte after reducing each coordinate mod 2.
std::uint8_t byte_from_coords(const Coords& coords);

}  // namespace gstbc
