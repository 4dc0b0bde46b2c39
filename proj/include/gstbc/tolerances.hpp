#pragma once

namespace gstbc::tol {

// Relative tolerance for determinant identities (block determinant routes,
// quaternionic conjugate products).
inline constexpr double kDeterminant = 1e-9;

// Unitarity of the generator matrix and exact-evaluation checks on 2x2 maps.
inline constexpr double kUnitary = 1e-12;

// Guard used when rounding a determinant to an integer multiple of delta.
inline constexpr double kIntegrality = 1e-6;

}  // namespace gstbc::tol
