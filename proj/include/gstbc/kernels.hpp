#pragma once

// Data-parallel inner loops of the receivers: squared Frobenius distances
// between one received 2x2 matrix and a batch of candidate images H*X.
//
// Every variant sums the eight squared real differences in the same fixed
// order and without fused multiply-add, so the scalar reference and the SIMD
// variants return bit-identical results.

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "gstbc/algebra.hpp"

namespace gstbc::kernels {

/// Batch of 2x2 complex matrices stored as eight real component arrays
/// (a.re, a.im, b.re, b.im, c.re, c.im, d.re, d.im).
class MatrixSoA {
public:
    explicit MatrixSoA(std::size_t count = 0) { resize(count); }

    void resize(std::size_t count) {
        count_ = count;
        data_.assign(8 * count, 0.0);
    }
    std::size_t size() const { return count_; }

    void set(std::size_t i, const ComplexMat2& m) {
        double* p = data_.data();
        p[0 * count_ + i] = m.a.real();
        p[1 * count_ + i] = m.a.imag();
        p[2 * count_ + i] = m.b.real();
        p[3 * count_ + i] = m.b.imag();
        p[4 * count_ + i] = m.c.real();
        p[5 * count_ + i] = m.c.imag();
        p[6 * count_ + i] = m.d.real();
        p[7 * count_ + i] = m.d.imag();
    }
    ComplexMat2 get(std::size_t i) const {
        const double* p = data_.data();
        return {{p[0 * count_ + i], p[1 * count_ + i]},
                {p[2 * count_ + i], p[3 * count_ + i]},
                {p[4 * count_ + i], p[5 * count_ + i]},
                {p[6 * count_ + i], p[7 * count_ + i]}};
    }
    const double* component(std::size_t c) const { return data_.data() + c * count_; }

private:
    std::size_t count_ = 0;
    std::vector<double> data_;
};

using Target = std::array<double, 8>;

inline Target flatten(const ComplexMat2& y) {
    return {y.a.real(), y.a.imag(), y.b.real(), y.b.imag(), y.c.real(), y.c.imag(), y.d.real(), y.d.imag()};
}

struct Nearest {
    std::size_t index = 0;
    double distance = 0.0;
};

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

struct KernelTable {
    Isa isa;
    /// out[i] = ||points[i] - y||_F^2 for i < points.size().
    void (*squared_distances)(const MatrixSoA& points, const Target& y, double* out);
    /// argmin_i ||points[i] - y||_F^2, lowest index on ties. points must be nonempty.
    Nearest (*nearest)(const MatrixSoA& points, const Target& y);
};

const KernelTable& scalar_table();
/// nullptr when the variant is not compiled in or the CPU lacks the extension.
const KernelTable* avx2_table();
const KernelTable* neon_table();

/// Best available variant; GSTBC_ISA=scalar in the environment forces the reference.
const KernelTable& active();

inline void squared_distances(const MatrixSoA& points, const ComplexMat2& y, std::span<double> out) {
    active().squared_distances(points, flatten(y), out.data());
}

inline Nearest nearest(const MatrixSoA& points, const ComplexMat2& y) {
    return active().nearest(points, flatten(y));
}

namespace detail {
void squared_distances_scalar(const MatrixSoA& points, const Target& y, double* out);
Nearest nearest_scalar(const MatrixSoA& points, const Target& y);
#if defined(GSTBC_HAVE_AVX2)
void squared_distances_avx2(const MatrixSoA& points, const Target& y, double* out);
Nearest nearest_avx2(const MatrixSoA& points, const Target& y);
#endif
#if defined(GSTBC_HAVE_NEON)
void squared_distances_neon(const MatrixSoA& points, const Target& y, double* out);
Nearest nearest_neon(const MatrixSoA& points, const Target& y);
#endif
}  // namespace detail

}  // namespace gstbc::kernels
