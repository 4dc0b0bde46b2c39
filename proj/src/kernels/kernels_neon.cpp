// aarch64 only; NEON is architecturally guaranteed there.

#include <arm_neon.h>

#include <limits>

#include "gstbc/kernels.hpp"

namespace gstbc::kernels::detail {

namespace {

inline float64x2_t distance2(const MatrixSoA& points, const Target& y, std::size_t i) {
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t c = 0; c < 8; ++c) {
        const float64x2_t diff = vsubq_f64(vld1q_f64(points.component(c) + i), vdupq_n_f64(y[c]));
        acc = vaddq_f64(acc, vmulq_f64(diff, diff));
    }
    return acc;
}

inline double distance1(const MatrixSoA& points, const Target& y, std::size_t i) {
    double acc = 0.0;
    for (std::size_t c = 0; c < 8; ++c) {
        const double diff = points.component(c)[i] - y[c];
        acc = acc + diff * diff;
    }
    return acc;
}

}  // namespace

void squared_distances_neon(const MatrixSoA& points, const Target& y, double* out) {
    const std::size_t n = points.size();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(out + i, distance2(points, y, i));
    for (; i < n; ++i) out[i] = distance1(points, y, i);
}

Nearest nearest_neon(const MatrixSoA& points, const Target& y) {
    Nearest out{0, std::numeric_limits<double>::infinity()};
    const std::size_t n = points.size();
    std::size_t i = 0;
    double pair[2];
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(pair, distance2(points, y, i));
        if (pair[0] < out.distance) out = {i, pair[0]};
        if (pair[1] < out.distance) out = {i + 1, pair[1]};
    }
    for (; i < n; ++i) {
        const double d = distance1(points, y, i);
        if (d < out.distance) out = {i, d};
    }
    return out;
}

}  // namespace gstbc::kernels::detail
