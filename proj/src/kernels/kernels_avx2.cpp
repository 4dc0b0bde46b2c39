// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include <limits>

#include "gstbc/kernels.hpp"

namespace gstbc::kernels::detail {

namespace {

inline __m256d distance4(const MatrixSoA& points, const Target& y, std::size_t i) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t c = 0; c < 8; ++c) {
        const __m256d p = _mm256_loadu_pd(points.component(c) + i);
        const __m256d diff = _mm256_sub_pd(p, _mm256_set1_pd(y[c]));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(diff, diff));
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

void squared_distances_avx2(const MatrixSoA& points, const Target& y, double* out) {
    const std::size_t n = points.size();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, distance4(points, y, i));
    for (; i < n; ++i) out[i] = distance1(points, y, i);
}

Nearest nearest_avx2(const MatrixSoA& points, const Target& y) {
    const std::size_t n = points.size();
    const double inf = std::numeric_limits<double>::infinity();
    __m256d best = _mm256_set1_pd(inf);
    __m256d best_idx = _mm256_set1_pd(0.0);
    __m256d idx = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
    const __m256d step = _mm256_set1_pd(4.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = distance4(points, y, i);
        const __m256d lt = _mm256_cmp_pd(d, best, _CMP_LT_OQ);
        best = _mm256_blendv_pd(best, d, lt);
        best_idx = _mm256_blendv_pd(best_idx, idx, lt);
        idx = _mm256_add_pd(idx, step);
    }
    alignas(32) double lane_best[4];
    alignas(32) double lane_idx[4];
    _mm256_store_pd(lane_best, best);
    _mm256_store_pd(lane_idx, best_idx);
    Nearest out{0, inf};
    for (int l = 0; l < 4; ++l) {
        const auto li = static_cast<std::size_t>(lane_idx[l]);
        if (lane_best[l] < out.distance || (lane_best[l] == out.distance && li < out.index))
            out = {li, lane_best[l]};
    }
    for (; i < n; ++i) {
        const double d = distance1(points, y, i);
        if (d < out.distance) out = {i, d};
    }
    return out;
}

}  // namespace gstbc::kernels::detail
