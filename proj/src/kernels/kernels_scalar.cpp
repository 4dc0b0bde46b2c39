#include <limits>

#include "gstbc/kernels.hpp"

namespace gstbc::kernels::detail {

namespace {

inline double distance_at(const MatrixSoA& points, const Target& y, std::size_t i) {
    double acc = 0.0;
    for (std::size_t c = 0; c < 8; ++c) {
        const double diff = points.component(c)[i] - y[c];
        acc = acc + diff * diff;
    }
    return acc;
}

}  // namespace

void squared_distances_scalar(const MatrixSoA& points, const Target& y, double* out) {
    for (std::size_t i = 0; i < points.size(); ++i) out[i] = distance_at(points, y, i);
}

Nearest nearest_scalar(const MatrixSoA& points, const Target& y) {
    Nearest best{0, std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double d = distance_at(points, y, i);
        if (d < best.distance) best = {i, d};
    }
    return best;
}

}  // namespace gstbc::kernels::detail
