#pragma once

#include <array>
#include <cmath>

#include "gstbc/algebra.hpp"
#include "gstbc/channel.hpp"

namespace testutil {

inline gstbc::GaussianInt small_gauss(gstbc::Rng& rng, int span) {
    auto pick = [&] { return static_cast<std::int64_t>(rng.next_u64() % (2 * span + 1)) - span; };
    return {pick(), pick()};
}

inline gstbc::OrderElement random_element(gstbc::Rng& rng, int span = 3) {
    return gstbc::OrderElement::from_coefficients(
        {small_gauss(rng, span), small_gauss(rng, span), small_gauss(rng, span), small_gauss(rng, span)});
}

inline gstbc::ComplexMat2 random_matrix(gstbc::Rng& rng) {
    return {rng.complex_gaussian(1.0), rng.complex_gaussian(1.0), rng.complex_gaussian(1.0),
            rng.complex_gaussian(1.0)};
}

inline double dist(const gstbc::ComplexMat2& x, const gstbc::ComplexMat2& y) { return std::sqrt((x - y).frob_norm_sq()); }

}  // namespace testutil
