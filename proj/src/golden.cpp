#include "gstbc/golden.hpp"

#include <algorithm>

namespace gstbc {

namespace {

cplx alpha_plus() { return embed(OrderElement::alpha().w1, Root::Plus); }
cplx alpha_minus() { return embed(OrderElement::alpha().w1, Root::Minus); }

}  // namespace

GoldenCodeword golden_encode(GaussianInt a, GaussianInt b, GaussianInt c, GaussianInt d) {
    return golden_encode(Coords{a, b, c, d});
}

GoldenCodeword golden_encode(const Coords& coords) {
    GoldenCodeword x;
    x.coords = coords;
    x.exact = OrderElement{{coords[0], coords[1]}, {coords[2], coords[3]}};
    x.matrix = golden_matrix({coords[0].to_complex(), coords[1].to_complex(), coords[2].to_complex(),
                              coords[3].to_complex()});
    return x;
}

ComplexMat2 golden_matrix(const ComplexCoords& s) {
    static const cplx al = alpha_plus();
    static const cplx alb = alpha_minus();
    static const cplx i{0.0, 1.0};
    const double scale = 1.0 / kSqrt5;
    return {scale * al * (s[0] + s[1] * kTheta), scale * al * (s[2] + s[3] * kTheta),
            scale * alb * i * (s[2] + s[3] * kThetaBar), scale * alb * (s[0] + s[1] * kThetaBar)};
}

Mat4c generator_matrix() {
    const cplx al = alpha_plus();
    const cplx alb = alpha_minus();
    const cplx i{0.0, 1.0};
    const double s = 1.0 / kSqrt5;
    const cplx z{};
    return {{{s * al, -s * alb * i, z, z},
             {z, z, s * alb * i, s * al},
             {z, z, s * al, -s * alb * i},
             {s * alb, -s * al * i, z, z}}};
}

ComplexCoords vectorize(const ComplexMat2& x) { return {x.a, x.c, x.b, x.d}; }

GoldenCodeword scale_ideal(const GoldenCodeword& x, IdealLevel level) {
    GaussianInt factor{1, 0};
    if (level == IdealLevel::OnePlusI) factor = {1, 1};
    if (level == IdealLevel::Two) factor = {2, 0};
    Coords scaled{};
    std::transform(x.coords.begin(), x.coords.end(), scaled.begin(),
                   [factor](GaussianInt z) { return factor * z; });
    return golden_encode(scaled);
}

std::size_t GoldenBlock::hamming_weight() const {
    return static_cast<std::size_t>(
        std::count_if(words.begin(), words.end(), [](const GoldenCodeword& w) { return !w.is_zero(); }));
}

std::vector<ComplexMat2> GoldenBlock::lattice_matrices() const {
    std::vector<ComplexMat2> out;
    out.reserve(words.size());
    for (const auto& w : words) out.push_back(w.matrix);
    return out;
}

std::vector<ComplexMat2> GoldenBlock::transmitted() const {
    const ComplexMat2 shift = golden_matrix(offset);
    std::vector<ComplexMat2> out;
    out.reserve(words.size());
    for (const auto& w : words) out.push_back(w.matrix - shift);
    return out;
}

double block_det(const GoldenBlock& block) {
    const auto mats = block.lattice_matrices();
    return block_det(std::span<const ComplexMat2>(mats));
}

}  // namespace gstbc
