#include "gstbc/algebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace gstbc {

std::ostream& operator<<(std::ostream& os, const GaussianInt& z) {
    return os << '(' << z.re << (z.im < 0 ? "-" : "+") << (z.im < 0 ? -z.im : z.im) << "i)";
}

std::ostream& operator<<(std::ostream& os, const OrderElement& w) {
    const auto c = w.coefficients();
    return os << c[0] << " + " << c[1] << "t + " << c[2] << "j + " << c[3] << "tj";
}

GaussianInt ThetaInt::norm() const {
    // (u + v t)(u + v - v t) = u^2 + uv - v^2 since t(1 - t) = -1.
    return u * u + u * v - v * v;
}

GaussianInt ThetaInt::trace() const { return u + u + v; }

cplx embed(const ThetaInt& x, Root which) {
    const double t = which == Root::Plus ? kTheta : kThetaBar;
    return x.u.to_complex() + x.v.to_complex() * t;
}

GaussianInt OrderElement::reduced_norm() const { return w1.norm() - GaussianInt::i() * w2.norm(); }

OrderElement operator*(const OrderElement& a, const OrderElement& b) {
    // (a1 + a2 j)(b1 + b2 j) = (a1 b1 + i a2 s(b2)) + (a1 b2 + a2 s(b1)) j
    return {a.w1 * b.w1 + GaussianInt::i() * (a.w2 * b.w2.sigma()), a.w1 * b.w2 + a.w2 * b.w1.sigma()};
}

double ComplexMat2::max_abs() const {
    return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
}

ComplexMat2 matrix_rep(const OrderElement& w) {
    const cplx i{0.0, 1.0};
    return {embed(w.w1, Root::Plus), embed(w.w2, Root::Plus), i * embed(w.w2, Root::Minus),
            embed(w.w1, Root::Minus)};
}

OrderElement xi_map(const OrderElement& w) {
    const ThetaInt i_theta{{0, 0}, {0, 1}};
    return {w.w1, i_theta * w.w2};
}

double block_det(std::span<const ComplexMat2> blocks) {
    if (blocks.empty()) throw std::invalid_argument("block_det: empty block list");
    ComplexMat2 s{};
    for (const auto& x : blocks) s += x * x.hermitian();
    return s.det().real();
}

double block_det_expansion(std::span<const ComplexMat2> blocks) {
    if (blocks.empty()) throw std::invalid_argument("block_det_expansion: empty block list");
    double total = 0.0;
    for (const auto& x : blocks) total += std::norm(x.det());
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (std::size_t j = i + 1; j < blocks.size(); ++j)
            total += (blocks[j].quat_conj() * blocks[i]).frob_norm_sq();
    return total;
}

GaussianMat4 trace_form_matrix() {
    const std::array<OrderElement, 4> basis{OrderElement::one(), OrderElement::theta(), OrderElement::j(),
                                            OrderElement::theta() * OrderElement::j()};
    GaussianMat4 m{};
    for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t l = 0; l < 4; ++l) m[k][l] = (basis[k] * basis[l]).reduced_trace();
    return m;
}

namespace {

template <std::size_t N>
GaussianInt det_cofactor(const std::array<std::array<GaussianInt, N>, N>& m) {
    if constexpr (N == 1) {
        return m[0][0];
    } else {
        GaussianInt total{};
        for (std::size_t col = 0; col < N; ++col) {
            std::array<std::array<GaussianInt, N - 1>, N - 1> minor{};
            for (std::size_t r = 1; r < N; ++r) {
                std::size_t cc = 0;
                for (std::size_t c = 0; c < N; ++c)
                    if (c != col) minor[r - 1][cc++] = m[r][c];
            }
            const GaussianInt term = m[0][col] * det_cofactor(minor);
            total = (col % 2 == 0) ? total + term : total - term;
        }
        return total;
    }
}

}  // namespace

GaussianInt det4(const GaussianMat4& m) { return det_cofactor(m); }

GaussianInt reduced_discriminant_check() { return det4(trace_form_matrix()); }

}  // namespace gstbc
