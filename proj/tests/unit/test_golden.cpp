#include <doctest.h>

#include <cmath>
#include <vector>

#include "gstbc/golden.hpp"
#include "gstbc/tolerances.hpp"
#include "helpers.hpp"

using namespace gstbc;
using testutil::dist;

namespace {

std::vector<Coords> qam4_points() {
    std::vector<Coords> out;
    for (int m = 0; m < 256; ++m) {
        Coords c{};
        for (int k = 0; k < 4; ++k) c[k] = {(m >> (2 * k)) & 1, (m >> (2 * k + 1)) & 1};
        out.push_back(c);
    }
    return out;
}

}  // namespace

TEST_CASE("golden_encode examples") {
    CHECK(golden_encode({}, {}, {}, {}).matrix.frob_norm_sq() == 0.0);
    CHECK(golden_encode({}, {}, {}, {}).is_zero());
    const auto x = golden_encode({1, 0}, {}, {}, {});
    const auto a = matrix_rep(OrderElement::alpha());
    CHECK(dist(x.matrix, (1.0 / kSqrt5) * a) < 1e-15);
}

TEST_CASE("encoded matrix equals (1/sqrt5) A W") {
    Rng rng(11);
    const auto a = matrix_rep(OrderElement::alpha());
    for (int t = 0; t < 1000; ++t) {
        const Coords c{testutil::small_gauss(rng, 3), testutil::small_gauss(rng, 3), testutil::small_gauss(rng, 3),
                       testutil::small_gauss(rng, 3)};
        const auto x = golden_encode(c);
        CHECK(dist(x.matrix, (1.0 / kSqrt5) * (a * matrix_rep(x.exact))) < 1e-12);
        CHECK(dist(matrix_rep(x.lattice_element()), kSqrt5 * x.matrix) < 1e-11);
    }
}

TEST_CASE("nonvanishing determinant at 4-QAM scale") {
    const auto pts = qam4_points();
    double worst = 1e9;
    for (std::size_t m = 1; m < pts.size(); ++m) worst = std::min(worst, std::norm(golden_encode(pts[m]).matrix.det()));
    CHECK(worst >= kDelta - tol::kDeterminant);
}

TEST_CASE("minimum determinant over the 6560-point difference sweep is delta") {
    const int v[3] = {-1, 0, 1};
    double worst = 1e9;
    for (int idx = 1; idx < 6561; ++idx) {
        Coords c{};
        int r = idx;
        for (auto& g : c) {
            g = {v[r % 3], v[(r / 3) % 3]};
            r /= 9;
        }
        if (c == decltype(c){}) continue;
        worst = std::min(worst, std::norm(golden_encode(c).matrix.det()));
    }
    CHECK(std::abs(worst - kDelta) < 1e-9);
}

TEST_CASE("generator matrix is unitary and vectorizes the code") {
    const auto r = generator_matrix();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            cplx s{};
            for (int k = 0; k < 4; ++k) s += r[i][k] * std::conj(r[j][k]);
            CHECK(std::abs(s - cplx(i == j ? 1.0 : 0.0)) < tol::kUnitary);
        }
    // column 0 against the codeword of a = 1
    const auto v = vectorize(golden_encode({1, 0}, {}, {}, {}).matrix);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(v[i] - r[i][0]) < 1e-15);

    // determinant by cofactor expansion
    std::array<std::array<cplx, 4>, 4> m = r;
    cplx det = 1.0;
    for (int c = 0; c < 4; ++c) {
        int p = c;
        for (int q = c + 1; q < 4; ++q)
            if (std::abs(m[q][c]) > std::abs(m[p][c])) p = q;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (int q = c + 1; q < 4; ++q) {
            const cplx f = m[q][c] / m[c][c];
            for (int k = c; k < 4; ++k) m[q][k] -= f * m[c][k];
        }
    }
    CHECK(std::abs(std::abs(det) - 1.0) < tol::kUnitary);

    Rng rng(12);
    for (int t = 0; t < 200; ++t) {
        const ComplexCoords s{rng.complex_gaussian(1), rng.complex_gaussian(1), rng.complex_gaussian(1),
                              rng.complex_gaussian(1)};
        const auto vx = vectorize(golden_matrix(s));
        double ns = 0, nv = 0;
        for (int i = 0; i < 4; ++i) {
            cplx rs{};
            for (int k = 0; k < 4; ++k) rs += r[i][k] * s[k];
            CHECK(std::abs(vx[i] - rs) < 1e-12);
            ns += std::norm(s[i]);
            nv += std::norm(vx[i]);
        }
        CHECK(std::abs(std::sqrt(ns) - std::sqrt(nv)) < 1e-12);
    }
}

TEST_CASE("ideal scalings") {
    const auto pts = qam4_points();
    const auto x = golden_encode(pts[77]);
    CHECK(scale_ideal(x, IdealLevel::One).coords == x.coords);
    double w1 = 1e9, w2 = 1e9;
    for (std::size_t m = 1; m < pts.size(); ++m) {
        const auto g = golden_encode(pts[m]);
        w1 = std::min(w1, std::norm(scale_ideal(g, IdealLevel::OnePlusI).matrix.det()));
        w2 = std::min(w2, std::norm(scale_ideal(g, IdealLevel::Two).matrix.det()));
    }
    CHECK(w1 >= 4 * kDelta - 1e-9);
    CHECK(w2 >= 16 * kDelta - 1e-9);
    CHECK(std::abs(w1 - 4 * kDelta) < 1e-9);
    CHECK(std::abs(w2 - 16 * kDelta) < 1e-9);
    CHECK(scale_ideal(x, IdealLevel::Two).coords[0] == GaussianInt{2, 0} * x.coords[0]);
}

TEST_CASE("blocks: Hamming weight bound and the mixed-term bound") {
    Rng rng(13);
    const auto pts = qam4_points();
    for (int t = 0; t < 2000; ++t) {
        GoldenBlock b;
        const std::size_t len = 1 + t % 6;
        for (std::size_t i = 0; i < len; ++i) {
            const auto m = rng.next_u64() % 3 == 0 ? 0 : rng.next_u64() % 256;
            b.words.push_back(golden_encode(pts[m]));
        }
        const double w = static_cast<double>(b.hamming_weight());
        CHECK(block_det(b) >= w * w * kDelta - 1e-9);
    }
    double worst = 1e9;
    for (std::size_t p = 1; p < 256; p += 3)
        for (std::size_t q = 1; q < 256; ++q) {
            const auto x1 = golden_encode(pts[p]).matrix;
            const auto x2 = golden_encode(pts[q]).matrix;
            worst = std::min(worst, (quat_conj(x2) * x1).frob_norm_sq());
        }
    CHECK(worst >= 2 * kDelta - 1e-9);
}

TEST_CASE("transmitted matrices subtract the centroid codeword") {
    GoldenBlock b;
    b.words.push_back(golden_encode({1, 1}, {0, 0}, {1, 0}, {0, 1}));
    b.offset = {cplx{0.5, 0.5}, cplx{0.5, 0.5}, cplx{0.5, 0.5}, cplx{0.5, 0.5}};
    const auto sent = b.transmitted();
    const ComplexCoords centered{cplx{0.5, 0.5}, cplx{-0.5, -0.5}, cplx{0.5, -0.5}, cplx{-0.5, 0.5}};
    CHECK(dist(sent[0], golden_matrix(centered)) < 1e-15);
    CHECK(b.lattice_matrices()[0].frob_norm_sq() == doctest::Approx(4.0));
}
