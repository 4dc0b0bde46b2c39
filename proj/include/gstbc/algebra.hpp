#pragma once

// Exact arithmetic in Z[i], Z[i,theta] and the order O = Z[i,theta] + Z[i,theta]j,
// together with the 2x2 complex matrix embedding used for every codeword.

#include <array>
#include <cassert>
#include <complex>
#include <cstdint>
#include <ostream>
#include <span>

namespace gstbc {

using cplx = std::complex<double>;

inline const double kSqrt5 = 2.2360679774997896964;
inline const double kTheta = (1.0 + kSqrt5) / 2.0;
inline const double kThetaBar = (1.0 - kSqrt5) / 2.0;

namespace detail {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    [[maybe_unused]] bool ovf = __builtin_add_overflow(a, b, &r);
    assert(!ovf && "integer overflow in exact arithmetic");
    return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    [[maybe_unused]] bool ovf = __builtin_sub_overflow(a, b, &r);
    assert(!ovf && "integer overflow in exact arithmetic");
    return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    [[maybe_unused]] bool ovf = __builtin_mul_overflow(a, b, &r);
    assert(!ovf && "integer overflow in exact arithmetic");
    return r;
}

}  // namespace detail

/// Element re + im*i of Z[i].
struct GaussianInt {
    std::int64_t re = 0;
    std::int64_t im = 0;

    static constexpr GaussianInt i() { return {0, 1}; }

    GaussianInt conj() const { return {re, -im}; }
    std::int64_t norm() const { return detail::add(detail::mul(re, re), detail::mul(im, im)); }
    bool is_zero() const { return re == 0 && im == 0; }
    cplx to_complex() const { return {static_cast<double>(re), static_cast<double>(im)}; }

    friend bool operator==(const GaussianInt&, const GaussianInt&) = default;
    friend GaussianInt operator+(GaussianInt a, GaussianInt b) {
        return {detail::add(a.re, b.re), detail::add(a.im, b.im)};
    }
    friend GaussianInt operator-(GaussianInt a, GaussianInt b) {
        return {detail::sub(a.re, b.re), detail::sub(a.im, b.im)};
    }
    friend GaussianInt operator-(GaussianInt a) { return {-a.re, -a.im}; }
    friend GaussianInt operator*(GaussianInt a, GaussianInt b) {
        return {detail::sub(detail::mul(a.re, b.re), detail::mul(a.im, b.im)),
                detail::add(detail::mul(a.re, b.im), detail::mul(a.im, b.re))};
    }
    GaussianInt& operator+=(GaussianInt o) { return *this = *this + o; }
    GaussianInt& operator-=(GaussianInt o) { return *this = *this - o; }
};

std::ostream& operator<<(std::ostream& os, const GaussianInt& z);

enum class Root { Plus, Minus };

/// Element u + v*theta of Z[i,theta], theta = (1 + sqrt5)/2, theta^2 = theta + 1.
struct ThetaInt {
    GaussianInt u;
    GaussianInt v;

    static ThetaInt theta() { return {{0, 0}, {1, 0}}; }

    /// Galois conjugate theta -> 1 - theta.
    ThetaInt sigma() const { return {u + v, -v}; }
    /// x * sigma(x), an element of Z[i].
    GaussianInt norm() const;
    /// x + sigma(x), an element of Z[i].
    GaussianInt trace() const;
    bool is_zero() const { return u.is_zero() && v.is_zero(); }

    friend bool operator==(const ThetaInt&, const ThetaInt&) = default;
    friend ThetaInt operator+(const ThetaInt& a, const ThetaInt& b) { return {a.u + b.u, a.v + b.v}; }
    friend ThetaInt operator-(const ThetaInt& a, const ThetaInt& b) { return {a.u - b.u, a.v - b.v}; }
    friend ThetaInt operator-(const ThetaInt& a) { return {-a.u, -a.v}; }
    friend ThetaInt operator*(const ThetaInt& a, const ThetaInt& b) {
        const GaussianInt vv = a.v * b.v;
        return {a.u * b.u + vv, a.u * b.v + a.v * b.u + vv};
    }
    friend ThetaInt operator*(GaussianInt s, const ThetaInt& a) { return {s * a.u, s * a.v}; }
};

/// Numerical value of u + v*theta (Root::Plus) or u + v*thetabar (Root::Minus).
cplx embed(const ThetaInt& x, Root which);

/// Element w1 + w2*j of the order O, with j^2 = i and x*j = j*sigma(x).
struct OrderElement {
    ThetaInt w1;
    ThetaInt w2;

    static OrderElement one() { return {{{1, 0}, {0, 0}}, {}}; }
    static OrderElement j() { return {{}, {{1, 0}, {0, 0}}}; }
    static OrderElement theta() { return {ThetaInt::theta(), {}}; }
    /// alpha = 1 + i*thetabar = (1+i) - i*theta.
    static OrderElement alpha() { return {{{1, 1}, {0, -1}}, {}}; }
    /// alpha' = 1 - i*thetabar = (1-i) + i*theta.
    static OrderElement alpha_prime() { return {{{1, -1}, {0, 1}}, {}}; }
    static OrderElement scalar(GaussianInt s) { return {{s, {}}, {}}; }

    /// Coefficients over Z[i] in the basis {1, theta, j, theta*j}.
    std::array<GaussianInt, 4> coefficients() const { return {w1.u, w1.v, w2.u, w2.v}; }
    static OrderElement from_coefficients(const std::array<GaussianInt, 4>& c) {
        return {{c[0], c[1]}, {c[2], c[3]}};
    }

    /// Determinant of the matrix embedding: N(w1) - i*N(w2).
    GaussianInt reduced_norm() const;
    /// Trace of the matrix embedding: w1 + sigma(w1).
    GaussianInt reduced_trace() const { return w1.trace(); }
    bool is_zero() const { return w1.is_zero() && w2.is_zero(); }

    friend bool operator==(const OrderElement&, const OrderElement&) = default;
    friend OrderElement operator+(const OrderElement& a, const OrderElement& b) {
        return {a.w1 + b.w1, a.w2 + b.w2};
    }
    friend OrderElement operator-(const OrderElement& a, const OrderElement& b) {
        return {a.w1 - b.w1, a.w2 - b.w2};
    }
    friend OrderElement operator-(const OrderElement& a) { return {-a.w1, -a.w2}; }
    friend OrderElement operator*(const OrderElement& a, const OrderElement& b);
    friend OrderElement operator*(GaussianInt s, const OrderElement& a) { return {s * a.w1, s * a.w2}; }
};

std::ostream& operator<<(std::ostream& os, const OrderElement& w);

/// 2x2 complex matrix [[a, b], [c, d]].
struct ComplexMat2 {
    cplx a{}, b{}, c{}, d{};

    static ComplexMat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static ComplexMat2 zero() { return {}; }

    cplx det() const { return a * d - b * c; }
    cplx trace() const { return a + d; }
    ComplexMat2 hermitian() const { return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)}; }
    /// Adjugate [[d, -b], [-c, a]]; equals the quaternionic conjugate on embedded elements.
    ComplexMat2 quat_conj() const { return {d, -b, -c, a}; }
    double frob_norm_sq() const { return std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d); }
    /// Largest entry modulus.
    double max_abs() const;

    friend ComplexMat2 operator+(const ComplexMat2& x, const ComplexMat2& y) {
        return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
    }
    friend ComplexMat2 operator-(const ComplexMat2& x, const ComplexMat2& y) {
        return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
    }
    friend ComplexMat2 operator*(const ComplexMat2& x, const ComplexMat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend ComplexMat2 operator*(cplx s, const ComplexMat2& x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }
    ComplexMat2& operator+=(const ComplexMat2& o) { return *this = *this + o; }
};

inline ComplexMat2 quat_conj(const ComplexMat2& x) { return x.quat_conj(); }
inline double frob_norm_sq(const ComplexMat2& x) { return x.frob_norm_sq(); }

/// [[x1, x2], [i*sigma(x2), sigma(x1)]] evaluated numerically.
ComplexMat2 matrix_rep(const OrderElement& w);

/// w1 + w2 j  ->  w1 + i*theta*w2 j, so that w*alpha == alpha*xi(w).
OrderElement xi_map(const OrderElement& w);

/// det(sum_i X_i X_i^H), evaluated directly. Throws std::invalid_argument on an empty list.
double block_det(std::span<const ComplexMat2> blocks);

/// Same quantity via sum |det X_i|^2 + sum_{j>i} ||conj(X_j) X_i||_F^2.
double block_det_expansion(std::span<const ComplexMat2> blocks);

using GaussianMat4 = std::array<std::array<GaussianInt, 4>, 4>;

/// tr(w_k w_l) on the basis {1, theta, j, theta*j}.
GaussianMat4 trace_form_matrix();

GaussianInt det4(const GaussianMat4& m);

/// Determinant of the trace form; 25 for the order O.
GaussianInt reduced_discriminant_check();

}  // namespace gstbc
