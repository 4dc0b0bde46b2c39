#include "gstbc/quotient.hpp"

#include <vector>

namespace gstbc {

namespace {

int parity(std::int64_t x) { return static_cast<int>(static_cast<std::uint64_t>(x) & 1U); }

int residue_1pi(GaussianInt z) { return parity(z.re) ^ parity(z.im); }

F2i residue_2(GaussianInt z) { return static_cast<F2i>(parity(z.re) | (parity(z.im) << 1)); }

M2F2i multiply_slow(M2F2i x, M2F2i y) {
    auto e = [](M2F2i m, int r, int c) { return m.entry(r, c); };
    F2i out[4];
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            out[2 * r + c] = f2i_mul(e(x, r, 0), e(y, 0, c)) ^ f2i_mul(e(x, r, 1), e(y, 1, c));
    return M2F2i::from_entries(out[0], out[1], out[2], out[3]);
}

struct Tables {
    std::vector<std::uint8_t> mul16;   // 256 x 256 products of M2F2i
    std::array<std::uint8_t, 16> e_inverse{};
    std::array<std::uint8_t, 256> byte_of{};  // M2F2i bits -> byte

    Tables() : mul16(256 * 256) {
        for (int x = 0; x < 256; ++x)
            for (int y = 0; y < 256; ++y)
                mul16[x * 256 + y] =
                    multiply_slow({static_cast<std::uint8_t>(x)}, {static_cast<std::uint8_t>(y)}).bits;
        for (int c = 0; c < 16; ++c) e_inverse[from_e_coordinates(static_cast<std::uint8_t>(c)).bits] =
            static_cast<std::uint8_t>(c);
        for (int b = 0; b < 256; ++b) byte_of[byte_map(static_cast<std::uint8_t>(b)).bits] =
            static_cast<std::uint8_t>(b);
    }
};

const Tables& tables() {
    static const Tables t;
    return t;
}

}  // namespace

M2F2 M2F2::from_entries(int m00, int m01, int m10, int m11) {
    return {static_cast<std::uint8_t>((m00 & 1) | ((m01 & 1) << 1) | ((m10 & 1) << 2) | ((m11 & 1) << 3))};
}

M2F2 operator*(M2F2 x, M2F2 y) {
    auto e = [](M2F2 m, int r, int c) { return m.entry(r, c); };
    return M2F2::from_entries((e(x, 0, 0) & e(y, 0, 0)) ^ (e(x, 0, 1) & e(y, 1, 0)),
                              (e(x, 0, 0) & e(y, 0, 1)) ^ (e(x, 0, 1) & e(y, 1, 1)),
                              (e(x, 1, 0) & e(y, 0, 0)) ^ (e(x, 1, 1) & e(y, 1, 0)),
                              (e(x, 1, 0) & e(y, 0, 1)) ^ (e(x, 1, 1) & e(y, 1, 1)));
}

F2i f2i_mul(F2i x, F2i y) {
    const int a = x & 1, b = (x >> 1) & 1, c = y & 1, d = (y >> 1) & 1;
    // (a + bi)(c + di) = (ac - bd) + (ad + bc)i, and -1 = 1.
    return static_cast<F2i>(((a & c) ^ (b & d)) | (((a & d) ^ (b & c)) << 1));
}

M2F2i M2F2i::from_entries(F2i m00, F2i m01, F2i m10, F2i m11) {
    return {static_cast<std::uint8_t>((m00 & 3) | ((m01 & 3) << 2) | ((m10 & 3) << 4) | ((m11 & 3) << 6))};
}

F2i M2F2i::det() const { return f2i_mul(entry(0, 0), entry(1, 1)) ^ f2i_mul(entry(0, 1), entry(1, 0)); }

M2F2i M2F2i::scaled(F2i s) const {
    return from_entries(f2i_mul(s, entry(0, 0)), f2i_mul(s, entry(0, 1)), f2i_mul(s, entry(1, 0)),
                        f2i_mul(s, entry(1, 1)));
}

M2F2i operator*(M2F2i x, M2F2i y) { return {tables().mul16[x.bits * 256 + y.bits]}; }

std::ostream& operator<<(std::ostream& os, M2F2 m) {
    return os << '(' << m.entry(0, 0) << ' ' << m.entry(0, 1) << "; " << m.entry(1, 0) << ' ' << m.entry(1, 1)
              << ')';
}

std::ostream& operator<<(std::ostream& os, M2F2i m) {
    static const char* names[4] = {"0", "1", "i", "1+i"};
    return os << '(' << names[m.entry(0, 0)] << ' ' << names[m.entry(0, 1)] << "; " << names[m.entry(1, 0)] << ' '
              << names[m.entry(1, 1)] << ')';
}

const std::array<M2F2, 4>& psi_basis() {
    static const std::array<M2F2, 4> basis = [] {
        const M2F2 theta = M2F2::from_entries(0, 1, 1, 1);
        const M2F2 j = M2F2::from_entries(0, 1, 1, 0);
        return std::array<M2F2, 4>{M2F2::identity(), theta, j, theta * j};
    }();
    return basis;
}

const std::array<M2F2i, 4>& phi_basis() {
    static const std::array<M2F2i, 4> basis = [] {
        const M2F2i theta = M2F2i::from_entries(3, 1, 2, 2);
        const M2F2i j = M2F2i::from_entries(0, 1, 2, 0);
        return std::array<M2F2i, 4>{M2F2i::identity(), theta, j, multiply_slow(theta, j)};
    }();
    return basis;
}

M2F2 project_mod_1pi(const OrderElement& w) {
    const auto coef = w.coefficients();
    M2F2 out{};
    for (std::size_t k = 0; k < 4; ++k)
        if (residue_1pi(coef[k])) out = out + psi_basis()[k];
    return out;
}

M2F2i project_mod_2(const OrderElement& w) {
    const auto coef = w.coefficients();
    M2F2i out{};
    for (std::size_t k = 0; k < 4; ++k) out = out + phi_basis()[k].scaled(residue_2(coef[k]));
    return out;
}

namespace {

std::array<OrderElement, 4> alpha_lattice_basis() {
    const OrderElement a = OrderElement::alpha();
    const OrderElement t = OrderElement::theta();
    const OrderElement j = OrderElement::j();
    return {a, a * t, a * j, a * t * j};
}

}  // namespace

const std::array<M2F2, 4>& e_basis() {
    static const std::array<M2F2, 4> e = [] {
        std::array<M2F2, 4> out{};
        const auto b = alpha_lattice_basis();
        for (std::size_t k = 0; k < 4; ++k) out[k] = project_mod_1pi(b[k]);
        return out;
    }();
    return e;
}

const std::array<M2F2i, 4>& phi_alpha_basis() {
    static const std::array<M2F2i, 4> e = [] {
        std::array<M2F2i, 4> out{};
        const auto b = alpha_lattice_basis();
        for (std::size_t k = 0; k < 4; ++k) out[k] = project_mod_2(b[k]);
        return out;
    }();
    return e;
}

M2F2 project_codeword_mod_1pi(const GoldenCodeword& x) { return project_mod_1pi(x.lattice_element()); }

M2F2i project_codeword_mod_2(const GoldenCodeword& x) { return project_mod_2(x.lattice_element()); }

M2F2 from_e_coordinates(std::uint8_t coords) {
    M2F2 out{};
    for (std::size_t k = 0; k < 4; ++k)
        if ((coords >> k) & 1) out = out + e_basis()[k];
    return out;
}

std::uint8_t e_coordinates(M2F2 m) { return tables().e_inverse[m.bits]; }

CosetLeader coset_leader_1pi(M2F2 m) {
    const std::uint8_t b = e_coordinates(m);
    Coords coords{};
    for (std::size_t k = 0; k < 4; ++k) coords[k] = {(b >> k) & 1, 0};
    return {m.bits, golden_encode(coords)};
}

CosetLeader coset_leader_2(M2F2i v) { return {v.bits, golden_encode(coords_from_byte(byte_unmap(v)))}; }

bool is_invertible(M2F2 m) { return m.det() != 0; }

bool is_invertible(M2F2i m) {
    const F2i d = m.det();
    return d == 1 || d == 2;
}

M2F2 hbar(M2F2 m) {
    // Images of e1..e4 as e-coordinate masks.
    static constexpr std::array<std::uint8_t, 4> image{0b1011, 0b1110, 0b0111, 0b1101};
    const std::uint8_t c = e_coordinates(m);
    std::uint8_t out = 0;
    for (std::size_t k = 0; k < 4; ++k)
        if ((c >> k) & 1) out ^= image[k];
    return from_e_coordinates(out);
}

M2F2i byte_map(std::uint8_t byte) {
    M2F2i out{};
    for (std::size_t k = 0; k < 4; ++k)
        out = out + phi_alpha_basis()[k].scaled(static_cast<F2i>((byte >> (2 * k)) & 3));
    return out;
}

std::uint8_t byte_unmap(M2F2i m) { return tables().byte_of[m.bits]; }

Coords coords_from_byte(std::uint8_t byte) {
    Coords c{};
    for (std::size_t k = 0; k < 4; ++k) c[k] = {(byte >> (2 * k)) & 1, (byte >> (2 * k + 1)) & 1};
    return c;
}

std::uint8_t byte_from_coords(const Coords& coords) {
    std::uint8_t out = 0;
    for (std::size_t k = 0; k < 4; ++k) out |= static_cast<std::uint8_t>(residue_2(coords[k]) << (2 * k));
    return out;
}

}  // namespace gstbc
