#include "gstbc/reed_solomon.hpp"

#include <algorithm>
#include <stdexcept>

#include "gstbc/gf256.hpp"

namespace gstbc {

namespace {

using Poly = std::vector<std::uint8_t>;  // lowest degree first

std::uint8_t poly_eval(const Poly& p, std::uint8_t x) {
    std::uint8_t acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = gf::add(gf::mul(acc, x), *it);
    return acc;
}

// Remainder of msg(x) * x^(n-k) divided by the monic generator (highest first).
void lfsr_parity(std::span<const std::uint8_t> msg, const std::vector<std::uint8_t>& gen,
                 std::span<std::uint8_t> parity) {
    const std::size_t nk = gen.size() - 1;
    std::fill(parity.begin(), parity.end(), 0);
    for (std::uint8_t m : msg) {
        const std::uint8_t feedback = gf::add(m, parity[0]);
        for (std::size_t j = 0; j + 1 < nk; ++j) parity[j] = gf::add(parity[j + 1], gf::mul(gen[j + 1], feedback));
        parity[nk - 1] = gf::mul(gen[nk], feedback);
    }
}

}  // namespace

RSCode::RSCode(int n, int k) : n_(n), k_(k) {
    if (n < 2 || n > 255 || k < 1 || k >= n)
        throw std::invalid_argument("RSCode: need 1 <= k < n <= 255, got (" + std::to_string(n) + "," +
                                    std::to_string(k) + ")");
    generator_ = {1};
    for (int i = 1; i <= n - k; ++i) {
        // multiply by (x + generator^i), highest degree first
        std::vector<std::uint8_t> next(generator_.size() + 1, 0);
        const std::uint8_t root = gf::exp(i);
        for (std::size_t j = 0; j < generator_.size(); ++j) {
            next[j] = gf::add(next[j], generator_[j]);
            next[j + 1] = gf::add(next[j + 1], gf::mul(generator_[j], root));
        }
        generator_ = std::move(next);
    }
    const auto nk = static_cast<std::size_t>(n - k);
    parity_rows_.assign(static_cast<std::size_t>(k) * nk, 0);
    std::vector<std::uint8_t> unit(static_cast<std::size_t>(k), 0);
    for (std::size_t r = 0; r < static_cast<std::size_t>(k); ++r) {
        std::fill(unit.begin(), unit.end(), 0);
        unit[r] = 1;
        lfsr_parity(unit, generator_, std::span(parity_rows_).subspan(r * nk, nk));
    }
}

std::string RSCode::name() const {
    return "RS(" + std::to_string(n_) + "," + std::to_string(k_) + "," + std::to_string(d_min()) + ")";
}

void RSCode::parity(std::span<const std::uint8_t> msg, std::span<std::uint8_t> out) const {
    const auto nk = static_cast<std::size_t>(n_ - k_);
    std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(nk), 0);
    for (std::size_t r = 0; r < static_cast<std::size_t>(k_); ++r) {
        const std::uint8_t m = msg[r];
        if (m == 0) continue;
        const std::uint8_t* row = parity_rows_.data() + r * nk;
        for (std::size_t j = 0; j < nk; ++j) out[j] ^= gf::mul(m, row[j]);
    }
}

std::vector<std::uint8_t> rs_encode(std::span<const std::uint8_t> msg, const RSCode& code) {
    if (msg.size() != static_cast<std::size_t>(code.k()))
        throw std::invalid_argument("rs_encode: message length " + std::to_string(msg.size()) + " != k = " +
                                    std::to_string(code.k()));
    std::vector<std::uint8_t> out(static_cast<std::size_t>(code.n()));
    std::copy(msg.begin(), msg.end(), out.begin());
    lfsr_parity(msg, code.generator(), std::span(out).subspan(msg.size()));
    return out;
}

std::optional<std::vector<std::uint8_t>> rs_decode(std::span<const std::uint8_t> recv, const RSCode& code) {
    const int n = code.n();
    const int nk = n - code.k();
    if (recv.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("rs_decode: received length " + std::to_string(recv.size()) + " != n = " +
                                    std::to_string(n));

    // r(x): coefficient of x^p is recv[n-1-p]
    Poly r(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) r[static_cast<std::size_t>(p)] = recv[static_cast<std::size_t>(n - 1 - p)];

    Poly synd(static_cast<std::size_t>(nk));
    bool clean = true;
    for (int j = 0; j < nk; ++j) {
        synd[static_cast<std::size_t>(j)] = poly_eval(r, gf::exp(j + 1));
        clean = clean && synd[static_cast<std::size_t>(j)] == 0;
    }
    std::vector<std::uint8_t> msg(recv.begin(), recv.begin() + code.k());
    if (clean) return msg;

    // Berlekamp-Massey
    Poly lambda{1}, prev{1};
    int degree = 0, shift = 1;
    std::uint8_t prev_disc = 1;
    for (int step = 0; step < nk; ++step) {
        std::uint8_t disc = synd[static_cast<std::size_t>(step)];
        for (int i = 1; i <= degree && i < static_cast<int>(lambda.size()); ++i)
            disc ^= gf::mul(lambda[static_cast<std::size_t>(i)], synd[static_cast<std::size_t>(step - i)]);
        if (disc == 0) {
            ++shift;
            continue;
        }
        const std::uint8_t coef = gf::div(disc, prev_disc);
        Poly next = lambda;
        if (next.size() < prev.size() + static_cast<std::size_t>(shift))
            next.resize(prev.size() + static_cast<std::size_t>(shift), 0);
        for (std::size_t i = 0; i < prev.size(); ++i) next[i + static_cast<std::size_t>(shift)] ^= gf::mul(coef, prev[i]);
        if (2 * degree <= step) {
            prev = lambda;
            degree = step + 1 - degree;
            prev_disc = disc;
            shift = 1;
        } else {
            ++shift;
        }
        lambda = std::move(next);
    }
    if (2 * degree > nk) return std::nullopt;
    lambda.resize(static_cast<std::size_t>(degree) + 1);

    // Omega = S * Lambda mod x^(n-k)
    Poly omega(static_cast<std::size_t>(nk), 0);
    for (int i = 0; i < nk; ++i)
        for (int j = 0; j <= degree && i + j < nk; ++j)
            omega[static_cast<std::size_t>(i + j)] ^=
                gf::mul(synd[static_cast<std::size_t>(i)], lambda[static_cast<std::size_t>(j)]);

    Poly lambda_prime(lambda.size() > 1 ? lambda.size() - 1 : 1, 0);
    for (std::size_t i = 1; i < lambda.size(); i += 2) lambda_prime[i - 1] = lambda[i];

    std::vector<std::uint8_t> corrected(recv.begin(), recv.end());
    int roots = 0;
    for (int p = 0; p < n; ++p) {
        const std::uint8_t x_inv = gf::exp(-p);
        if (poly_eval(lambda, x_inv) != 0) continue;
        ++roots;
        const std::uint8_t denom = poly_eval(lambda_prime, x_inv);
        if (denom == 0) return std::nullopt;
        const std::uint8_t magnitude = gf::div(poly_eval(omega, x_inv), denom);
        corrected[static_cast<std::size_t>(n - 1 - p)] ^= magnitude;
    }
    if (roots != degree) return std::nullopt;

    for (int p = 0; p < n; ++p) r[static_cast<std::size_t>(p)] = corrected[static_cast<std::size_t>(n - 1 - p)];
    for (int j = 0; j < nk; ++j)
        if (poly_eval(r, gf::exp(j + 1)) != 0) return std::nullopt;

    return std::vector<std::uint8_t>(corrected.begin(), corrected.begin() + code.k());
}

}  // namespace gstbc
