#include "gstbc/decoders.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "gstbc/quotient.hpp"

namespace gstbc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ComplexCoords uniform_offset(double v) { return {cplx{v, v}, cplx{v, v}, cplx{v, v}, cplx{v, v}}; }

ComplexCoords shifted(const Coords& c, const ComplexCoords& offset) {
    return {c[0].to_complex() - offset[0], c[1].to_complex() - offset[1], c[2].to_complex() - offset[2],
            c[3].to_complex() - offset[3]};
}

std::vector<std::uint8_t> full_codeword(const RSCode& code, std::span<const std::uint8_t> msg) {
    return rs_encode(msg, code);
}

// Repetition candidates indexed by q = coset bits (0..3) | inner bits (4..7).
const std::vector<ComplexMat2>& repetition_candidates() {
    static const std::vector<ComplexMat2> cands = [] {
        const ComplexCoords off = uniform_offset(0.5);
        std::vector<ComplexMat2> out(256);
        for (int q = 0; q < 256; ++q) {
            Coords c{};
            for (int k = 0; k < 4; ++k) c[k] = repetition_point((q >> k) & 1, (q >> (4 + k)) & 1);
            out[q] = golden_matrix(shifted(c, off));
        }
        return out;
    }();
    return cands;
}

}  // namespace

DistanceTable::DistanceTable(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), d_(rows * cols, 0.0), order_(rows * cols, 0), tail_(rows + 1, 0.0) {
    if (cols > 65536) throw std::invalid_argument("DistanceTable: too many columns");
}

void DistanceTable::sort_rows() {
    for (std::size_t i = 0; i < rows_; ++i) {
        auto ord = order_.begin() + static_cast<std::ptrdiff_t>(i * cols_);
        std::iota(ord, ord + static_cast<std::ptrdiff_t>(cols_), std::uint16_t{0});
        const double* row = d_.data() + i * cols_;
        std::stable_sort(ord, ord + static_cast<std::ptrdiff_t>(cols_),
                         [row](std::uint16_t x, std::uint16_t y) { return row[x] < row[y]; });
    }
    tail_[rows_] = 0.0;
    for (std::size_t s = rows_; s-- > 0;) tail_[s] = tail_[s + 1] + row_min(s);
}

kernels::MatrixSoA candidate_images(const ComplexMat2& h, std::span<const ComplexMat2> candidates) {
    kernels::MatrixSoA soa(candidates.size());
    for (std::size_t j = 0; j < candidates.size(); ++j) soa.set(j, h * candidates[j]);
    return soa;
}

DistanceTable build_distance_table(std::span<const ComplexMat2> y, const ComplexMat2& h,
                                   std::span<const ComplexMat2> candidates) {
    const auto images = candidate_images(h, candidates);
    DistanceTable table(y.size(), candidates.size());
    for (std::size_t i = 0; i < y.size(); ++i) kernels::squared_distances(images, y[i], table.row(i));
    table.sort_rows();
    return table;
}

const std::vector<ComplexMat2>& grs4_candidates() {
    static const std::vector<ComplexMat2> cands = [] {
        const ComplexCoords off = uniform_offset(0.5);
        std::vector<ComplexMat2> out(256);
        for (int j = 0; j < 256; ++j) out[j] = golden_matrix(shifted(coords_from_byte(static_cast<std::uint8_t>(j)), off));
        return out;
    }();
    return cands;
}

double codeword_distance(const DistanceTable& table, const RSCode& code, std::span<const std::uint8_t> msg) {
    const auto v = full_codeword(code, msg);
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) d += table(i, v[i]);
    return d;
}

StackResult stack_decode(const DistanceTable& table, const RSCode& code, double bound) {
    const auto n = static_cast<std::size_t>(code.n());
    const auto k = static_cast<std::size_t>(code.k());
    if (table.rows() != n || table.cols() != 256)
        throw std::invalid_argument("stack_decode: table shape does not match the code");

    struct Node {
        std::uint32_t parent;
        std::uint8_t sym;
        std::uint16_t depth;
    };
    struct Entry {
        double dist;
        std::uint32_t node;
        bool full;
    };
    std::vector<Node> nodes;
    nodes.push_back({0, 0, 0});

    auto path_of = [&](std::uint32_t id, std::uint8_t* out) {
        const std::size_t len = nodes[id].depth;
        for (std::size_t p = len; p-- > 0;) {
            out[p] = nodes[id].sym;
            id = nodes[id].parent;
        }
        return len;
    };
    // true when a should be popped after b
    auto later = [&](const Entry& a, const Entry& b) {
        if (a.dist != b.dist) return a.dist > b.dist;
        std::uint8_t pa[256], pb[256];
        const std::size_t la = path_of(a.node, pa);
        const std::size_t lb = path_of(b.node, pb);
        return std::lexicographical_compare(pb, pb + lb, pa, pa + la);
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(later)> heap(later);

    StackResult result;
    if (table.lookahead(0) < bound) heap.push({0.0, 0, false});
    std::vector<std::uint8_t> msg(k), par(n - k);
    while (!heap.empty()) {
        result.max_stack = std::max(result.max_stack, heap.size());
        const Entry top = heap.top();
        heap.pop();
        ++result.expansions;
        if (top.full) {
            path_of(top.node, msg.data());
            result.message = msg;
            result.distance = top.dist;
            return result;
        }
        const std::size_t s = nodes[top.node].depth;
        if (s == k) {
            path_of(top.node, msg.data());
            code.parity(msg, par);
            double d = top.dist;
            for (std::size_t t = k; t < n; ++t) d += table(t, par[t - k]);
            if (d < bound) heap.push({d, top.node, true});
            continue;
        }
        const double rest = table.lookahead(s + 1);
        for (std::uint16_t r : table.order(s)) {
            const double d = top.dist + table(s, r);
            if (d + rest >= bound) break;
            nodes.push_back({top.node, static_cast<std::uint8_t>(r), static_cast<std::uint16_t>(s + 1)});
            heap.push({d, static_cast<std::uint32_t>(nodes.size() - 1), false});
        }
    }
    return result;
}

MlResult exhaustive_ml(const DistanceTable& table, const RSCode& code) {
    const auto n = static_cast<std::size_t>(code.n());
    const auto k = static_cast<std::size_t>(code.k());
    if (k > 3) throw std::invalid_argument("exhaustive_ml: 256^k enumeration limited to k <= 3");
    const std::uint64_t total = std::uint64_t{1} << (8 * k);
    std::vector<std::uint8_t> msg(k), par(n - k);
    MlResult best{std::vector<std::uint8_t>(k, 0), kInf};
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        for (std::size_t t = 0; t < k; ++t) msg[t] = static_cast<std::uint8_t>(idx >> (8 * (k - 1 - t)));
        code.parity(msg, par);
        double d = 0.0;
        for (std::size_t t = 0; t < k; ++t) d += table(t, msg[t]);
        for (std::size_t t = k; t < n; ++t) d += table(t, par[t - k]);
        if (d < best.distance) best = {msg, d};
    }
    return best;
}

std::vector<std::uint8_t> suboptimal_decode(const DistanceTable& table, const RSCode& code) {
    std::vector<std::uint8_t> hard(table.rows());
    for (std::size_t i = 0; i < hard.size(); ++i) hard[i] = static_cast<std::uint8_t>(table.best(i));
    if (auto msg = rs_decode(hard, code)) return *msg;
    hard.resize(static_cast<std::size_t>(code.k()));
    return hard;
}

std::vector<std::uint8_t> suboptimal_decode(std::span<const ComplexMat2> y, const ComplexMat2& h,
                                            const RSCode& code) {
    return suboptimal_decode(build_distance_table(y, h, grs4_candidates()), code);
}

MlResult ml_decode(const DistanceTable& table, const RSCode& code) {
    const auto k = static_cast<std::size_t>(code.k());
    MlResult incumbent;
    incumbent.message = suboptimal_decode(table, code);
    incumbent.distance = codeword_distance(table, code, incumbent.message);

    std::vector<std::uint8_t> closest(k);
    for (std::size_t i = 0; i < k; ++i) closest[i] = static_cast<std::uint8_t>(table.best(i));
    const double dc = codeword_distance(table, code, closest);
    if (dc < incumbent.distance || (dc == incumbent.distance && closest < incumbent.message))
        incumbent = {closest, dc};

    auto found = stack_decode(table, code, incumbent.distance);
    if (found.message) return {*found.message, found.distance};
    return incumbent;
}

namespace {

struct Ml16Tables {
    std::vector<ComplexMat2> leaders;  // centered coset leaders W_j
    std::vector<ComplexMat2> inner;    // 2 * coords_from_byte(z)
};

const Ml16Tables& ml16_tables() {
    static const Ml16Tables t = [] {
        Ml16Tables out;
        const ComplexCoords off = uniform_offset(1.5);
        const ComplexCoords zero{};
        for (int j = 0; j < 256; ++j) {
            const Coords c = coords_from_byte(static_cast<std::uint8_t>(j));
            out.leaders.push_back(golden_matrix(shifted(c, off)));
            Coords twice{};
            for (int q = 0; q < 4; ++q) twice[q] = GaussianInt{2, 0} * c[q];
            out.inner.push_back(golden_matrix(shifted(twice, zero)));
        }
        return out;
    }();
    return t;
}

}  // namespace

Ml16Result ml16_decode(std::span<const ComplexMat2> y, const ComplexMat2& h, const RSCode& code) {
    const auto n = static_cast<std::size_t>(code.n());
    if (y.size() != n) throw std::invalid_argument("ml16_decode: block length does not match the code");
    const auto& tabs = ml16_tables();
    Ml16Result out;

    const auto inner_images = candidate_images(h, tabs.inner);
    std::vector<ComplexMat2> leader_images(256);
    for (std::size_t j = 0; j < 256; ++j) leader_images[j] = h * tabs.leaders[j];
    out.products = inner_images.size() + leader_images.size();

    DistanceTable table(n, 256);
    std::vector<std::uint8_t> best_inner(n * 256);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < 256; ++j) {
            const auto near = kernels::nearest(inner_images, y[i] - leader_images[j]);
            table.at(i, j) = near.distance;
            best_inner[i * 256 + j] = static_cast<std::uint8_t>(near.index);
        }
    }
    table.sort_rows();

    auto ml = ml_decode(table, code);
    const auto v = rs_encode(ml.message, code);
    out.message = std::move(ml.message);
    out.distance = ml.distance;
    out.uncoded.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.uncoded[i] = best_inner[i * 256 + v[i]];
    return out;
}

Ml16Result ml16_exhaustive(std::span<const ComplexMat2> y, const ComplexMat2& h, const RSCode& code) {
    const auto n = static_cast<std::size_t>(code.n());
    const auto k = static_cast<std::size_t>(code.k());
    if (k > 2) throw std::invalid_argument("ml16_exhaustive: limited to k <= 2");
    const ComplexCoords off = uniform_offset(1.5);
    Ml16Result best;
    best.distance = kInf;
    const std::uint64_t total = std::uint64_t{1} << (8 * k);
    std::vector<std::uint8_t> msg(k);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        for (std::size_t t = 0; t < k; ++t) msg[t] = static_cast<std::uint8_t>(idx >> (8 * (k - 1 - t)));
        const auto v = rs_encode(msg, code);
        // Positions are independent once the codeword is fixed.
        double d = 0.0;
        std::vector<std::uint8_t> inner(n);
        for (std::size_t i = 0; i < n; ++i) {
            const Coords lead = coords_from_byte(v[i]);
            double bi = kInf;
            for (int z = 0; z < 256; ++z) {
                const Coords q = coords_from_byte(static_cast<std::uint8_t>(z));
                Coords c{};
                for (int t = 0; t < 4; ++t) c[t] = lead[t] + GaussianInt{2, 0} * q[t];
                const double dz = frob_norm_sq(y[i] - h * golden_matrix(shifted(c, off)));
                if (dz < bi) {
                    bi = dz;
                    inner[i] = static_cast<std::uint8_t>(z);
                }
            }
            d += bi;
        }
        if (d < best.distance) {
            best.distance = d;
            best.message = msg;
            best.uncoded = inner;
        }
    }
    return best;
}

namespace {

std::vector<ComplexMat2> uncoded_matrices(const SchemeConfig& config) {
    const ComplexCoords off = config.offset();
    std::vector<ComplexMat2> out;
    for (const auto& c : uncoded_candidates(config)) out.push_back(golden_matrix(shifted(c, off)));
    return out;
}

std::vector<std::uint8_t> decode_uncoded(std::span<const ComplexMat2> y, const ComplexMat2& h,
                                         std::span<const ComplexMat2> candidates, std::size_t bits_per_word) {
    const auto images = candidate_images(h, candidates);
    std::vector<std::uint8_t> bits;
    bits.reserve(y.size() * bits_per_word);
    for (const auto& yi : y) {
        const std::size_t label = kernels::nearest(images, yi).index;
        for (std::size_t b = 0; b < bits_per_word; ++b) bits.push_back(static_cast<std::uint8_t>((label >> b) & 1));
    }
    return bits;
}

}  // namespace

std::vector<std::uint8_t> ml_uncoded(std::span<const ComplexMat2> y, const ComplexMat2& h,
                                     const SchemeConfig& config) {
    const auto cands = uncoded_matrices(config);
    return decode_uncoded(y, h, cands, uncoded_bits_per_word(config));
}

std::vector<std::uint8_t> ml_repetition(std::span<const ComplexMat2> y, const ComplexMat2& h,
                                        RepetitionVariant variant) {
    if (y.size() != 2) throw std::invalid_argument("ml_repetition: expected a block of 2 codewords");
    const auto images = candidate_images(h, repetition_candidates());
    std::array<std::array<double, 256>, 2> d{};
    kernels::squared_distances(images, y[0], d[0]);
    kernels::squared_distances(images, y[1], d[1]);

    // best inner choice per coset for each position
    std::array<std::array<int, 16>, 2> arg{};
    std::array<std::array<double, 16>, 2> m{};
    for (int p = 0; p < 2; ++p) {
        for (int c = 0; c < 16; ++c) {
            m[p][c] = kInf;
            for (int z = 0; z < 16; ++z) {
                const double v = d[p][c | (z << 4)];
                if (v < m[p][c]) {
                    m[p][c] = v;
                    arg[p][c] = z;
                }
            }
        }
    }
    int best_c = 0, best_c2 = 0;
    double best = kInf;
    for (int c = 0; c < 16; ++c) {
        const int c2 = variant == RepetitionVariant::Identity
                           ? c
                           : e_coordinates(hbar(from_e_coordinates(static_cast<std::uint8_t>(c))));
        const double v = m[0][c] + m[1][c2];
        if (v < best) {
            best = v;
            best_c = c;
            best_c2 = c2;
        }
    }
    std::vector<std::uint8_t> bits(12);
    for (int k = 0; k < 4; ++k) {
        bits[k] = static_cast<std::uint8_t>((best_c >> k) & 1);
        bits[4 + k] = static_cast<std::uint8_t>((arg[0][best_c] >> k) & 1);
        bits[8 + k] = static_cast<std::uint8_t>((arg[1][best_c2] >> k) & 1);
    }
    return bits;
}

Receiver::Receiver(SchemeConfig config) : config_(std::move(config)) {
    if (is_uncoded(config_.kind)) candidates_ = uncoded_matrices(config_);
}

std::vector<std::uint8_t> Receiver::decode(std::span<const ComplexMat2> y, const ComplexMat2& h) const {
    if (y.size() != config_.block_length)
        throw std::invalid_argument("Receiver::decode: block length " + std::to_string(y.size()) + " != " +
                                    std::to_string(config_.block_length));
    switch (config_.kind) {
        case SchemeKind::RepetitionId: return ml_repetition(y, h, RepetitionVariant::Identity);
        case SchemeKind::RepetitionHbar: return ml_repetition(y, h, RepetitionVariant::Hbar);
        case SchemeKind::Grs4Qam: {
            const auto table = build_distance_table(y, h, grs4_candidates());
            const auto msg = config_.decoder == DecoderKind::Ml ? ml_decode(table, *config_.rs).message
                                                                : suboptimal_decode(table, *config_.rs);
            return unpack_bytes(msg);
        }
        case SchemeKind::Grs16Qam: {
            auto res = ml16_decode(y, h, *config_.rs);
            res.message.insert(res.message.end(), res.uncoded.begin(), res.uncoded.end());
            return unpack_bytes(res.message);
        }
        default: return decode_uncoded(y, h, candidates_, uncoded_bits_per_word(config_));
    }
}

}  // namespace gstbc
