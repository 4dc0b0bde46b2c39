#include "gstbc/simulation.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "gstbc/channel.hpp"

namespace gstbc {

namespace {

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(std::string_view text, std::string_view what) {
    text = trim(text);
    T v{};
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw std::invalid_argument("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view s, std::string_view seps) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const auto next = s.find_first_of(seps, pos);
        const auto piece = trim(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
        if (!piece.empty()) out.push_back(piece);
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return out;
}

bool parse_bool(std::string_view text) {
    text = trim(text);
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw std::invalid_argument("cannot parse boolean from '" + std::string(text) + "'");
}

DecoderKind parse_decoder(std::string_view text) {
    if (text == "ml" || text == "stack") return DecoderKind::Ml;
    if (text == "sub" || text == "suboptimal") return DecoderKind::Suboptimal;
    throw std::invalid_argument("unknown decoder '" + std::string(text) + "'");
}

struct SchemeFields {
    std::string name;
    std::optional<int> n, k;
    std::optional<std::size_t> length;
    DecoderKind decoder = DecoderKind::Ml;
    std::string constellation;
};

SchemeConfig build_scheme(const SchemeFields& f) {
    const auto kind = parse_scheme_kind(f.name);
    if (!kind) throw std::invalid_argument("unknown scheme '" + f.name + "'");
    std::optional<RSCode> rs;
    if (*kind == SchemeKind::Grs4Qam || *kind == SchemeKind::Grs16Qam) {
        if (!f.n || !f.k) throw std::invalid_argument(f.name + " needs n and k");
        rs.emplace(*f.n, *f.k);
    } else if (f.n || f.k) {
        throw std::invalid_argument(f.name + " takes no n, k");
    }
    auto cfg = make_scheme(*kind, f.length.value_or(1), rs, f.decoder);
    if (!f.constellation.empty()) {
        const auto cs = cfg.symbol_constellations();
        const bool uniform = std::all_of(cs.begin(), cs.end(), [&](const Constellation& c) { return c.name == cs[0].name; });
        const std::string expected = uniform ? cs[0].name : "mixed";
        if (f.constellation != expected)
            throw std::invalid_argument(f.name + " uses constellation " + expected + ", not " + f.constellation);
    }
    return cfg;
}

}  // namespace

std::vector<double> parse_snr_list(std::string_view text) {
    std::vector<double> out;
    if (text.find(':') != std::string_view::npos) {
        const auto parts = split(text, ":");
        if (parts.size() != 3) throw std::invalid_argument("snr range must be start:step:stop");
        const double start = parse_number<double>(parts[0], "snr start");
        const double step = parse_number<double>(parts[1], "snr step");
        const double stop = parse_number<double>(parts[2], "snr stop");
        if (step <= 0.0) throw std::invalid_argument("snr step must be positive");
        for (int i = 0;; ++i) {
            const double v = start + i * step;
            if (v > stop + 1e-9) break;
            out.push_back(std::round(v * 1e9) / 1e9);
        }
        return out;
    }
    for (auto p : split(text, " ,")) out.push_back(parse_number<double>(p, "snr_db"));
    return out;
}

void SweepConfig::validate() const {
    if (schemes.empty()) throw std::invalid_argument("sweep: no scheme configured");
    if (snr_db.empty()) throw std::invalid_argument("sweep: snr list is empty");
    if (min_frames == 0) throw std::invalid_argument("sweep: min_frames must be positive");
    if (max_frames < min_frames) throw std::invalid_argument("sweep: max_frames below min_frames");
    for (const auto& s : schemes)
        if (coherence_blocks != 0 && coherence_blocks < s.block_length)
            throw std::invalid_argument("sweep: coherence of " + std::to_string(coherence_blocks) +
                                        " codewords is shorter than the block of " + s.label());
}

std::vector<SweepPoint> SweepResult::curve(std::string_view scheme) const {
    std::vector<SweepPoint> out;
    for (const auto& p : points)
        if (p.scheme == scheme) out.push_back(p);
    std::sort(out.begin(), out.end(), [](const SweepPoint& a, const SweepPoint& b) { return a.snr_db < b.snr_db; });
    return out;
}

std::uint64_t frame_seed(std::uint64_t master, std::string_view scheme, double snr_db, std::uint64_t frame) {
    return derive_seed(master, fnv1a(scheme), std::bit_cast<std::uint64_t>(snr_db), frame);
}

std::string_view snr_convention_name(SnrConvention c) {
    return c == SnrConvention::Lattice ? "lattice" : "es";
}

SnrConvention parse_snr_convention(std::string_view text) {
    if (text == "es") return SnrConvention::SymbolEnergy;
    if (text == "lattice") return SnrConvention::Lattice;
    throw std::invalid_argument("unknown snr convention '" + std::string(text) + "' (es or lattice)");
}

NoiseConfig sweep_noise(const SchemeConfig& scheme, double snr_db, SnrConvention convention) {
    return NoiseConfig::from_snr_db(snr_db, convention == SnrConvention::Lattice ? 1.0 : scheme.energy.value());
}

bool simulate_frame(const SchemeConfig& scheme, const Receiver& receiver, const NoiseConfig& noise,
                    std::size_t coherence_blocks, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::uint8_t> bits(scheme.bits_per_block);
    for (auto& b : bits) b = rng.bit();
    const auto block = encode(scheme, bits);
    const auto channel = draw_channel(rng, coherence_blocks == 0 ? scheme.block_length : coherence_blocks);
    const auto y = transmit(block, channel, noise, rng);
    return receiver.decode(y, channel.h) != bits;
}

SweepResult run_sweep(const SweepConfig& config, const ProgressFn& progress) {
    config.validate();
    const unsigned workers = config.workers != 0 ? config.workers : std::max(1u, std::thread::hardware_concurrency());
    SweepResult result;
    for (const auto& scheme : config.schemes) {
        const Receiver receiver(scheme);
        const std::string label = scheme.label();
        for (double snr : config.snr_db) {
            const auto start = std::chrono::steady_clock::now();
            SweepPoint pt{label, snr, 0, 0, 0.0, config.seed, 0.0, false};
            const NoiseConfig noise =
                config.noiseless ? NoiseConfig::noiseless() : sweep_noise(scheme, snr, config.snr_convention);
            auto run_range = [&](std::uint64_t b, std::uint64_t e) {
                std::uint64_t errs = 0;
                for (std::uint64_t f = b; f < e; ++f)
                    errs += simulate_frame(scheme, receiver, noise, config.coherence_blocks,
                                           frame_seed(config.seed, label, snr, f));
                return errs;
            };
            while (true) {
                const std::uint64_t b = pt.frames;
                const std::uint64_t e = std::min(b + kFrameBatch, config.max_frames);
                if (workers <= 1) {
                    pt.errors += run_range(b, e);
                } else {
                    std::vector<std::uint64_t> errs(workers, 0);
                    std::vector<std::exception_ptr> failures(workers);
                    std::vector<std::thread> pool;
                    const std::uint64_t chunk = (e - b + workers - 1) / workers;
                    for (unsigned w = 0; w < workers; ++w) {
                        const std::uint64_t wb = std::min(e, b + w * chunk);
                        const std::uint64_t we = std::min(e, wb + chunk);
                        pool.emplace_back([&, w, wb, we] {
                            try {
                                errs[w] = run_range(wb, we);
                            } catch (...) {
                                failures[w] = std::current_exception();
                            }
                        });
                    }
                    for (auto& t : pool) t.join();
                    for (auto& f : failures)
                        if (f) std::rethrow_exception(f);
                    for (auto v : errs) pt.errors += v;
                }
                pt.frames = e;
                if (pt.frames >= config.min_frames && pt.errors >= config.min_frame_errors) break;
                if (config.noiseless && pt.frames >= config.min_frames) break;
                if (pt.frames >= config.max_frames) {
                    pt.capped = true;
                    break;
                }
            }
            pt.fer = static_cast<double>(pt.errors) / static_cast<double>(pt.frames);
            pt.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            if (progress) progress(pt);
            result.points.push_back(pt);
        }
    }
    return result;
}

void write_csv(std::ostream& os, const SweepResult& result) {
    os << "scheme,snr_db,frames,errors,fer,seed\n";
    for (const auto& p : result.points)
        os << p.scheme << ',' << format_double(p.snr_db) << ',' << p.frames << ',' << p.errors << ','
           << format_double(p.fer) << ',' << p.seed << '\n';
}

SweepResult parse_csv(std::istream& is) {
    SweepResult out;
    std::string line;
    if (!std::getline(is, line) || trim(line) != "scheme,snr_db,frames,errors,fer,seed")
        throw std::invalid_argument("parse_csv: missing or unexpected header");
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto f = split(line, ",");
        if (f.size() != 6) throw std::invalid_argument("parse_csv: line " + std::to_string(lineno) + " has " +
                                                       std::to_string(f.size()) + " fields");
        SweepPoint p;
        p.scheme = std::string(f[0]);
        p.snr_db = parse_number<double>(f[1], "snr_db");
        p.frames = parse_number<std::uint64_t>(f[2], "frames");
        p.errors = parse_number<std::uint64_t>(f[3], "errors");
        p.fer = parse_number<double>(f[4], "fer");
        p.seed = parse_number<std::uint64_t>(f[5], "seed");
        out.points.push_back(p);
    }
    return out;
}

std::optional<double> snr_at_fer(const std::vector<SweepPoint>& curve, double fer) {
    for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
        const auto& a = curve[i];
        const auto& b = curve[i + 1];
        if (a.fer >= fer && b.fer <= fer && a.fer > 0.0) {
            if (b.fer <= 0.0) return std::nullopt;
            if (a.fer == b.fer) return a.snr_db;
            const double la = std::log10(a.fer), lb = std::log10(b.fer), lt = std::log10(fer);
            return a.snr_db + (la - lt) / (la - lb) * (b.snr_db - a.snr_db);
        }
    }
    return std::nullopt;
}

SchemeConfig parse_scheme_spec(std::string_view spec) {
    const auto parts = split(spec, ":");
    if (parts.empty()) throw std::invalid_argument("empty scheme spec");
    SchemeFields f;
    f.name = std::string(parts[0]);
    const auto kind = parse_scheme_kind(f.name);
    if (!kind) throw std::invalid_argument("unknown scheme '" + f.name + "'");
    std::size_t next = 1;
    if (*kind == SchemeKind::Grs4Qam || *kind == SchemeKind::Grs16Qam) {
        if (parts.size() < 3) throw std::invalid_argument(f.name + " spec needs n and k, e.g. " + f.name + ":4:2");
        f.n = parse_number<int>(parts[1], "n");
        f.k = parse_number<int>(parts[2], "k");
        next = 3;
    } else if (is_uncoded(*kind) && parts.size() > 1) {
        f.length = parse_number<std::size_t>(parts[1], "L");
        next = 2;
    }
    if (next < parts.size()) f.decoder = parse_decoder(parts[next++]);
    if (next != parts.size()) throw std::invalid_argument("trailing fields in scheme spec '" + std::string(spec) + "'");
    return build_scheme(f);
}

SweepConfig parse_sweep_config(std::istream& is) {
    SweepConfig cfg;
    std::vector<SchemeFields> schemes;
    bool in_scheme = false;
    std::string line;
    std::size_t lineno = 0;
    try {
        while (std::getline(is, line)) {
            ++lineno;
            std::string_view text = line;
            if (auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
            text = trim(text);
            if (text.empty()) continue;
            if (text == "[scheme]") {
                schemes.emplace_back();
                in_scheme = true;
                continue;
            }
            const auto eq = text.find('=');
            if (eq == std::string_view::npos) throw std::invalid_argument("expected key = value");
            const auto key = trim(text.substr(0, eq));
            const auto value = trim(text.substr(eq + 1));
            if (in_scheme) {
                auto& s = schemes.back();
                if (key == "name" || key == "scheme") s.name = std::string(value);
                else if (key == "n") s.n = parse_number<int>(value, "n");
                else if (key == "k") s.k = parse_number<int>(value, "k");
                else if (key == "L") s.length = parse_number<std::size_t>(value, "L");
                else if (key == "decoder") s.decoder = parse_decoder(value);
                else if (key == "constellation") s.constellation = std::string(value);
                else throw std::invalid_argument("unknown scheme key '" + std::string(key) + "'");
                continue;
            }
            if (key == "scheme") cfg.schemes.push_back(parse_scheme_spec(value));
            else if (key == "snr_db") cfg.snr_db = parse_snr_list(value);
            else if (key == "min_frames") cfg.min_frames = parse_number<std::uint64_t>(value, key);
            else if (key == "min_frame_errors") cfg.min_frame_errors = parse_number<std::uint64_t>(value, key);
            else if (key == "max_frames") cfg.max_frames = parse_number<std::uint64_t>(value, key);
            else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(value, key);
            else if (key == "coherence") cfg.coherence_blocks = parse_number<std::size_t>(value, key);
            else if (key == "workers") cfg.workers = parse_number<unsigned>(value, key);
            else if (key == "noiseless") cfg.noiseless = parse_bool(value);
            else if (key == "snr_convention") cfg.snr_convention = parse_snr_convention(value);
            else if (key == "output") cfg.output = std::string(value);
            else throw std::invalid_argument("unknown key '" + std::string(key) + "'");
        }
        for (const auto& s : schemes) cfg.schemes.push_back(build_scheme(s));
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + e.what());
    }
    cfg.validate();
    return cfg;
}

SweepConfig load_sweep_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file " + path);
    return parse_sweep_config(in);
}

SweepConfig figure_config(std::string_view name) {
    static const std::map<std::string_view, std::pair<std::vector<std::string_view>, std::string_view>> recipes{
        {"repetition", {{"repetition_id", "repetition_hbar", "uncoded_bpsk_mix:2"}, "4:2:20"}},
        {"grs_ml", {{"grs_4qam:4:2:ml", "uncoded_bpsk:4", "grs_4qam:6:3:ml", "uncoded_bpsk:6"}, "4:2:22"}},
        {"suboptimal",
         {{"grs_4qam:4:2:ml", "grs_4qam:4:2:sub", "grs_4qam:8:4:sub", "grs_4qam:12:6:sub", "uncoded_bpsk:4",
           "grs_4qam:8:6:sub", "grs_4qam:16:12:sub", "uncoded_bpsk_mix:8"},
          "4:2:24"}},
        {"grs16", {{"grs_16qam:4:2", "uncoded_6bpcu:4", "grs_16qam:6:3", "uncoded_6bpcu:6"}, "6:2:30"}},
    };
    const auto it = recipes.find(name);
    if (it == recipes.end()) throw std::invalid_argument("unknown figure '" + std::string(name) + "'");
    SweepConfig cfg;
    for (auto spec : it->second.first) cfg.schemes.push_back(parse_scheme_spec(spec));
    cfg.snr_db = parse_snr_list(it->second.second);
    cfg.snr_convention = SnrConvention::Lattice;
    cfg.output = std::string(name) + ".csv";
    return cfg;
}

}  // namespace gstbc
