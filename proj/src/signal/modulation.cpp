#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include "wvtinfo/error.hpp"
#include "wvtinfo/signal.hpp"

namespace wvtinfo {

std::string to_string(ModKind kind) {
    switch (kind) {
        case ModKind::OOK: return "ook";
        case ModKind::BPSK: return "bpsk";
        case ModKind::QPSK: return "qpsk";
        case ModKind::QAM64: return "qam64";
        case ModKind::MFSK: return "mfsk";
    }
    return "unknown";
}

ModKind parse_mod_kind(const std::string& name) {
    static const std::map<std::string, ModKind> table{{"ook", ModKind::OOK},
                                                      {"bpsk", ModKind::BPSK},
                                                      {"qpsk", ModKind::QPSK},
                                                      {"qam64", ModKind::QAM64},
                                                      {"mfsk", ModKind::MFSK}};
    std::string lower = name;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    auto it = table.find(lower);
    if (it == table.end()) throw InvalidArgument("unknown modulation '" + name + "'");
    return it->second;
}

std::vector<double> default_tone_set(double center_hz, double symbol_rate, int count) {
    if (count < 2) throw InvalidArgument("tone set needs at least two tones");
    std::vector<double> tones(static_cast<std::size_t>(count));
    const double lo = center_hz - 4.0 * symbol_rate;
    const double step = 8.0 * symbol_rate / static_cast<double>(count - 1);
    for (int i = 0; i < count; ++i) tones[static_cast<std::size_t>(i)] = lo + step * i;
    return tones;
}

int bits_per_symbol(ModKind kind, std::size_t tone_count) {
    switch (kind) {
        case ModKind::OOK:
        case ModKind::BPSK: return 1;
        case ModKind::QPSK: return 2;
        case ModKind::QAM64: return 6;
        case ModKind::MFSK:
            if (tone_count < 2 || !std::has_single_bit(tone_count))
                throw InvalidArgument("MFSK tone count must be a power of two");
            return std::countr_zero(tone_count);
    }
    return 1;
}

double rrc_pulse(double u, double beta) {
    constexpr double pi = M_PI;
    if (std::abs(u) < 1e-12) return 1.0 - beta + 4.0 * beta / pi;
    if (beta > 0.0 && std::abs(std::abs(u) - 1.0 / (4.0 * beta)) < 1e-9) {
        const double a = pi / (4.0 * beta);
        return beta / std::sqrt(2.0) *
               ((1.0 + 2.0 / pi) * std::sin(a) + (1.0 - 2.0 / pi) * std::cos(a));
    }
    const double num = std::sin(pi * u * (1.0 - beta)) + 4.0 * beta * u * std::cos(pi * u * (1.0 + beta));
    const double den = pi * u * (1.0 - (4.0 * beta * u) * (4.0 * beta * u));
    return num / den;
}

std::vector<double> rrc_taps(double rolloff, int span, int sps) {
    if (!(rolloff >= 0.0 && rolloff <= 1.0)) throw InvalidArgument("rrc_taps: rolloff outside [0, 1]");
    if (span < 2) throw InvalidArgument("rrc_taps: span must be at least 2");
    if (sps < 1) throw InvalidArgument("rrc_taps: sps must be at least 1");
    const int half = (span * sps + 1) / 2;
    std::vector<double> taps(static_cast<std::size_t>(2 * half + 1));
    double e = 0.0;
    for (int i = -half; i <= half; ++i) {
        const double v = rrc_pulse(static_cast<double>(i) / sps, rolloff);
        taps[static_cast<std::size_t>(i + half)] = v;
        e += v * v;
    }
    const double s = 1.0 / std::sqrt(e);
    for (auto& t : taps) t *= s;
    return taps;
}

namespace {

// Binary-reflected Gray decode.
std::uint32_t gray_decode(std::uint32_t g) {
    for (std::uint32_t shift = 1; shift < 32; shift <<= 1) g ^= g >> shift;
    return g;
}

std::size_t tone_count(const ModulationSpec& spec) {
    return spec.mfsk_tone_set.empty() ? 8 : spec.mfsk_tone_set.size();
}

void validate_spec(const ModulationSpec& spec, double fs) {
    const double nyq = fs / 2.0;
    if (!(spec.symbol_rate > 0.0) || spec.symbol_rate > nyq)
        throw InvalidArgument("modulate: symbol rate must be in (0, fs/2]");
    if (!(spec.rrc_rolloff >= 0.0 && spec.rrc_rolloff <= 1.0))
        throw InvalidArgument("modulate: rolloff outside [0, 1]");
    if (spec.rrc_span < 2) throw InvalidArgument("modulate: rrc span must be at least 2");
    if (spec.kind == ModKind::MFSK) {
        if (spec.mfsk_hop_interval < 1) throw InvalidArgument("modulate: hop interval must be >= 1");
        for (double f : spec.mfsk_tone_set)
            if (std::abs(f) >= nyq) throw InvalidArgument("modulate: MFSK tone at or above fs/2");
    } else if (std::abs(spec.carrier_hz) >= nyq) {
        throw InvalidArgument("modulate: carrier at or above fs/2");
    }
}

}  // namespace

cplx constellation_point(ModKind kind, std::uint32_t symbol) {
    switch (kind) {
        case ModKind::OOK:
            if (symbol > 1) break;
            return symbol == 0 ? 0.0 : 1.0;
        case ModKind::BPSK:
            if (symbol > 1) break;
            return symbol == 0 ? 1.0 : -1.0;
        case ModKind::QPSK: {
            if (symbol > 3) break;
            const double s = 1.0 / std::sqrt(2.0);
            return {(symbol & 2u) ? -s : s, (symbol & 1u) ? -s : s};
        }
        case ModKind::QAM64: {
            if (symbol > 63) break;
            const double s = 1.0 / std::sqrt(42.0);
            const double i = 2.0 * gray_decode(symbol >> 3) - 7.0;
            const double q = 2.0 * gray_decode(symbol & 7u) - 7.0;
            return {i * s, q * s};
        }
        case ModKind::MFSK:
            throw InvalidArgument("MFSK has no constellation");
    }
    throw InvalidArgument("symbol out of range for " + to_string(kind));
}

std::size_t symbols_needed(const ModulationSpec& spec, std::size_t n, double sample_rate) {
    const double sps = sample_rate / spec.symbol_rate;
    return static_cast<std::size_t>(std::ceil(static_cast<double>(n) / sps)) +
           static_cast<std::size_t>(spec.rrc_span);
}

Message random_message(ModKind kind, std::size_t n_symbols, Seed seed, std::size_t tones) {
    if (n_symbols == 0) throw InvalidArgument("random_message: need at least one symbol");
    Message msg;
    msg.bits_per_symbol = bits_per_symbol(kind, tones);
    const std::uint64_t m = std::uint64_t{1} << msg.bits_per_symbol;
    Rng rng(seed);
    msg.symbols.resize(n_symbols);
    for (auto& s : msg.symbols) s = static_cast<std::uint32_t>(rng.below(m));
    return msg;
}

Waveform modulate(const ModulationSpec& spec, const Message& msg, std::size_t n,
                  double sample_rate, Seed seed) {
    if (n == 0) throw InvalidArgument("modulate: n must be at least 1");
    validate_spec(spec, sample_rate);
    const std::size_t m = tone_count(spec);
    const int bits = bits_per_symbol(spec.kind, m);
    if (msg.bits_per_symbol != bits)
        throw InvalidArgument("modulate: message bits per symbol do not match " + to_string(spec.kind));
    const std::size_t need = symbols_needed(spec, n, sample_rate);
    if (msg.symbols.size() < need)
        throw InvalidArgument("modulate: message has " + std::to_string(msg.symbols.size()) +
                              " symbols, need " + std::to_string(need));
    const std::uint32_t limit = std::uint32_t{1} << bits;
    for (std::size_t j = 0; j < need; ++j)
        if (msg.symbols[j] >= limit) throw InvalidArgument("modulate: symbol out of range");

    const double fs = sample_rate;
    const double T = 1.0 / spec.symbol_rate;
    std::vector<cplx> out(n);

    if (spec.kind == ModKind::MFSK) {
        // Symbol j occupies [jT, (j+1)T); tone blocks of hop symbols, phase continuous.
        const std::vector<double> tones =
            spec.mfsk_tone_set.empty() ? default_tone_set(spec.carrier_hz, spec.symbol_rate)
                                       : spec.mfsk_tone_set;
        const auto hop = static_cast<std::size_t>(spec.mfsk_hop_interval);
        double phase = 0.0;
        std::size_t cur_block = SIZE_MAX;
        double freq = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const auto j = static_cast<std::size_t>(std::floor(static_cast<double>(k) / fs / T + 1e-12));
            const std::size_t block = j / hop;
            if (block != cur_block) {
                cur_block = block;
                Rng rng(derive(seed, {block}));
                const std::uint64_t offset = rng.below(m);
                freq = tones[(msg.symbols[block * hop] + offset) % m];
            }
            out[k] = std::polar(1.0, phase);
            phase = std::fmod(phase + 2.0 * M_PI * freq / fs, 2.0 * M_PI);
        }
    } else {
        const double half = spec.rrc_span / 2.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double t = static_cast<double>(k) / fs;
            const double u = t / T + half;  // position in symbol units; symbol j centred at u = j
            const auto j_lo = static_cast<long>(std::max(0.0, std::ceil(u - half - 1e-12)));
            const auto j_hi = std::min(static_cast<long>(need) - 1, static_cast<long>(std::floor(u + half + 1e-12)));
            cplx acc{};
            for (long j = j_lo; j <= j_hi; ++j)
                acc += constellation_point(spec.kind, msg.symbols[static_cast<std::size_t>(j)]) *
                       rrc_pulse(u - static_cast<double>(j), spec.rrc_rolloff);
            out[k] = acc * std::polar(1.0, 2.0 * M_PI * spec.carrier_hz * t);
        }
    }

    Waveform raw(std::move(out), fs);
    const double p = mean_power(raw);
    if (!(p > 0.0)) throw DegenerateInput("modulate: message produces a zero-power waveform");
    return scaled(raw, 1.0 / std::sqrt(p));
}

}  // namespace wvtinfo
