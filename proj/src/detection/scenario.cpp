#include <cmath>

#include "wvtinfo/detection.hpp"
#include "wvtinfo/error.hpp"

namespace wvtinfo {

ScenarioSpec make_scenario(const std::string& id, ModKind injection) {
    ScenarioSpec s;
    s.id = id;
    s.injection.kind = injection;
    if (id == "awgn") return s;
    if (id == "awgn+mfsk") {
        s.clutter.push_back({1000.0, 1.0});
        return s;
    }
    if (id == "awgn+2mfsk") {
        s.clutter.push_back({1000.0, 1.0});
        s.clutter.push_back({2000.0, 1.0});
        s.policy = MessagePolicy::MatchedPair;
        s.pair_center_hz = 2000.0;
        return s;
    }
    throw InvalidArgument("unknown scenario '" + id + "'");
}

void validate(const ScenarioSpec& s) {
    const double nyq = s.sample_rate / 2.0;
    if (s.n_samples < 2) throw InvalidArgument("scenario: need at least two samples");
    if (!(s.sample_rate > 0.0)) throw InvalidArgument("scenario: sample rate must be positive");
    for (const auto& c : s.clutter) {
        if (!(c.power >= 0.0)) throw InvalidArgument("scenario: clutter power must be nonnegative");
        for (double f : default_tone_set(c.center_hz, c.symbol_rate))
            if (std::abs(f) >= nyq) throw InvalidArgument("scenario: clutter tone at or above fs/2");
    }
    if (std::abs(s.injection.carrier_hz) >= nyq) throw InvalidArgument("scenario: carrier at or above fs/2");
    if (s.policy == MessagePolicy::MatchedPair && std::abs(s.pair_center_hz) >= nyq)
        throw InvalidArgument("scenario: paired carrier at or above fs/2");
    if (s.variant.kind == WvtVariant::Pseudo && !(s.variant.sigma >= 1.0))
        throw InvalidArgument("scenario: pseudo-WVT sigma must be at least 1");
}

namespace {

Waveform mfsk_clutter(const ScenarioSpec& s, const ClutterSpec& c, Seed seed) {
    ModulationSpec spec;
    spec.kind = ModKind::MFSK;
    spec.carrier_hz = c.center_hz;
    spec.symbol_rate = c.symbol_rate;
    spec.mfsk_hop_interval = c.hop_interval;
    spec.mfsk_tone_set = default_tone_set(c.center_hz, c.symbol_rate, static_cast<int>(s.mfsk_tones));
    const std::size_t need = symbols_needed(spec, s.n_samples, s.sample_rate);
    const Message msg = random_message(ModKind::MFSK, need, derive(seed, {kMessage}), s.mfsk_tones);
    return scaled(modulate(spec, msg, s.n_samples, s.sample_rate, derive(seed, {kHops})), std::sqrt(c.power));
}

Waveform real_part(const Waveform& w) {
    std::vector<cplx> r(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) r[i] = w[i].real();
    return Waveform(std::move(r), w.sample_rate(), w.origin_time());
}

Waveform to_unit_power(const Waveform& w) {
    const double p = mean_power(w);
    if (!(p > 0.0)) throw DegenerateInput("zero-power waveform");
    return scaled(w, 1.0 / std::sqrt(p));
}

ModulationSpec injection_spec(const ScenarioSpec& s) {
    ModulationSpec spec = s.injection;
    if (spec.kind == ModKind::MFSK && spec.mfsk_tone_set.empty())
        spec.mfsk_tone_set = default_tone_set(spec.carrier_hz, spec.symbol_rate, static_cast<int>(s.mfsk_tones));
    return spec;
}

}  // namespace

Waveform make_background(const ScenarioSpec& s, Seed seed) {
    Waveform bg = generate_awgn(s.n_samples, s.sample_rate, derive(seed, {kBackground}));
    for (std::size_t i = 0; i < s.clutter.size(); ++i) {
        if (s.clutter[i].power == 0.0) continue;
        bg = add(bg, mfsk_clutter(s, s.clutter[i], derive(seed, {kClutter, i})));
    }
    return to_unit_power(s.real_valued ? real_part(bg) : bg);
}

Waveform make_injection(const ScenarioSpec& s, Seed seed) {
    const ModulationSpec spec = injection_spec(s);
    const std::size_t need = symbols_needed(spec, s.n_samples, s.sample_rate);
    const Seed hops = derive(seed, {kHops});
    // An all-off OOK message has no power; redraw on a retry substream.
    for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
        const Seed msg_seed = attempt == 0 ? derive(seed, {kMessage}) : derive(seed, {kMessage, kRetry, attempt});
        const Message msg = random_message(spec.kind, need, msg_seed, s.mfsk_tones);
        try {
            Waveform sig = modulate(spec, msg, s.n_samples, s.sample_rate, hops);
            if (s.policy == MessagePolicy::MatchedPair) {
                ModulationSpec second = spec;
                second.carrier_hz = s.pair_center_hz;
                if (second.kind == ModKind::MFSK)
                    second.mfsk_tone_set =
                        default_tone_set(s.pair_center_hz, spec.symbol_rate, static_cast<int>(s.mfsk_tones));
                sig = add(sig, modulate(second, msg, s.n_samples, s.sample_rate, hops));
            }
            return to_unit_power(s.real_valued ? real_part(sig) : sig);
        } catch (const DegenerateInput&) {
        }
    }
    throw DegenerateInput("make_injection: could not draw a message with nonzero power");
}

Waveform make_trial(const ScenarioSpec& s, double snr_db, Seed seed) {
    Waveform bg = make_background(s, seed);
    if (snr_db == -INFINITY) return bg;
    return inject(bg, make_injection(s, seed), snr_db);
}

}  // namespace wvtinfo
