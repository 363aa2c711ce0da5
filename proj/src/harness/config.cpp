#include <cmath>
#include <functional>
#include <map>

#include "json.hpp"
#include "wvtinfo/error.hpp"
#include "wvtinfo/harness.hpp"
#include "wvtinfo/io.hpp"

namespace wvtinfo {

using nlohmann::json;
using nlohmann::ordered_json;

std::string to_string(ScalePreset p) { return p == ScalePreset::Desk ? "desk" : "paper"; }

namespace {

std::vector<double> grid(double start, double stop, double step) {
    std::vector<double> out;
    const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back(start + step * static_cast<double>(i));
    return out;
}

std::string location(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return std::to_string(line) + ":" + std::to_string(col);
}

template <typename T>
T as(const json& v, const std::string& key, const char* expected) {
    try {
        return v.get<T>();
    } catch (const json::exception&) {
        throw ConfigError(key, std::string("expected ") + expected);
    }
}

double number(const json& v, const std::string& key) {
    if (!v.is_number()) throw ConfigError(key, "expected a number");
    return v.get<double>();
}

std::size_t count(const json& v, const std::string& key) {
    if (!v.is_number_integer() || v.get<long long>() < 0) throw ConfigError(key, "expected a nonnegative integer");
    return v.get<std::size_t>();
}

std::vector<double> number_list(const json& v, const std::string& key) {
    if (v.is_object()) {
        for (const char* k : {"start", "stop", "step"})
            if (!v.contains(k)) throw ConfigError(key + "." + k, "missing");
        const double step = number(v["step"], key + ".step");
        if (!(step > 0.0)) throw ConfigError(key + ".step", "must be positive");
        return grid(number(v["start"], key + ".start"), number(v["stop"], key + ".stop"), step);
    }
    if (!v.is_array()) throw ConfigError(key, "expected a list of numbers or {start, stop, step}");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string k = key + "[" + std::to_string(i) + "]";
        if (v[i].is_string() && v[i].get<std::string>() == "-inf")
            out.push_back(-INFINITY);
        else
            out.push_back(number(v[i], k));
    }
    return out;
}

json number_list_json(const std::vector<double>& xs) {
    json a = json::array();
    for (double x : xs) {
        if (x == -INFINITY)
            a.push_back("-inf");
        else
            a.push_back(x);
    }
    return a;
}

}  // namespace

RunConfig default_config(ScalePreset preset) {
    RunConfig c;
    c.preset = preset;
    c.snr_db = grid(-45.0, 20.0, 2.5);
    c.volume_snr_db = grid(-20.0, 60.0, 5.0);
    if (preset == ScalePreset::Paper) {
        c.n_trials = 400;
        c.waveform_len = 10000;
    }
    return c;
}

RunConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(location(text, e.byte), "malformed JSON");
    }
    if (!root.is_object()) throw ConfigError("1:1", "top level must be an object");

    ScalePreset preset = ScalePreset::Desk;
    if (root.contains("preset")) {
        const auto p = as<std::string>(root["preset"], "preset", "a string");
        if (p == "desk")
            preset = ScalePreset::Desk;
        else if (p == "paper")
            preset = ScalePreset::Paper;
        else
            throw ConfigError("preset", "expected \"desk\" or \"paper\"");
    }
    RunConfig c = default_config(preset);

    using Setter = std::function<void(const json&, const std::string&)>;
    const std::map<std::string, Setter> fields{
        {"preset", [](const json&, const std::string&) {}},
        {"scenario",
         [&](const json& v, const std::string& k) {
             c.scenario = as<std::string>(v, k, "a string");
             try {
                 make_scenario(c.scenario);
             } catch (const InvalidArgument& e) {
                 throw ConfigError(k, e.what());
             }
         }},
        {"modulations",
         [&](const json& v, const std::string& k) {
             if (!v.is_array() || v.empty()) throw ConfigError(k, "expected a nonempty list");
             c.modulations.clear();
             for (std::size_t i = 0; i < v.size(); ++i) {
                 const std::string ki = k + "[" + std::to_string(i) + "]";
                 try {
                     c.modulations.push_back(parse_mod_kind(as<std::string>(v[i], ki, "a string")));
                 } catch (const InvalidArgument& e) {
                     throw ConfigError(ki, e.what());
                 }
             }
         }},
        {"metrics",
         [&](const json& v, const std::string& k) {
             if (!v.is_array() || v.empty()) throw ConfigError(k, "expected a nonempty list");
             c.metrics.clear();
             for (std::size_t i = 0; i < v.size(); ++i) {
                 const std::string ki = k + "[" + std::to_string(i) + "]";
                 try {
                     c.metrics.push_back(parse_metric(as<std::string>(v[i], ki, "a string")));
                 } catch (const InvalidArgument& e) {
                     throw ConfigError(ki, e.what());
                 }
             }
         }},
        {"snr_db", [&](const json& v, const std::string& k) { c.snr_db = number_list(v, k); }},
        {"n_trials", [&](const json& v, const std::string& k) { c.n_trials = count(v, k); }},
        {"p_fa", [&](const json& v, const std::string& k) { c.p_fa = number(v, k); }},
        {"seed",
         [&](const json& v, const std::string& k) {
             if (!v.is_number_unsigned()) throw ConfigError(k, "expected an unsigned integer");
             c.seed = v.get<std::uint64_t>();
         }},
        {"output_dir", [&](const json& v, const std::string& k) { c.output_dir = as<std::string>(v, k, "a string"); }},
        {"waveform_len", [&](const json& v, const std::string& k) { c.waveform_len = count(v, k); }},
        {"sample_rate", [&](const json& v, const std::string& k) { c.sample_rate = number(v, k); }},
        {"carrier_hz", [&](const json& v, const std::string& k) { c.carrier_hz = number(v, k); }},
        {"symbol_rate", [&](const json& v, const std::string& k) { c.symbol_rate = number(v, k); }},
        {"symbol_rates", [&](const json& v, const std::string& k) { c.symbol_rates = number_list(v, k); }},
        {"rrc_rolloff", [&](const json& v, const std::string& k) { c.rrc_rolloff = number(v, k); }},
        {"rrc_span", [&](const json& v, const std::string& k) { c.rrc_span = static_cast<int>(count(v, k)); }},
        {"mfsk_hop_interval",
         [&](const json& v, const std::string& k) { c.mfsk_hop_interval = static_cast<int>(count(v, k)); }},
        {"mfsk_tones", [&](const json& v, const std::string& k) { c.mfsk_tones = count(v, k); }},
        {"clutter_power", [&](const json& v, const std::string& k) { c.clutter_power = number(v, k); }},
        {"clutter_symbol_rate", [&](const json& v, const std::string& k) { c.clutter_symbol_rate = number(v, k); }},
        {"pair_center_hz", [&](const json& v, const std::string& k) { c.pair_center_hz = number(v, k); }},
        {"real_valued",
         [&](const json& v, const std::string& k) {
             if (!v.is_boolean()) throw ConfigError(k, "expected true or false");
             c.real_valued = v.get<bool>();
         }},
        {"wvt_variant",
         [&](const json& v, const std::string& k) {
             c.wvt_variant = as<std::string>(v, k, "a string");
             if (c.wvt_variant != "pseudo" && c.wvt_variant != "full")
                 throw ConfigError(k, "expected \"pseudo\" or \"full\"");
         }},
        {"pseudo_sigma", [&](const json& v, const std::string& k) { c.pseudo_sigma = number(v, k); }},
        {"localization_sigma", [&](const json& v, const std::string& k) { c.localization_sigma = number(v, k); }},
        {"nfft", [&](const json& v, const std::string& k) { c.nfft = count(v, k); }},
        {"localization_snr_db", [&](const json& v, const std::string& k) { c.localization_snr_db = number_list(v, k); }},
        {"background_draws", [&](const json& v, const std::string& k) { c.background_draws = count(v, k); }},
        {"volume_snr_db", [&](const json& v, const std::string& k) { c.volume_snr_db = number_list(v, k); }},
        {"volume_symbol_rates", [&](const json& v, const std::string& k) { c.volume_symbol_rates = number_list(v, k); }},
        {"volume_draws", [&](const json& v, const std::string& k) { c.volume_draws = count(v, k); }},
        {"volume_tolerance", [&](const json& v, const std::string& k) { c.volume_tolerance = number(v, k); }},
    };

    for (const auto& [key, value] : root.items()) {
        auto it = fields.find(key);
        if (it == fields.end()) throw ConfigError(key, "unknown key");
        it->second(value, key);
    }
    validate_config(c);
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::string text;
    try {
        text = read_text(path);
    } catch (const IoError& e) {
        throw ConfigError(path.string(), e.what());
    }
    return parse_config(text);
}

std::string serialize_config(const RunConfig& c) {
    ordered_json j;
    j["preset"] = to_string(c.preset);
    j["scenario"] = c.scenario;
    j["modulations"] = json::array();
    for (ModKind m : c.modulations) j["modulations"].push_back(to_string(m));
    j["metrics"] = json::array();
    for (MetricKind m : c.metrics) j["metrics"].push_back(to_string(m));
    j["snr_db"] = number_list_json(c.snr_db);
    j["n_trials"] = c.n_trials;
    j["p_fa"] = c.p_fa;
    j["seed"] = c.seed;
    j["output_dir"] = c.output_dir;
    j["waveform_len"] = c.waveform_len;
    j["sample_rate"] = c.sample_rate;
    j["carrier_hz"] = c.carrier_hz;
    j["symbol_rate"] = c.symbol_rate;
    j["symbol_rates"] = number_list_json(c.symbol_rates);
    j["rrc_rolloff"] = c.rrc_rolloff;
    j["rrc_span"] = c.rrc_span;
    j["mfsk_hop_interval"] = c.mfsk_hop_interval;
    j["mfsk_tones"] = c.mfsk_tones;
    j["clutter_power"] = c.clutter_power;
    j["clutter_symbol_rate"] = c.clutter_symbol_rate;
    j["pair_center_hz"] = c.pair_center_hz;
    j["real_valued"] = c.real_valued;
    j["wvt_variant"] = c.wvt_variant;
    j["pseudo_sigma"] = c.pseudo_sigma;
    j["localization_sigma"] = c.localization_sigma;
    j["nfft"] = c.nfft;
    j["localization_snr_db"] = number_list_json(c.localization_snr_db);
    j["background_draws"] = c.background_draws;
    j["volume_snr_db"] = number_list_json(c.volume_snr_db);
    j["volume_symbol_rates"] = number_list_json(c.volume_symbol_rates);
    j["volume_draws"] = c.volume_draws;
    j["volume_tolerance"] = c.volume_tolerance;
    return j.dump(2) + "\n";
}

void validate_config(const RunConfig& c) {
    if (c.preset == ScalePreset::Desk) {
        if (c.waveform_len > 4096) throw ConfigError("waveform_len", "desk preset allows at most 4096 samples");
        if (c.n_trials > 100) throw ConfigError("n_trials", "desk preset allows at most 100 trials");
    }
    if (c.waveform_len < 16) throw ConfigError("waveform_len", "must be at least 16");
    if (c.n_trials < 20) throw ConfigError("n_trials", "must be at least 20");
    if (!(c.p_fa > 0.0 && c.p_fa < 1.0)) throw ConfigError("p_fa", "must be in (0, 1)");
    if (static_cast<double>(c.n_trials) < std::ceil(1.0 / c.p_fa - 1e-9))
        throw ConfigError("n_trials", "fewer baselines than 1/p_fa");
    if (!(c.sample_rate > 0.0)) throw ConfigError("sample_rate", "must be positive");
    const double nyq = c.sample_rate / 2.0;
    if (!(std::abs(c.carrier_hz) < nyq)) throw ConfigError("carrier_hz", "must be below sample_rate/2");
    if (!(c.symbol_rate > 0.0 && c.symbol_rate <= nyq)) throw ConfigError("symbol_rate", "must be in (0, sample_rate/2]");
    for (std::size_t i = 0; i < c.symbol_rates.size(); ++i)
        if (!(c.symbol_rates[i] > 0.0 && c.symbol_rates[i] <= nyq))
            throw ConfigError("symbol_rates[" + std::to_string(i) + "]", "must be in (0, sample_rate/2]");
    for (std::size_t i = 0; i < c.volume_symbol_rates.size(); ++i)
        if (!(c.volume_symbol_rates[i] > 0.0 && c.volume_symbol_rates[i] <= nyq))
            throw ConfigError("volume_symbol_rates[" + std::to_string(i) + "]", "must be in (0, sample_rate/2]");
    if (!(c.rrc_rolloff >= 0.0 && c.rrc_rolloff <= 1.0)) throw ConfigError("rrc_rolloff", "must be in [0, 1]");
    if (c.rrc_span < 2) throw ConfigError("rrc_span", "must be at least 2");
    if (c.mfsk_hop_interval < 1) throw ConfigError("mfsk_hop_interval", "must be at least 1");
    if (c.mfsk_tones < 2 || (c.mfsk_tones & (c.mfsk_tones - 1)) != 0)
        throw ConfigError("mfsk_tones", "must be a power of two >= 2");
    if (!(c.clutter_power >= 0.0)) throw ConfigError("clutter_power", "must be nonnegative");
    if (!(c.pair_center_hz < nyq)) throw ConfigError("pair_center_hz", "must be below sample_rate/2");
    if (!(c.pseudo_sigma >= 1.0)) throw ConfigError("pseudo_sigma", "must be at least 1");
    if (!(c.localization_sigma >= 1.0)) throw ConfigError("localization_sigma", "must be at least 1");
    if (c.nfft < 1 || c.nfft > c.waveform_len) throw ConfigError("nfft", "must be in [1, waveform_len]");
    if (c.background_draws < 1) throw ConfigError("background_draws", "must be at least 1");
    if (c.volume_draws < 1) throw ConfigError("volume_draws", "must be at least 1");
    if (!(c.volume_tolerance > 0.0)) throw ConfigError("volume_tolerance", "must be positive");
    if (c.snr_db.empty()) throw ConfigError("snr_db", "must not be empty");
    if (c.output_dir.empty()) throw ConfigError("output_dir", "must not be empty");
}

ScenarioSpec scenario_for(const RunConfig& c, ModKind kind) {
    ScenarioSpec s = make_scenario(c.scenario, kind);
    for (auto& cl : s.clutter) {
        cl.power = c.clutter_power;
        cl.symbol_rate = c.clutter_symbol_rate;
        cl.hop_interval = c.mfsk_hop_interval;
    }
    s.injection.carrier_hz = c.carrier_hz;
    s.injection.symbol_rate = c.symbol_rate;
    s.injection.rrc_rolloff = c.rrc_rolloff;
    s.injection.rrc_span = c.rrc_span;
    s.injection.mfsk_hop_interval = c.mfsk_hop_interval;
    s.pair_center_hz = c.pair_center_hz;
    s.n_samples = c.waveform_len;
    s.sample_rate = c.sample_rate;
    s.mfsk_tones = c.mfsk_tones;
    s.real_valued = c.real_valued;
    s.variant = c.wvt_variant == "full" ? WvtVariant::full() : WvtVariant::pseudo(c.pseudo_sigma);
    if (s.id != "awgn+2mfsk") s.policy = MessagePolicy::Random;
    return s;
}

}  // namespace wvtinfo
