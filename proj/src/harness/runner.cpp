#include <chrono>
#include <cmath>

#include "json.hpp"
#include "wvtinfo/checksum.hpp"
#include "wvtinfo/error.hpp"
#include "wvtinfo/harness.hpp"
#include "wvtinfo/infotheory.hpp"
#include "wvtinfo/io.hpp"
#include "wvtinfo/parallel.hpp"

namespace wvtinfo {

namespace {

enum RunTag : std::uint64_t { kLocalization = 101, kVolume = 102 };

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::size_t resolve_workers(std::size_t w) { return w == 0 ? default_workers() : w; }

std::string snr_label(double snr) {
    if (snr == -INFINITY) return "neginf";
    std::string s = format_double(snr);
    for (auto& ch : s)
        if (ch == '-') ch = 'm';
    return s;
}

}  // namespace

RunManifest run_detection_experiment(const RunConfig& cfg, std::size_t workers) {
    const auto t0 = Clock::now();
    validate_config(cfg);
    const std::filesystem::path dir = cfg.output_dir;
    ensure_writable(dir);
    workers = resolve_workers(workers);
    write_text(dir / "config.json", serialize_config(cfg));

    for (ModKind mod : cfg.modulations) {
        const ScenarioSpec s = scenario_for(cfg, mod);
        const CurveSet set =
            detection_curves(s, cfg.metrics, cfg.snr_db, cfg.n_trials, cfg.p_fa, Seed{cfg.seed}, workers);
        for (const auto& c : set.curves) {
            const std::string tag = to_string(c.metric) + "_" + to_string(mod);
            write_text(dir / ("curve_" + tag + ".csv"), curve_csv({c}));
            std::string values;
            for (const auto& b : set.baseline_metrics) values += format_double(b[index_of(c.metric)]) + "\n";
            write_text(dir / ("threshold_" + tag + ".json"), threshold_json(c.threshold, sha256_hex(values)));
        }
    }
    return write_manifest(dir, cfg, seconds_since(t0), workers);
}

RunManifest run_localization(const RunConfig& cfg, const std::vector<double>& snr_list, std::size_t workers) {
    const auto t0 = Clock::now();
    validate_config(cfg);
    const std::filesystem::path dir = cfg.output_dir;
    ensure_writable(dir);
    workers = resolve_workers(workers);
    write_text(dir / "config.json", serialize_config(cfg));
    const WindowSpec win{LagWindowKind::Gaussian, cfg.localization_sigma};
    const Seed seed{cfg.seed};

    struct Spectra {
        SpectralDensity psd, rho, wvt2;
    };
    auto spectra = [&](const Waveform& w) {
        const Waveform c = remove_mean(w);
        const ColumnSums cs = wvt_column_sums(c, win);
        return Spectra{psd(c), {cs.w_dt, cs.df, 0.0}, {cs.w2_dt, cs.df, 0.0}};
    };
    auto mean_of = [](const std::vector<SpectralDensity>& v) {
        SpectralDensity m = v.front();
        for (std::size_t i = 1; i < v.size(); ++i)
            for (std::size_t k = 0; k < m.size(); ++k) m.values[k] += v[i].values[k];
        for (auto& x : m.values) x /= static_cast<double>(v.size());
        return m;
    };

    for (ModKind mod : cfg.modulations) {
        const ScenarioSpec s = scenario_for(cfg, mod);
        const std::size_t K = cfg.background_draws;
        std::vector<Spectra> bgs(K);
        parallel_for(K, workers, [&](std::size_t d) {
            bgs[d] = spectra(make_background(s, derive(seed, {kLocalization, 1, d})));
        });
        std::vector<SpectralDensity> p, r, q;
        for (const auto& b : bgs) {
            p.push_back(b.psd);
            r.push_back(b.rho);
            q.push_back(b.wvt2);
        }
        const Spectra mean{mean_of(p), mean_of(r), mean_of(q)};

        const Waveform bg = make_background(s, derive(seed, {kLocalization, 0}));
        const Waveform sig = make_injection(s, derive(seed, {kLocalization, 2}));
        std::vector<Spectra> out(snr_list.size());
        parallel_for(snr_list.size(), workers, [&](std::size_t i) { out[i] = spectra(inject(bg, sig, snr_list[i])); });
        for (std::size_t i = 0; i < snr_list.size(); ++i) {
            const std::string tag = to_string(mod) + "_snr" + snr_label(snr_list[i]) + ".csv";
            write_spectral_density(dir / ("excess_psd_" + tag), spectrum_excess(out[i].psd, mean.psd));
            write_spectral_density(dir / ("excess_rho_" + tag), spectrum_excess(out[i].rho, mean.rho));
            write_spectral_density(dir / ("excess_wvt2_" + tag), spectrum_excess(out[i].wvt2, mean.wvt2));
        }
    }
    return write_manifest(dir, cfg, seconds_since(t0), workers);
}

std::vector<VolumeSeries> volume_series(const RunConfig& cfg, ModKind kind, const std::vector<double>& snr_list,
                                        std::size_t workers) {
    validate_config(cfg);
    workers = resolve_workers(workers);
    const Seed seed{cfg.seed};
    const std::size_t R = cfg.volume_symbol_rates.size();
    const std::size_t S = snr_list.size();
    const std::size_t D = cfg.volume_draws;
    const double back_center = 0.75 * cfg.sample_rate / 2.0;

    std::vector<double> vols(R * S * D);
    parallel_for(R * S * D, workers, [&](std::size_t idx) {
        const std::size_t r = idx / (S * D);
        const std::size_t si = (idx / D) % S;
        const std::size_t d = idx % D;
        ScenarioSpec s = scenario_for(cfg, kind);
        s.injection.symbol_rate = cfg.volume_symbol_rates[r];
        // Same background and message at every SNR of one draw.
        const Waveform w = normalize(make_trial(s, snr_list[si], derive(seed, {kVolume, r, d})));
        const ColumnSums cs = wvt_column_sums(w);
        SpectralDensity s2{std::vector<double>(cs.w_dt.size()), cs.df, 0.0};
        for (std::size_t k = 0; k < s2.size(); ++k) s2.values[k] = cs.w_dt[k] - cs.w2_dt[k];
        const double half = cfg.volume_symbol_rates[r] / 2.0;
        const Band sig{cfg.carrier_hz - half, cfg.carrier_hz + half};
        const Band back{back_center - half, back_center + half};
        vols[idx] = delta_volume(s2, sig, back);
    });

    std::vector<VolumeSeries> out;
    for (std::size_t r = 0; r < R; ++r) {
        VolumeSeries vs;
        vs.modulation = kind;
        vs.symbol_rate = cfg.volume_symbol_rates[r];
        vs.reliable = kind != ModKind::MFSK;
        for (std::size_t si = 0; si < S; ++si) {
            double m = 0.0;
            for (std::size_t d = 0; d < D; ++d) m += vols[(r * S + si) * D + d];
            vs.points.push_back({vs.symbol_rate, snr_list[si], m / static_cast<double>(D)});
        }
        if (vs.reliable) {
            for (std::size_t si = 1; si < S; ++si) {
                const double a = vs.points[si - 1].volume, b = vs.points[si].volume;
                if (std::abs(b - a) < cfg.volume_tolerance * std::abs(b)) {
                    vs.converged_snr = vs.points[si].snr_db;
                    break;
                }
            }
        }
        out.push_back(std::move(vs));
    }
    return out;
}

RunManifest run_volume(const RunConfig& cfg, const std::vector<double>& snr_list, std::size_t workers) {
    const auto t0 = Clock::now();
    validate_config(cfg);
    const std::filesystem::path dir = cfg.output_dir;
    ensure_writable(dir);
    workers = resolve_workers(workers);
    write_text(dir / "config.json", serialize_config(cfg));

    std::string csv = "modulation,symbol_rate,snr_db,neg_delta_s2_nu\n";
    nlohmann::ordered_json meta = nlohmann::json::array();
    for (ModKind mod : cfg.modulations) {
        for (const auto& vs : volume_series(cfg, mod, snr_list, workers)) {
            for (const auto& p : vs.points)
                csv += to_string(mod) + ',' + format_double(p.symbol_rate) + ',' + format_double(p.snr_db) + ',' +
                       format_double(p.volume) + '\n';
            nlohmann::ordered_json e;
            e["modulation"] = to_string(mod);
            e["symbol_rate"] = vs.symbol_rate;
            e["converged"] = vs.converged_snr.has_value();
            e["converged_snr_db"] = vs.converged_snr ? nlohmann::json(*vs.converged_snr) : nlohmann::json();
            e["reliable"] = vs.reliable;
            meta.push_back(e);
        }
    }
    write_text(dir / "volume.csv", csv);
    write_text(dir / "volume_meta.json", meta.dump(2) + "\n");
    return write_manifest(dir, cfg, seconds_since(t0), workers);
}

}  // namespace wvtinfo
