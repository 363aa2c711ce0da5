#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wvtinfo/detection.hpp"
#include "wvtinfo/error.hpp"
#include "wvtinfo/harness.hpp"
#include "wvtinfo/infotheory.hpp"
#include "wvtinfo/io.hpp"
#include "wvtinfo/parallel.hpp"
#include "wvtinfo/transforms.hpp"

using namespace wvtinfo;
namespace fs = std::filesystem;

namespace {

double parse_snr(const std::string& s) {
    if (s == "-inf" || s == "none") return -std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw ConfigError("--snr", "not a number: " + s);
    return v;
}

RunConfig config_from(const std::string& path) {
    RunConfig c = path.empty() ? default_config() : load_config(path);
    validate_config(c);
    return c;
}

WvtVariant variant_from(const std::string& name, double sigma) {
    if (name == "full") return WvtVariant::full();
    if (name == "pseudo") return WvtVariant::pseudo(sigma);
    throw ConfigError("--variant", "expected full or pseudo");
}

std::string time_series_csv(const TimeSeries& s) {
    std::string out = "t_s,value\n";
    for (std::size_t n = 0; n < s.size(); ++n)
        out += format_double(s.t0 + static_cast<double>(n) * s.dt) + ',' + format_double(s.values[n]) + '\n';
    return out;
}

void print_manifest(const RunManifest& m, const RunConfig& c) {
    std::printf("wrote %zu files to %s (%.1f s, %zu workers)\n", m.files.size(), c.output_dir.c_str(),
                m.wall_seconds, m.workers);
}

std::vector<Waveform> load_dir(const fs::path& dir) {
    std::vector<fs::path> paths;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file()) paths.push_back(e.path());
    std::sort(paths.begin(), paths.end());
    std::vector<Waveform> out;
    for (const auto& p : paths) out.push_back(load_waveform(p));
    if (out.empty()) throw IoError("no waveforms in " + dir.string());
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wigner-Ville transforms, information measures and detectors for sampled waveforms"};
    app.require_subcommand(1);
    std::size_t workers = 0;
    app.add_option("--workers", workers, "Worker threads (default: WVT_INFO_THREADS or all cores)");

    // synth
    auto* synth = app.add_subcommand("synth", "Synthesize a background with an optional injection");
    std::string synth_cfg, synth_mod = "bpsk", synth_snr = "-inf", synth_out, synth_scenario;
    std::uint64_t synth_seed = 1;
    synth->add_option("--config", synth_cfg, "Run config (JSON)");
    synth->add_option("--scenario", synth_scenario, "Background scenario")
        ->check(CLI::IsMember({"awgn", "awgn+mfsk", "awgn+2mfsk"}));
    synth->add_option("--mod", synth_mod, "Modulation")->check(CLI::IsMember({"ook", "bpsk", "qpsk", "qam64", "mfsk"}));
    synth->add_option("--snr", synth_snr, "Injection SNR in dB (-inf: background only)");
    synth->add_option("--seed", synth_seed, "Seed");
    synth->add_option("--out", synth_out, "Output waveform (.csv for text)")->required();

    // transform
    auto* transform = app.add_subcommand("transform", "Time-frequency transform of a waveform");
    std::string tr_in, tr_out, tr_variant = "wvt";
    double tr_sigma = 100.0, tr_alpha = 1.0, tr_beta = 1.0;
    std::vector<int> tr_b;
    std::vector<double> tr_c;
    std::size_t tr_nfft = 128, tr_hop = 0;
    transform->add_option("input", tr_in, "Input waveform")->required();
    transform->add_option("--variant", tr_variant, "Transform")
        ->check(CLI::IsMember({"wvt", "pseudo", "polynomial", "gabor", "gabor-wigner", "spectrogram"}));
    transform->add_option("--sigma", tr_sigma, "Window width in samples (pseudo, gabor, gabor-wigner)");
    transform->add_option("--b", tr_b, "Polynomial exponents, j = +q/2 .. -q/2");
    transform->add_option("--c", tr_c, "Polynomial lag coefficients, j = +q/2 .. -q/2");
    transform->add_option("--alpha", tr_alpha, "Gabor exponent (gabor-wigner)");
    transform->add_option("--beta", tr_beta, "Wigner exponent (gabor-wigner)");
    transform->add_option("--nfft", tr_nfft, "Spectrogram window length");
    transform->add_option("--hop", tr_hop, "Spectrogram hop (0: nfft)");
    transform->add_option("--out", tr_out, "Output stem; writes <stem>.json and <stem>.bin")->required();

    // measure
    auto* measure = app.add_subcommand("measure", "Densities, marginals, entropies and metrics");
    std::string me_in, me_out, me_variant = "pseudo";
    double me_sigma = 100.0;
    measure->add_option("input", me_in, "Input waveform")->required();
    measure->add_option("--variant", me_variant, "WVT variant for the metrics")->check(CLI::IsMember({"full", "pseudo"}));
    measure->add_option("--sigma", me_sigma, "Pseudo window width");
    measure->add_option("--out-dir", me_out, "Directory for density CSVs");

    // detect
    auto* det = app.add_subcommand("detect", "Threshold one waveform against background baselines");
    std::string de_in, de_metric = "wvt2-nu", de_base, de_variant = "pseudo";
    double de_pfa = 0.05, de_sigma = 100.0;
    det->add_option("input", de_in, "Input waveform")->required();
    det->add_option("--metric", de_metric, "Detection metric")
        ->check(CLI::IsMember({"i2-nu", "s2-nu", "rho-nu", "wvt2-nu", "psd-peak", "psd-entropy"}));
    det->add_option("--baseline-dir", de_base, "Directory of background-only waveforms")->required();
    det->add_option("--pfa", de_pfa, "False-alarm probability");
    det->add_option("--variant", de_variant, "WVT variant")->check(CLI::IsMember({"full", "pseudo"}));
    det->add_option("--sigma", de_sigma, "Pseudo window width");

    // curve, localize, volume
    auto* curve = app.add_subcommand("curve", "Detection-rate curves");
    std::string cu_cfg;
    curve->add_option("--config", cu_cfg, "Run config (JSON)");
    auto* loc = app.add_subcommand("localize", "Background-normalized excess spectra");
    std::string lo_cfg;
    std::vector<std::string> lo_snr;
    loc->add_option("--config", lo_cfg, "Run config (JSON)");
    loc->add_option("--snr", lo_snr, "SNR list in dB (default: localization_snr_db)");
    auto* vol = app.add_subcommand("volume", "Entropy volume against SNR");
    std::string vo_cfg;
    std::vector<std::string> vo_snr;
    vol->add_option("--config", vo_cfg, "Run config (JSON)");
    vol->add_option("--snr", vo_snr, "SNR list in dB (default: volume_snr_db)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (synth->parsed()) {
            RunConfig c = config_from(synth_cfg);
            if (!synth_scenario.empty()) c.scenario = synth_scenario;
            const ScenarioSpec s = scenario_for(c, parse_mod_kind(synth_mod));
            const double snr = parse_snr(synth_snr);
            const Waveform w = make_trial(s, snr, Seed{synth_seed});
            if (fs::path(synth_out).has_parent_path()) fs::create_directories(fs::path(synth_out).parent_path());
            if (fs::path(synth_out).extension() == ".csv")
                write_waveform_csv(synth_out, w);
            else
                write_waveform(synth_out, w);
            std::printf("%zu samples at %s Hz, %s, %s, snr %s dB\n", w.size(), format_double(w.sample_rate()).c_str(),
                        s.id.c_str(), to_string(s.injection.kind).c_str(), format_double(snr).c_str());
        } else if (transform->parsed()) {
            const Waveform w = load_waveform(tr_in);
            TFGrid g;
            if (tr_variant == "wvt") {
                g = wvt(w);
            } else if (tr_variant == "pseudo") {
                g = pseudo_wvt(w, {LagWindowKind::Gaussian, tr_sigma});
            } else if (tr_variant == "polynomial") {
                PolynomialSpec spec;
                if (!tr_b.empty()) {
                    spec.b = tr_b;
                    spec.c = tr_c;
                    spec.q = static_cast<int>(tr_b.size()) - 1;
                }
                g = polynomial_wvt(w, spec);
            } else if (tr_variant == "gabor") {
                g = power(gabor(w, tr_sigma));
            } else if (tr_variant == "gabor-wigner") {
                g = gabor_wigner(w, tr_alpha, tr_beta, tr_sigma);
            } else if (tr_variant == "spectrogram") {
                g = spectrogram(w, tr_nfft, tr_hop, WindowKind::Hann);
            } else {
                throw ConfigError("--variant", "unknown transform " + tr_variant);
            }
            write_tfgrid(tr_out, g);
            std::printf("%zu x %zu grid, dt %s s, df %s Hz\n", g.rows, g.cols, format_double(g.dt).c_str(),
                        format_double(g.df).c_str());
        } else if (measure->parsed()) {
            const Waveform w = load_waveform(me_in);
            const WvtVariant v = variant_from(me_variant, me_sigma);
            const auto win = v.window();
            const TFGrid W = win ? pseudo_wvt(normalize(w), *win) : wvt(normalize(w));
            const ProjectedDensities pd = projected_densities(W);
            std::printf("global_information %s\nglobal_entropy %s\n", format_double(global_information(W)).c_str(),
                        format_double(global_entropy(W)).c_str());
            const auto m = compute_all_metrics(w, v);
            for (MetricKind k : kAllMetrics)
                std::printf("%s %s\n", to_string(k).c_str(), format_double(m[index_of(k)]).c_str());
            if (!me_out.empty()) {
                fs::create_directories(me_out);
                const fs::path d = me_out;
                write_text(d / "time_marginal.csv", time_series_csv(time_marginal(W)));
                write_spectral_density(d / "freq_marginal.csv", freq_marginal(W));
                write_spectral_density(d / "psd.csv", psd(w));
                write_text(d / "s2_t.csv", time_series_csv(pd.s2_t));
                write_text(d / "i2_t.csv", time_series_csv(pd.i2_t));
                write_spectral_density(d / "s2_nu.csv", pd.s2_nu);
                write_spectral_density(d / "i2_nu.csv", pd.i2_nu);
            }
        } else if (det->parsed()) {
            const MetricKind k = parse_metric(de_metric);
            const WvtVariant v = variant_from(de_variant, de_sigma);
            const Threshold th = calibrate_threshold(k, load_dir(de_base), de_pfa, v);
            const double value = compute_metric(k, load_waveform(de_in), v);
            std::printf("metric %s %s\nthreshold %s (%s tail, p_fa %s, %zu baselines)\nverdict %s\n",
                        to_string(k).c_str(), format_double(value).c_str(), format_double(th.value).c_str(),
                        tail(k) == Tail::Upper ? "upper" : "lower", format_double(de_pfa).c_str(), th.n_baseline,
                        exceeds(th, value) ? "detected" : "not detected");
        } else if (curve->parsed()) {
            const RunConfig c = config_from(cu_cfg);
            print_manifest(run_detection_experiment(c, workers), c);
        } else if (loc->parsed()) {
            const RunConfig c = config_from(lo_cfg);
            std::vector<double> snr = c.localization_snr_db;
            if (!lo_snr.empty()) {
                snr.clear();
                for (const auto& s : lo_snr) snr.push_back(parse_snr(s));
            }
            print_manifest(run_localization(c, snr, workers), c);
        } else if (vol->parsed()) {
            const RunConfig c = config_from(vo_cfg);
            std::vector<double> snr = c.volume_snr_db;
            if (!vo_snr.empty()) {
                snr.clear();
                for (const auto& s : vo_snr) snr.push_back(parse_snr(s));
            }
            print_manifest(run_volume(c, snr, workers), c);
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
