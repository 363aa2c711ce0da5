#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wvtinfo/detection.hpp"

namespace wvtinfo {

enum class ScalePreset { Desk, Paper };

// Every experiment parameter, with the paper's values as defaults. The JSON
// form uses the same key names.
struct RunConfig {
    ScalePreset preset = ScalePreset::Desk;
    std::string scenario = "awgn";
    std::vector<ModKind> modulations{ModKind::BPSK};
    std::vector<MetricKind> metrics{kAllMetrics.begin(), kAllMetrics.end()};
    std::vector<double> snr_db;
    std::size_t n_trials = 100;
    double p_fa = 0.05;
    std::uint64_t seed = 1;
    std::string output_dir = "out";
    std::size_t waveform_len = 4096;
    double sample_rate = 1e4;
    double carrier_hz = 1000.0;
    double symbol_rate = 100.0;
    std::vector<double> symbol_rates{1.0, 5.0, 25.0, 100.0, 250.0};
    double rrc_rolloff = 0.35;
    int rrc_span = 8;
    int mfsk_hop_interval = 50;
    std::size_t mfsk_tones = 8;
    double clutter_power = 1.0;
    double clutter_symbol_rate = 100.0;
    double pair_center_hz = 2000.0;
    bool real_valued = false;
    std::string wvt_variant = "pseudo";  // "pseudo" or "full"
    double pseudo_sigma = 100.0;         // detection curves
    double localization_sigma = 60.0;    // localization spectra and Gabor views
    std::size_t nfft = 128;
    std::vector<double> localization_snr_db{-20.0, -10.0, 0.0, 10.0};
    std::size_t background_draws = 20;
    std::vector<double> volume_snr_db;
    std::vector<double> volume_symbol_rates{1.0, 5.0, 25.0, 100.0};
    std::size_t volume_draws = 8;
    double volume_tolerance = 0.05;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

std::string to_string(ScalePreset p);

// Default configuration for a preset (Paper: 400 trials, 10 kSamp records).
RunConfig default_config(ScalePreset preset = ScalePreset::Desk);

// Parses JSON text. Missing keys take the preset defaults. Throws ConfigError
// naming a "line:column" for syntax errors or the field path for bad values.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const RunConfig& cfg);

// Throws ConfigError when values are out of range or exceed the preset caps.
void validate_config(const RunConfig& cfg);

// Scenario for one modulation under cfg.
ScenarioSpec scenario_for(const RunConfig& cfg, ModKind kind);

struct ManifestEntry {
    std::string file;
    std::string sha256;
    std::uintmax_t bytes = 0;
};

struct RunManifest {
    std::string config_digest;
    std::string tool_version;
    std::vector<ManifestEntry> files;
    double wall_seconds = 0.0;
    std::size_t workers = 1;
};

std::string tool_version();

// Lists every regular file in dir except manifest.json, with checksums, and
// writes manifest.json.
RunManifest write_manifest(const std::filesystem::path& dir, const RunConfig& cfg, double wall_seconds,
                           std::size_t workers);

// Creates dir if needed and checks that it accepts files.
void ensure_writable(const std::filesystem::path& dir);

// One curve CSV per (metric, modulation), thresholds per modulation, then the
// manifest.
RunManifest run_detection_experiment(const RunConfig& cfg, std::size_t workers = 0);

// Excess spectra (PSD, rho_nu, WVT^2_nu) against the mean of
// cfg.background_draws backgrounds; every SNR reuses one background record.
RunManifest run_localization(const RunConfig& cfg, const std::vector<double>& snr_list, std::size_t workers = 0);

struct VolumePoint {
    double symbol_rate = 0.0;
    double snr_db = 0.0;
    double volume = 0.0;  // -Delta S2_nu, mean over draws
};

struct VolumeSeries {
    ModKind modulation = ModKind::BPSK;
    double symbol_rate = 0.0;
    std::vector<VolumePoint> points;
    // First SNR whose change from the previous point is below tolerance.
    std::optional<double> converged_snr;
    bool reliable = true;  // false for MFSK
};

std::vector<VolumeSeries> volume_series(const RunConfig& cfg, ModKind kind, const std::vector<double>& snr_list,
                                        std::size_t workers = 0);
RunManifest run_volume(const RunConfig& cfg, const std::vector<double>& snr_list, std::size_t workers = 0);

}  // namespace wvtinfo
