#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wvtinfo/rng.hpp"
#include "wvtinfo/signal.hpp"
#include "wvtinfo/transforms.hpp"

namespace wvtinfo {

enum class MetricKind { I2NuEntropy, S2NuEntropy, RhoNuEntropy, Wvt2NuEntropy, PsdPeak, PsdEntropy };
enum class Tail { Upper, Lower };

inline constexpr std::array<MetricKind, 6> kAllMetrics{
    MetricKind::I2NuEntropy, MetricKind::S2NuEntropy, MetricKind::RhoNuEntropy,
    MetricKind::Wvt2NuEntropy, MetricKind::PsdPeak, MetricKind::PsdEntropy};

// Direction in which an injected signal moves the metric.
Tail tail(MetricKind kind);
std::string to_string(MetricKind kind);  // "i2-nu", "s2-nu", "rho-nu", "wvt2-nu", "psd-peak", "psd-entropy"
MetricKind parse_metric(const std::string& name);
std::size_t index_of(MetricKind kind);

struct WvtVariant {
    enum Kind { Full, Pseudo } kind = Pseudo;
    double sigma = 100.0;

    static WvtVariant full() { return {Full, 0.0}; }
    static WvtVariant pseudo(double sigma) { return {Pseudo, sigma}; }
    std::optional<WindowSpec> window() const;
    std::string to_string() const;  // "full" or "pseudo:<sigma>"
};

// Metric value for one waveform. Normalised kinds (I2Nu, S2Nu, PsdPeak,
// PsdEntropy) work on normalize(w); the relaxed kinds (RhoNu, Wvt2Nu) only
// remove the mean, so the waveform's scale enters the value.
double compute_metric(MetricKind kind, const Waveform& w, const WvtVariant& variant);

// All six metrics from one transform, indexed by index_of().
std::array<double, 6> compute_all_metrics(const Waveform& w, const WvtVariant& variant);

struct Threshold {
    MetricKind metric = MetricKind::PsdPeak;
    double value = 0.0;
    double p_fa = 0.05;
    std::size_t n_baseline = 0;
};

// Linear-interpolation quantile (Hyndman-Fan type 7) at q in [0, 1].
double quantile(std::vector<double> values, double q);

// Threshold from precomputed background metric values: the (1 - p_fa)
// quantile for Upper-tail kinds, the p_fa quantile for Lower-tail kinds.
Threshold calibrate_from_values(MetricKind kind, const std::vector<double>& values, double p_fa);
Threshold calibrate_threshold(MetricKind kind, const std::vector<Waveform>& baselines, double p_fa,
                              const WvtVariant& variant);

// Strict inequality past the threshold in the kind's tail direction.
bool exceeds(const Threshold& th, double metric_value);
bool detect(MetricKind kind, const Waveform& w, const Threshold& th, const WvtVariant& variant);

// MFSK interferer added to the background.
struct ClutterSpec {
    double center_hz = 1000.0;
    double power = 1.0;  // relative to the unit-power AWGN
    double symbol_rate = 100.0;
    int hop_interval = 50;
};

enum class MessagePolicy { Random, MatchedPair };

struct ScenarioSpec {
    std::string id = "awgn";
    std::vector<ClutterSpec> clutter;
    ModulationSpec injection;
    MessagePolicy policy = MessagePolicy::Random;
    double pair_center_hz = 2000.0;
    std::size_t n_samples = 4096;
    double sample_rate = 1e4;
    WvtVariant variant;
    std::size_t mfsk_tones = 8;
    // Real-valued records (real noise, real carrier), transformed as they are.
    bool real_valued = false;
};

// Desk-scale presets: "awgn", "awgn+mfsk", "awgn+2mfsk".
ScenarioSpec make_scenario(const std::string& id, ModKind injection = ModKind::BPSK);

void validate(const ScenarioSpec& s);

// Background-only record: AWGN plus any clutter, rescaled to unit mean power.
Waveform make_background(const ScenarioSpec& s, Seed seed);

// Unit-power injected signal with a fresh random message. For MatchedPair the
// same symbols are also sent at pair_center_hz.
Waveform make_injection(const ScenarioSpec& s, Seed seed);

// Background plus injection at snr_db (-inf gives the background alone).
Waveform make_trial(const ScenarioSpec& s, double snr_db, Seed seed);

// Stream tags under a run seed.
enum StreamTag : std::uint64_t { kBaseline = 1, kTrial = 2, kBackground = 3, kClutter = 4, kMessage = 5, kHops = 6, kRetry = 7 };

struct DetectionCurve {
    MetricKind metric = MetricKind::PsdPeak;
    std::string scenario_id;
    std::vector<double> snr_grid;
    std::vector<double> rates;
    std::size_t n_trials = 0;
    double p_fa = 0.05;
    std::uint64_t seed = 0;
    Threshold threshold;
};

struct CurveSet {
    std::vector<DetectionCurve> curves;  // one per requested metric, same order
    std::vector<std::array<double, 6>> baseline_metrics;
};

// Calibrates every requested metric once from n_trials background-only
// baselines, then runs n_trials fresh trials per SNR point. All metrics see
// the same waveforms. Output does not depend on `workers`.
CurveSet detection_curves(const ScenarioSpec& s, const std::vector<MetricKind>& kinds,
                          const std::vector<double>& snr_grid, std::size_t n_trials, double p_fa,
                          Seed seed, std::size_t workers = 1);

DetectionCurve detection_curve(const ScenarioSpec& s, MetricKind kind, const std::vector<double>& snr_grid,
                               std::size_t n_trials, double p_fa, Seed seed, std::size_t workers = 1);

// First SNR where the rate reaches 0.5, linearly interpolated between grid
// points. Empty when the curve never gets there.
std::optional<double> snr_at_rate(const DetectionCurve& c, double rate = 0.5);

// Pool-adjacent-violators fit, nondecreasing.
std::vector<double> isotonic_fit(const std::vector<double>& y);

struct ExperimentGeometry {
    double n_obs = 1.0;
    double b_tot = 1.0;
    double b_sig = 1.0;
    double z_pfa = 1.6448536269514722;
};

// Upper-tail standard-normal quantile: Phi^-1(1 - p_fa).
double upper_normal_quantile(double p_fa);

// Phi(z + snr sqrt(n_obs b_tot / b_sig)) - Phi(z); snr is an amplitude ratio.
double analytic_detection_probability(const ExperimentGeometry& g, double snr_linear);

// Binwise spec / background_mean.
SpectralDensity spectrum_excess(const SpectralDensity& spec, const SpectralDensity& background_mean);

// Exports.
std::string curve_csv(const std::vector<DetectionCurve>& curves);
std::string threshold_json(const Threshold& th, const std::string& baseline_digest);

}  // namespace wvtinfo
