#include <algorithm>
#include <cmath>

#include "wvtinfo/detection.hpp"
#include "wvtinfo/error.hpp"

namespace wvtinfo {

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw InvalidArgument("quantile: no values");
    if (!(q >= 0.0 && q <= 1.0)) throw InvalidArgument("quantile: q outside [0, 1]");
    std::sort(values.begin(), values.end());
    const double h = static_cast<double>(values.size() - 1) * q;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

Threshold calibrate_from_values(MetricKind kind, const std::vector<double>& values, double p_fa) {
    if (!(p_fa > 0.0 && p_fa < 1.0)) throw InvalidArgument("calibrate: p_fa must be in (0, 1)");
    const auto need = static_cast<std::size_t>(std::ceil(1.0 / p_fa - 1e-9));
    if (values.size() < need)
        throw InvalidArgument("calibrate: need at least " + std::to_string(need) + " baselines, got " +
                              std::to_string(values.size()));
    Threshold th;
    th.metric = kind;
    th.p_fa = p_fa;
    th.n_baseline = values.size();
    th.value = quantile(values, tail(kind) == Tail::Upper ? 1.0 - p_fa : p_fa);
    return th;
}

Threshold calibrate_threshold(MetricKind kind, const std::vector<Waveform>& baselines, double p_fa,
                              const WvtVariant& variant) {
    std::vector<double> values;
    values.reserve(baselines.size());
    for (const auto& b : baselines) values.push_back(compute_metric(kind, b, variant));
    return calibrate_from_values(kind, values, p_fa);
}

bool exceeds(const Threshold& th, double v) {
    return tail(th.metric) == Tail::Upper ? v > th.value : v < th.value;
}

bool detect(MetricKind kind, const Waveform& w, const Threshold& th, const WvtVariant& variant) {
    if (kind != th.metric)
        throw InvalidArgument("detect: threshold was calibrated for " + to_string(th.metric) + ", not " +
                              to_string(kind));
    return exceeds(th, compute_metric(kind, w, variant));
}

}  // namespace wvtinfo
