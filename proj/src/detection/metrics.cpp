#include <algorithm>
#include <cmath>
#include <map>

#include "wvtinfo/detection.hpp"
#include "wvtinfo/error.hpp"
#include "wvtinfo/infotheory.hpp"

namespace wvtinfo {

Tail tail(MetricKind kind) {
    switch (kind) {
        case MetricKind::I2NuEntropy:
        case MetricKind::S2NuEntropy:
        case MetricKind::PsdEntropy: return Tail::Lower;
        default: return Tail::Upper;
    }
}

std::string to_string(MetricKind kind) {
    switch (kind) {
        case MetricKind::I2NuEntropy: return "i2-nu";
        case MetricKind::S2NuEntropy: return "s2-nu";
        case MetricKind::RhoNuEntropy: return "rho-nu";
        case MetricKind::Wvt2NuEntropy: return "wvt2-nu";
        case MetricKind::PsdPeak: return "psd-peak";
        case MetricKind::PsdEntropy: return "psd-entropy";
    }
    return "unknown";
}

MetricKind parse_metric(const std::string& name) {
    for (MetricKind k : kAllMetrics)
        if (to_string(k) == name) return k;
    throw InvalidArgument("unknown metric '" + name + "'");
}

std::size_t index_of(MetricKind kind) { return static_cast<std::size_t>(kind); }

std::optional<WindowSpec> WvtVariant::window() const {
    if (kind == Full) return std::nullopt;
    return WindowSpec{LagWindowKind::Gaussian, sigma};
}

std::string WvtVariant::to_string() const {
    return kind == Full ? "full" : "pseudo:" + std::to_string(sigma);
}

namespace {

struct PsdMetrics {
    double peak;
    double entropy;
};

PsdMetrics psd_metrics(const Waveform& normalized) {
    const SpectralDensity s = psd(normalized);
    const double peak = *std::max_element(s.values.begin(), s.values.end()) * s.df;
    return {peak, shannon_entropy({s.values, s.df})};
}

}  // namespace

std::array<double, 6> compute_all_metrics(const Waveform& w, const WvtVariant& variant) {
    if (w.size() < 2) throw InvalidArgument("compute_metric: need at least two samples");
    const Waveform centered = remove_mean(w);
    const Waveform x = normalize(w);
    double energy = 0.0;
    for (const auto& v : centered.samples()) energy += std::norm(v);
    energy *= w.dt();

    const ColumnSums cs = wvt_column_sums(x, variant.window());
    const std::size_t K = cs.w_dt.size();
    std::vector<double> s2_pos(K), rho(K), w2(K);
    for (std::size_t k = 0; k < K; ++k) {
        s2_pos[k] = std::max(0.0, cs.w_dt[k] - cs.w2_dt[k]);
        // Relaxed spectra of the mean-removed waveform: W scales with its energy.
        rho[k] = std::max(0.0, energy * cs.w_dt[k]);
        w2[k] = energy * energy * cs.w2_dt[k];
    }

    std::array<double, 6> out{};
    out[index_of(MetricKind::I2NuEntropy)] = shannon_entropy({cs.w2_dt, cs.df});
    out[index_of(MetricKind::S2NuEntropy)] = shannon_entropy({s2_pos, cs.df});
    out[index_of(MetricKind::RhoNuEntropy)] = shannon_functional({rho, cs.df});
    out[index_of(MetricKind::Wvt2NuEntropy)] = shannon_functional({w2, cs.df});
    const PsdMetrics pm = psd_metrics(x);
    out[index_of(MetricKind::PsdPeak)] = pm.peak;
    out[index_of(MetricKind::PsdEntropy)] = pm.entropy;
    return out;
}

double compute_metric(MetricKind kind, const Waveform& w, const WvtVariant& variant) {
    if (kind == MetricKind::PsdPeak || kind == MetricKind::PsdEntropy) {
        if (w.size() < 2) throw InvalidArgument("compute_metric: need at least two samples");
        const PsdMetrics pm = psd_metrics(normalize(w));
        return kind == MetricKind::PsdPeak ? pm.peak : pm.entropy;
    }
    return compute_all_metrics(w, variant)[index_of(kind)];
}

}  // namespace wvtinfo
