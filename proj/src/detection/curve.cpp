#include <cmath>

#include "wvtinfo/detection.hpp"
#include "wvtinfo/error.hpp"
#include "wvtinfo/parallel.hpp"

namespace wvtinfo {

CurveSet detection_curves(const ScenarioSpec& s, const std::vector<MetricKind>& kinds,
                          const std::vector<double>& snr_grid, std::size_t n_trials, double p_fa,
                          Seed seed, std::size_t workers) {
    validate(s);
    if (n_trials < 20) throw InvalidArgument("detection_curve: need at least 20 trials");
    if (kinds.empty()) throw InvalidArgument("detection_curve: no metrics requested");

    const std::size_t n_snr = snr_grid.size();
    const std::size_t total = n_trials * (1 + n_snr);
    std::vector<std::array<double, 6>> results(total);
    parallel_for(total, workers, [&](std::size_t i) {
        Waveform w = (i < n_trials)
                         ? make_background(s, derive(seed, {kBaseline, i}))
                         : [&] {
                               const std::size_t j = i - n_trials;
                               const std::size_t snr_idx = j / n_trials;
                               const std::size_t t = j % n_trials;
                               return make_trial(s, snr_grid[snr_idx], derive(seed, {kTrial, snr_idx, t}));
                           }();
        results[i] = compute_all_metrics(w, s.variant);
    });

    CurveSet out;
    out.baseline_metrics.assign(results.begin(), results.begin() + static_cast<std::ptrdiff_t>(n_trials));
    for (MetricKind kind : kinds) {
        const std::size_t m = index_of(kind);
        std::vector<double> base(n_trials);
        for (std::size_t b = 0; b < n_trials; ++b) base[b] = results[b][m];
        DetectionCurve c;
        c.metric = kind;
        c.scenario_id = s.id;
        c.snr_grid = snr_grid;
        c.n_trials = n_trials;
        c.p_fa = p_fa;
        c.seed = seed.value;
        c.threshold = calibrate_from_values(kind, base, p_fa);
        c.rates.resize(n_snr);
        for (std::size_t si = 0; si < n_snr; ++si) {
            std::size_t hits = 0;
            for (std::size_t t = 0; t < n_trials; ++t)
                if (exceeds(c.threshold, results[n_trials * (1 + si) + t][m])) ++hits;
            c.rates[si] = static_cast<double>(hits) / static_cast<double>(n_trials);
        }
        out.curves.push_back(std::move(c));
    }
    return out;
}

DetectionCurve detection_curve(const ScenarioSpec& s, MetricKind kind, const std::vector<double>& snr_grid,
                               std::size_t n_trials, double p_fa, Seed seed, std::size_t workers) {
    return detection_curves(s, {kind}, snr_grid, n_trials, p_fa, seed, workers).curves.front();
}

std::optional<double> snr_at_rate(const DetectionCurve& c, double rate) {
    for (std::size_t i = 0; i < c.rates.size(); ++i) {
        if (c.rates[i] < rate) continue;
        if (i == 0 || !std::isfinite(c.snr_grid[i - 1])) return c.snr_grid[i];
        const double r0 = c.rates[i - 1], r1 = c.rates[i];
        const double x0 = c.snr_grid[i - 1], x1 = c.snr_grid[i];
        return x0 + (rate - r0) / (r1 - r0) * (x1 - x0);
    }
    return std::nullopt;
}

std::vector<double> isotonic_fit(const std::vector<double>& y) {
    std::vector<double> level;
    std::vector<std::size_t> count;
    for (double v : y) {
        level.push_back(v);
        count.push_back(1);
        while (level.size() > 1 && level[level.size() - 2] > level.back()) {
            const std::size_t n2 = count.back(), n1 = count[count.size() - 2];
            const double merged = (level[level.size() - 2] * n1 + level.back() * n2) / static_cast<double>(n1 + n2);
            level.pop_back();
            count.pop_back();
            level.back() = merged;
            count.back() = n1 + n2;
        }
    }
    std::vector<double> out;
    out.reserve(y.size());
    for (std::size_t b = 0; b < level.size(); ++b) out.insert(out.end(), count[b], level[b]);
    return out;
}

}  // namespace wvtinfo
