#include "json.hpp"
#include "wvtinfo/detection.hpp"
#include "wvtinfo/io.hpp"

namespace wvtinfo {

std::string curve_csv(const std::vector<DetectionCurve>& curves) {
    std::string text = "metric,scenario_id,snr_db,rate,n_trials,p_fa,seed\n";
    for (const auto& c : curves) {
        for (std::size_t i = 0; i < c.snr_grid.size(); ++i) {
            text += to_string(c.metric) + ',' + c.scenario_id + ',' + format_double(c.snr_grid[i]) + ',' +
                    format_double(c.rates[i]) + ',' + std::to_string(c.n_trials) + ',' + format_double(c.p_fa) +
                    ',' + std::to_string(c.seed) + '\n';
        }
    }
    return text;
}

std::string threshold_json(const Threshold& th, const std::string& baseline_digest) {
    nlohmann::ordered_json j;
    j["metric"] = to_string(th.metric);
    j["tail"] = tail(th.metric) == Tail::Upper ? "upper" : "lower";
    j["value"] = th.value;
    j["p_fa"] = th.p_fa;
    j["n_baseline"] = th.n_baseline;
    j["baseline_digest"] = baseline_digest;
    return j.dump(2) + "\n";
}

}  // namespace wvtinfo
