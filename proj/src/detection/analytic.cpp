#include <boost/math/distributions/normal.hpp>
#include <cmath>

#include "wvtinfo/detection.hpp"
#include "wvtinfo/error.hpp"

namespace wvtinfo {

double upper_normal_quantile(double p_fa) {
    if (!(p_fa > 0.0 && p_fa < 1.0)) throw InvalidArgument("p_fa must be in (0, 1)");
    const boost::math::normal_distribution<double> n01;
    return boost::math::quantile(boost::math::complement(n01, p_fa));
}

double analytic_detection_probability(const ExperimentGeometry& g, double snr_linear) {
    if (!(g.n_obs > 0.0) || !(g.b_tot > 0.0) || !(g.b_sig > 0.0))
        throw InvalidArgument("analytic_detection_probability: geometry must be positive");
    if (g.b_sig > g.b_tot) throw InvalidArgument("analytic_detection_probability: b_sig exceeds b_tot");
    if (!(snr_linear >= 0.0)) throw InvalidArgument("analytic_detection_probability: snr must be nonnegative");
    const boost::math::normal_distribution<double> n01;
    const double lo = boost::math::cdf(n01, g.z_pfa);
    if (std::isinf(snr_linear)) return 1.0 - lo;
    const double upper = g.z_pfa + snr_linear * std::sqrt(g.n_obs * g.b_tot / g.b_sig);
    return boost::math::cdf(n01, upper) - lo;
}

SpectralDensity spectrum_excess(const SpectralDensity& spec, const SpectralDensity& bg) {
    auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max({std::abs(a), std::abs(b), 1.0}); };
    if (spec.size() != bg.size() || !close(spec.df, bg.df) || !close(spec.f0, bg.f0))
        throw InvalidArgument("spectrum_excess: axes differ");
    SpectralDensity out{std::vector<double>(spec.size()), spec.df, spec.f0};
    for (std::size_t k = 0; k < spec.size(); ++k) {
        if (!(bg.values[k] > 0.0)) throw InvalidArgument("spectrum_excess: background bin is not positive");
        out.values[k] = spec.values[k] / bg.values[k];
    }
    return out;
}

}  // namespace wvtinfo
