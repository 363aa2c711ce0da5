#include <cmath>
#include <complex>

#include "wvtinfo/error.hpp"
#include "wvtinfo/signal.hpp"
#include "wvtinfo/transforms.hpp"

namespace wvtinfo {

TimeSeries time_marginal(const TFGrid& grid) {
    TimeSeries out;
    out.dt = grid.dt;
    out.t0 = grid.t0;
    out.values.assign(grid.rows, 0.0);
    for (std::size_t n = 0; n < grid.rows; ++n) {
        double s = 0.0;
        for (double v : grid.row(n)) s += v;
        out.values[n] = s * grid.df;
    }
    return out;
}

SpectralDensity freq_marginal(const TFGrid& grid) {
    SpectralDensity out;
    out.df = grid.df;
    out.f0 = grid.f0;
    out.values.assign(grid.cols, 0.0);
    for (std::size_t n = 0; n < grid.rows; ++n) {
        auto row = grid.row(n);
        for (std::size_t k = 0; k < grid.cols; ++k) out.values[k] += row[k];
    }
    for (auto& v : out.values) v *= grid.dt;
    return out;
}

namespace {

// Second central moment, in index units, of a density on a circle of
// p.size() points, centred at its circular mean.
double circular_variance(const std::vector<double>& p) {
    const std::size_t n = p.size();
    double total = 0.0;
    std::complex<double> phasor{};
    for (std::size_t i = 0; i < n; ++i) {
        total += p[i];
        phasor += p[i] * std::polar(1.0, 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(n));
    }
    if (!(total > 0.0)) throw DegenerateInput("variance_product: density has no mass");
    if (std::abs(phasor) < 1e-12 * total) throw DegenerateInput("variance_product: density has no circular centre");
    const double centre = std::arg(phasor) / (2.0 * M_PI) * static_cast<double>(n);
    const double dn = static_cast<double>(n);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = std::remainder(static_cast<double>(i) - centre, dn);
        var += p[i] * d * d;
    }
    return var / total;
}

}  // namespace

double variance_product(const Waveform& w) {
    std::vector<double> pt(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) pt[i] = std::norm(w[i]);
    const SpectralDensity spec = psd(w);
    const double var_t = circular_variance(pt) * w.dt() * w.dt();
    const double var_f = circular_variance(spec.values) * spec.df * spec.df;
    return var_t * var_f;
}

}  // namespace wvtinfo
