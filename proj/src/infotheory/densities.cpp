#include <cmath>

#include "wvtinfo/error.hpp"
#include "wvtinfo/infotheory.hpp"
#include "wvtinfo/transforms.hpp"

namespace wvtinfo {

InfoDensities info_densities(const TFGrid& grid) {
    InfoDensities d{grid, grid};
    d.i2.provenance = "i2(" + grid.provenance + ")";
    d.s2.provenance = "s2(" + grid.provenance + ")";
    for (std::size_t i = 0; i < grid.values.size(); ++i) {
        const double w = grid.values[i];
        d.i2.values[i] = w * w;
        d.s2.values[i] = w - w * w;
    }
    return d;
}

double global_information(const TFGrid& grid) {
    double s = 0.0;
    for (double w : grid.values) s += w * w;
    return s * grid.dt * grid.df;
}

double global_entropy(const TFGrid& grid) {
    double s = 0.0;
    for (double w : grid.values) s += w - w * w;
    return s * grid.dt * grid.df;
}

ProjectedDensities projected_densities(const TFGrid& grid) {
    ProjectedDensities p;
    p.s2_t = {std::vector<double>(grid.rows, 0.0), grid.dt, grid.t0};
    p.i2_t = p.s2_t;
    p.s2_nu = {std::vector<double>(grid.cols, 0.0), grid.df, grid.f0};
    p.i2_nu = p.s2_nu;
    for (std::size_t n = 0; n < grid.rows; ++n) {
        auto row = grid.row(n);
        double st = 0.0, it = 0.0;
        for (std::size_t k = 0; k < grid.cols; ++k) {
            const double w = row[k];
            st += w - w * w;
            it += w * w;
            p.s2_nu.values[k] += w - w * w;
            p.i2_nu.values[k] += w * w;
        }
        p.s2_t.values[n] = st * grid.df;
        p.i2_t.values[n] = it * grid.df;
    }
    for (auto& v : p.s2_nu.values) v *= grid.dt;
    for (auto& v : p.i2_nu.values) v *= grid.dt;
    return p;
}

SpectralDensity wvt2_freq_spectrum(const TFGrid& grid) {
    SpectralDensity out{std::vector<double>(grid.cols, 0.0), grid.df, grid.f0};
    for (std::size_t n = 0; n < grid.rows; ++n) {
        auto row = grid.row(n);
        for (std::size_t k = 0; k < grid.cols; ++k) out.values[k] += row[k] * row[k];
    }
    for (auto& v : out.values) v *= grid.dt;
    return out;
}

namespace {

void check_band(const SpectralDensity& s, const Band& b) {
    if (!(b.f_lo < b.f_hi)) throw InvalidArgument("band: f_lo must be below f_hi");
    const double lo = s.f0 - 0.5 * s.df;
    const double hi = s.f0 + (static_cast<double>(s.size()) - 0.5) * s.df;
    if (b.f_lo < lo || b.f_hi > hi) throw InvalidArgument("band: outside the frequency axis");
}

}  // namespace

double entropy_volume(const SpectralDensity& s2_nu, const Band& band) {
    check_band(s2_nu, band);
    double v = 0.0;
    for (std::size_t k = 0; k < s2_nu.size(); ++k) {
        const double f = s2_nu.freq(k);
        if (f >= band.f_lo && f <= band.f_hi) v += s2_nu.values[k];
    }
    return v * s2_nu.df;
}

double delta_volume(const SpectralDensity& s2_nu, const Band& sig_band, const Band& back_band) {
    const double ws = sig_band.width(), wb = back_band.width();
    if (std::abs(ws - wb) > 1e-9 * std::max(std::abs(ws), std::abs(wb)))
        throw InvalidArgument("delta_volume: bands must have equal widths");
    return entropy_volume(s2_nu, back_band) - entropy_volume(s2_nu, sig_band);
}

}  // namespace wvtinfo
