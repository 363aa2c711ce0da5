#pragma once

#include <vector>

#include "wvtinfo/tfgrid.hpp"
#include "wvtinfo/waveform.hpp"

namespace wvtinfo {

// Nonnegative weights on bins of width bin_measure. Probabilities are
// weights * bin_measure, renormalised to unit total by the entropy functions.
struct ProbVector {
    std::vector<double> weights;
    double bin_measure = 1.0;
};

// (1 - sum p^alpha) / (alpha - 1); alpha == 1 gives shannon_entropy.
double tsallis_entropy(const ProbVector& p, double alpha);

// -sum p ln p with 0 ln 0 = 0.
double shannon_entropy(const ProbVector& p);

// -sum q ln q with q = weights * bin_measure taken as is, without
// renormalisation. Used where the overall scale carries information.
double shannon_functional(const ProbVector& p);

struct InfoDensities {
    TFGrid i2;  // W^2
    TFGrid s2;  // W - W^2
};

InfoDensities info_densities(const TFGrid& grid);

// Global I2 = sum W^2 dt df and S2 = sum (W - W^2) dt df.
double global_information(const TFGrid& grid);
double global_entropy(const TFGrid& grid);

struct ProjectedDensities {
    TimeSeries s2_t;
    TimeSeries i2_t;
    SpectralDensity s2_nu;
    SpectralDensity i2_nu;
};

ProjectedDensities projected_densities(const TFGrid& grid);

// sum_n W^2 dt per column.
SpectralDensity wvt2_freq_spectrum(const TFGrid& grid);

struct Band {
    double f_lo = 0.0;
    double f_hi = 0.0;
    double width() const { return f_hi - f_lo; }
};

// Sum of S2_nu * df over bins whose centre frequency lies in [f_lo, f_hi].
double entropy_volume(const SpectralDensity& s2_nu, const Band& band);

// entropy_volume(back) - entropy_volume(sig); bands must have equal width.
double delta_volume(const SpectralDensity& s2_nu, const Band& sig_band, const Band& back_band);

}  // namespace wvtinfo
