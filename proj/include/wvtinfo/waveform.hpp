#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wvtinfo/fft.hpp"

namespace wvtinfo {

// Uniformly sampled complex time series. Immutable after construction.
class Waveform {
public:
    Waveform(std::vector<cplx> samples, double sample_rate, double origin_time = 0.0);

    std::span<const cplx> samples() const { return samples_; }
    const cplx& operator[](std::size_t i) const { return samples_[i]; }
    std::size_t size() const { return samples_.size(); }
    double sample_rate() const { return sample_rate_; }
    double origin_time() const { return origin_time_; }
    double dt() const { return 1.0 / sample_rate_; }

    // True when every imaginary part is below tol in magnitude.
    bool is_real(double tol = 1e-12) const;

private:
    std::vector<cplx> samples_;
    double sample_rate_;
    double origin_time_;
};

// Real frequency vector: value k sits at f0 + k*df.
struct SpectralDensity {
    std::vector<double> values;
    double df = 1.0;
    double f0 = 0.0;

    std::size_t size() const { return values.size(); }
    double freq(std::size_t k) const { return f0 + static_cast<double>(k) * df; }
    // Riemann sum of values * df.
    double integral() const;
};

// Real time vector: value n sits at t0 + n*dt.
struct TimeSeries {
    std::vector<double> values;
    double dt = 1.0;
    double t0 = 0.0;

    std::size_t size() const { return values.size(); }
    double integral() const;
};

}  // namespace wvtinfo
