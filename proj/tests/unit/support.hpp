#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "wvtinfo/fft.hpp"
#include "wvtinfo/rng.hpp"
#include "wvtinfo/signal.hpp"

namespace testing {

using wvtinfo::cplx;
using wvtinfo::Waveform;

inline Waveform random_complex(std::size_t n, std::uint64_t seed, double fs = 1e3) {
    wvtinfo::Rng rng(wvtinfo::Seed{seed});
    std::vector<cplx> x(n);
    for (auto& v : x) v = {rng.normal(), rng.normal()};
    return Waveform(std::move(x), fs);
}

// Zero mean, no negative-frequency content, sum |x|^2 dt = 1.
inline Waveform random_analytic(std::size_t n, std::uint64_t seed, double fs = 1e3) {
    wvtinfo::Rng rng(wvtinfo::Seed{seed});
    std::vector<cplx> X(n);
    for (std::size_t k = 1; k < (n + 1) / 2; ++k) X[k] = {rng.normal(), rng.normal()};
    return wvtinfo::normalize(Waveform(wvtinfo::idft(X), fs));
}

inline Waveform tone(std::size_t n, double fs, double f, double amp = 1.0) {
    std::vector<cplx> x(n);
    for (std::size_t k = 0; k < n; ++k)
        x[k] = std::polar(amp, 2.0 * std::numbers::pi * f * static_cast<double>(k) / fs);
    return Waveform(std::move(x), fs);
}

inline double rel_l2(const std::vector<double>& a, const std::vector<double>& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - b[i]) * (a[i] - b[i]);
        den += b[i] * b[i];
    }
    return std::sqrt(num / den);
}

inline double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace testing
