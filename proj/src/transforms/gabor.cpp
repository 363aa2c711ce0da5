#include <algorithm>
#include <cmath>

#include "wvtinfo/error.hpp"
#include "wvtinfo/transforms.hpp"

namespace wvtinfo {

ComplexTFGrid gabor(const Waveform& w, double sigma) {
    if (!(sigma >= 1.0)) throw InvalidArgument("gabor: sigma must be at least 1 sample");
    const std::size_t N = w.size();
    const long D = std::min(static_cast<long>(std::floor(4.0 * sigma)), static_cast<long>(N) - 1);
    std::vector<double> g(static_cast<std::size_t>(D) + 1);
    for (long d = 0; d <= D; ++d) {
        const double r = static_cast<double>(d) / sigma;
        g[static_cast<std::size_t>(d)] = std::exp(-0.5 * r * r);
    }
    ComplexTFGrid out(N, N, w.dt(), w.sample_rate() / (2.0 * static_cast<double>(N)), w.origin_time(), 0.0);
    out.provenance = "gabor";
    const std::size_t M = 2 * N;
    const long n_long = static_cast<long>(N);
    std::vector<cplx> buf(M);
    for (long n = 0; n < n_long; ++n) {
        std::fill(buf.begin(), buf.end(), cplx{});
        for (long d = std::max(-D, -n); d <= std::min(D, n_long - 1 - n); ++d) {
            const auto slot = static_cast<std::size_t>((d + static_cast<long>(M)) % static_cast<long>(M));
            buf[slot] = w[static_cast<std::size_t>(n + d)] * g[static_cast<std::size_t>(std::abs(d))];
        }
        fft_forward_inplace(buf);
        auto row = out.row(static_cast<std::size_t>(n));
        for (std::size_t k = 0; k < N; ++k) row[k] = buf[k] * w.dt();
    }
    return out;
}

TFGrid power(const ComplexTFGrid& g) {
    TFGrid out(g.rows, g.cols, g.dt, g.df, g.t0, g.f0);
    out.provenance = "|" + g.provenance + "|^2";
    for (std::size_t i = 0; i < g.values.size(); ++i) out.values[i] = std::norm(g.values[i]);
    return out;
}

namespace {

double real_power(double base, double e) {
    if (e == std::round(e)) {
        const long n = std::lround(e);
        if (n == 0) return 1.0;
        if (n < 0 && base == 0.0) return 0.0;
        double r = 1.0, b = base;
        for (long k = std::abs(n); k > 0; k >>= 1) {
            if (k & 1) r *= b;
            b *= b;
        }
        return n < 0 ? 1.0 / r : r;
    }
    if (base == 0.0) return 0.0;
    return std::copysign(std::pow(std::abs(base), e), base);
}

}  // namespace

TFGrid gabor_wigner(const TFGrid& gabor_power, const TFGrid& wigner, double alpha, double beta) {
    if (!gabor_power.same_axes(wigner))
        throw InvalidArgument("gabor_wigner: Gabor and Wigner grids are on different axes");
    TFGrid out = wigner;
    out.provenance = "gabor_wigner";
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = real_power(gabor_power.values[i], alpha) * real_power(wigner.values[i], beta);
    return out;
}

TFGrid gabor_wigner(const Waveform& w, double alpha, double beta, double sigma) {
    return gabor_wigner(power(gabor(w, sigma)), wvt(w), alpha, beta);
}

}  // namespace wvtinfo
