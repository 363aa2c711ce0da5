#include <algorithm>
#include <cmath>
#include <numeric>

#include "wvtinfo/error.hpp"
#include "wvtinfo/signal.hpp"

namespace wvtinfo {

Waveform::Waveform(std::vector<cplx> samples, double sample_rate, double origin_time)
    : samples_(std::move(samples)), sample_rate_(sample_rate), origin_time_(origin_time) {
    if (samples_.empty()) throw InvalidArgument("waveform must have at least one sample");
    if (!(sample_rate_ > 0.0) || !std::isfinite(sample_rate_))
        throw InvalidArgument("sample rate must be positive and finite");
    for (const auto& s : samples_) {
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
            throw InvalidArgument("waveform samples must be finite");
    }
}

bool Waveform::is_real(double tol) const {
    return std::all_of(samples_.begin(), samples_.end(),
                       [tol](const cplx& s) { return std::abs(s.imag()) < tol; });
}

double SpectralDensity::integral() const {
    return std::accumulate(values.begin(), values.end(), 0.0) * df;
}

double TimeSeries::integral() const {
    return std::accumulate(values.begin(), values.end(), 0.0) * dt;
}

namespace {

void require_compatible(const Waveform& a, const Waveform& b, const char* what) {
    if (a.size() != b.size()) throw InvalidArgument(std::string(what) + ": length mismatch");
    if (a.sample_rate() != b.sample_rate())
        throw InvalidArgument(std::string(what) + ": sample rate mismatch");
}

double energy(std::span<const cplx> x) {
    double e = 0.0;
    for (const auto& v : x) e += std::norm(v);
    return e;
}

}  // namespace

double mean_power(const Waveform& w) {
    return energy(w.samples()) / static_cast<double>(w.size());
}

double injection_gain(const Waveform& background, const Waveform& signal, double snr_db) {
    require_compatible(background, signal, "inject");
    const double p_sig = mean_power(signal);
    if (!(p_sig > 0.0)) throw InvalidArgument("inject: signal has zero power");
    if (snr_db == -INFINITY) return 0.0;
    if (std::isnan(snr_db)) throw InvalidArgument("inject: snr is NaN");
    const double p_bg = mean_power(background);
    return std::sqrt(std::pow(10.0, snr_db / 10.0) * p_bg / p_sig);
}

Waveform inject(const Waveform& background, const Waveform& signal, double snr_db) {
    const double g = injection_gain(background, signal, snr_db);
    if (g == 0.0) return background;
    std::vector<cplx> out(background.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = background[i] + g * signal[i];
    return Waveform(std::move(out), background.sample_rate(), background.origin_time());
}

Waveform scaled(const Waveform& w, cplx gain) {
    std::vector<cplx> out(w.samples().begin(), w.samples().end());
    for (auto& v : out) v *= gain;
    return Waveform(std::move(out), w.sample_rate(), w.origin_time());
}

Waveform add(const Waveform& a, const Waveform& b) {
    require_compatible(a, b, "add");
    std::vector<cplx> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
    return Waveform(std::move(out), a.sample_rate(), a.origin_time());
}

Waveform remove_mean(const Waveform& w) {
    cplx mean = std::accumulate(w.samples().begin(), w.samples().end(), cplx{});
    mean /= static_cast<double>(w.size());
    std::vector<cplx> out(w.samples().begin(), w.samples().end());
    for (auto& v : out) v -= mean;
    return Waveform(std::move(out), w.sample_rate(), w.origin_time());
}

Waveform normalize(const Waveform& w) {
    Waveform centered = remove_mean(w);
    const double e = energy(centered.samples());
    // Relative to the input scale, so a constant with rounding residue is still caught.
    const double ref = energy(w.samples());
    if (!(e > 1e-24 * ref)) throw DegenerateInput("normalize: waveform has zero variance");
    return scaled(centered, 1.0 / std::sqrt(e * w.dt()));
}

cplx inner_product(const Waveform& x, const Waveform& y) {
    require_compatible(x, y, "inner_product");
    cplx acc{};
    for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
    return acc * x.dt();
}

Waveform analytic_signal(const Waveform& w) {
    if (!w.is_real()) throw InvalidArgument("analytic_signal: input must be real");
    const std::size_t n = w.size();
    std::vector<cplx> spec(n);
    for (std::size_t i = 0; i < n; ++i) spec[i] = w[i].real();
    fft_forward_inplace(spec);
    const std::size_t half = n / 2;
    for (std::size_t k = 1; k < n; ++k) {
        if (n % 2 == 0 && k == half) continue;
        if (k <= (n - 1) / 2)
            spec[k] *= 2.0;
        else
            spec[k] = 0.0;
    }
    std::vector<cplx> out = idft(spec);
    return Waveform(std::move(out), w.sample_rate(), w.origin_time());
}

SpectralDensity psd(const Waveform& w) {
    std::vector<cplx> spec = dft(w.samples());
    const double dt2 = w.dt() * w.dt();
    SpectralDensity out;
    out.values.resize(spec.size());
    for (std::size_t k = 0; k < spec.size(); ++k) out.values[k] = std::norm(spec[k]) * dt2;
    out.df = w.sample_rate() / static_cast<double>(w.size());
    return out;
}

SpectralDensity lattice_psd(const Waveform& w) {
    const std::size_t n = w.size();
    std::vector<cplx> buf(2 * n);
    std::copy(w.samples().begin(), w.samples().end(), buf.begin());
    fft_forward_inplace(buf);
    const double dt2 = w.dt() * w.dt();
    SpectralDensity out;
    out.values.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        out.values[k] = (std::norm(buf[k]) + std::norm(buf[k + n])) * dt2;
    out.df = w.sample_rate() / static_cast<double>(2 * n);
    return out;
}

TFGrid spectrogram(const Waveform& w, std::size_t nfft, std::size_t hop, WindowKind window) {
    if (nfft == 0 || nfft > w.size())
        throw InvalidArgument("spectrogram: nfft must be in [1, length]");
    if (hop == 0) hop = nfft;
    std::vector<double> win(nfft, 1.0);
    if (window == WindowKind::Hann && nfft > 1) {
        for (std::size_t i = 0; i < nfft; ++i)
            win[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * static_cast<double>(i) /
                                          static_cast<double>(nfft - 1));
    }
    const std::size_t frames = (w.size() - nfft) / hop + 1;
    const double fs = w.sample_rate();
    TFGrid grid(frames, nfft, static_cast<double>(hop) / fs, fs / static_cast<double>(nfft),
                w.origin_time(), 0.0);
    grid.provenance = "spectrogram";
    const double dt2 = w.dt() * w.dt();
    std::vector<cplx> buf(nfft);
    for (std::size_t r = 0; r < frames; ++r) {
        for (std::size_t i = 0; i < nfft; ++i) buf[i] = w[r * hop + i] * win[i];
        fft_forward_inplace(buf);
        for (std::size_t k = 0; k < nfft; ++k) grid.at(r, k) = std::norm(buf[k]) * dt2;
    }
    return grid;
}

}  // namespace wvtinfo
