#include <algorithm>
#include <cmath>

#include "wvtinfo/error.hpp"
#include "wvtinfo/transforms.hpp"

namespace wvtinfo {

namespace {

cplx ipow(cplx z, int b) {
    if (b == 0) return 1.0;
    if (b < 0 && z == cplx{}) return 0.0;
    cplx r = 1.0;
    cplx base = z;
    for (int e = std::abs(b); e > 0; e >>= 1) {
        if (e & 1) r *= base;
        base *= base;
    }
    return b < 0 ? 1.0 / r : r;
}

int upsample_factor(const std::vector<double>& c) {
    for (int L = 1; L <= 64; ++L) {
        bool ok = std::all_of(c.begin(), c.end(), [L](double v) {
            const double s = v * L;
            return std::abs(s - std::round(s)) < 1e-9;
        });
        if (ok) return L;
    }
    throw InvalidArgument("polynomial_wvt: shift factors need an upsampling factor above 64");
}

// Band-limited interpolation by L of the zero-extended record. Entry L*i is
// x[i]; indices past L*(N-1) are treated as outside the record.
std::vector<cplx> upsample(std::span<const cplx> x, int L) {
    if (L == 1) return {x.begin(), x.end()};
    const std::size_t M = 2 * x.size();
    std::vector<cplx> spec(M);
    std::copy(x.begin(), x.end(), spec.begin());
    fft_forward_inplace(spec);
    const std::size_t big = M * static_cast<std::size_t>(L);
    std::vector<cplx> padded(big);
    const std::size_t half = M / 2;
    for (std::size_t k = 0; k < half; ++k) padded[k] = spec[k];
    for (std::size_t k = half + 1; k < M; ++k) padded[big - M + k] = spec[k];
    // Split the Nyquist bin so a real input stays real.
    padded[half] = 0.5 * spec[half];
    padded[big - half] += 0.5 * spec[half];
    fft_backward_inplace(padded);
    const double s = 1.0 / static_cast<double>(M);
    std::vector<cplx> out(x.size() * static_cast<std::size_t>(L));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = padded[i] * s;
    return out;
}

}  // namespace

PolynomialResult polynomial_wvt_detailed(const Waveform& w, const PolynomialSpec& spec) {
    if (spec.q < 2 || spec.q % 2 != 0) throw InvalidArgument("polynomial_wvt: q must be even and >= 2");
    const auto terms = static_cast<std::size_t>(spec.q + 1);
    if (spec.b.size() != terms || spec.c.size() != terms)
        throw InvalidArgument("polynomial_wvt: b and c need q+1 entries");
    if (w.size() < 2) throw InvalidArgument("polynomial_wvt: need at least two samples");

    const int h = spec.q / 2;
    auto bj = [&](int j) { return spec.b[static_cast<std::size_t>(h - j)]; };
    auto cj = [&](int j) { return spec.c[static_cast<std::size_t>(h - j)]; };
    double kappa = 2.0 * bj(0) * cj(0);
    for (int j = 1; j <= h; ++j) kappa += bj(j) * cj(j) + bj(-j) * cj(-j);
    if (!(kappa > 0.0)) throw InvalidArgument("polynomial_wvt: parameters give a non-positive frequency scale");

    const int L = upsample_factor(spec.c);
    const std::vector<cplx> xu = upsample(w.samples(), L);
    const std::size_t N = w.size();
    const long last = static_cast<long>(L) * static_cast<long>(N - 1);
    std::vector<long> shift(terms);
    for (std::size_t i = 0; i < terms; ++i) shift[i] = std::lround(spec.c[i] * L);

    auto sample = [&](long idx) -> cplx { return (idx < 0 || idx > last) ? cplx{} : xu[static_cast<std::size_t>(idx)]; };

    PolynomialResult res;
    res.grid = TFGrid(N, N, w.dt(), w.sample_rate() / (kappa * static_cast<double>(N)), w.origin_time(), 0.0);
    res.grid.provenance = "polynomial_wvt";
    const double s = 2.0 / w.sample_rate();
    const long M = static_cast<long>((N - 1) / 2);
    std::vector<cplx> buf(N);
    double max_re = 0.0, max_im = 0.0;
    for (std::size_t n = 0; n < N; ++n) {
        const long base = static_cast<long>(L) * static_cast<long>(n);
        for (long m = -M; m <= M; ++m) {
            cplx k = 1.0;
            for (int j = 0; j <= h && k != cplx{}; ++j) {
                const auto ip = static_cast<std::size_t>(h - j);
                const auto im = static_cast<std::size_t>(h + j);
                k *= ipow(sample(base + shift[ip] * m), spec.b[ip]);
                k *= ipow(std::conj(sample(base + shift[im] * m)), -spec.b[im]);
            }
            buf[static_cast<std::size_t>((m + static_cast<long>(N)) % static_cast<long>(N))] = k;
        }
        if (N % 2 == 0) buf[N / 2] = 0.0;
        fft_forward_inplace(buf);
        auto row = res.grid.row(n);
        for (std::size_t k = 0; k < N; ++k) {
            row[k] = buf[k].real() * s;
            max_re = std::max(max_re, std::abs(buf[k].real()));
            max_im = std::max(max_im, std::abs(buf[k].imag()));
        }
    }
    res.imag_residue = max_re > 0.0 ? max_im / max_re : 0.0;
    return res;
}

TFGrid polynomial_wvt(const Waveform& w, const PolynomialSpec& spec) {
    return polynomial_wvt_detailed(w, spec).grid;
}

}  // namespace wvtinfo
