#include <algorithm>
#include <cmath>

#include "wvtinfo/error.hpp"
#include "wvtinfo/transforms.hpp"

namespace wvtinfo {

namespace {

// Index of the largest diagonal entry among indices of the given parity, or
// N when that parity carries nothing above tol.
std::size_t best_reference(const AutoCorrelation& ac, std::size_t parity, double tol) {
    std::size_t best = ac.n;
    double best_val = tol;
    for (std::size_t t = parity; t < ac.n; t += 2) {
        const double d = ac.at(t, t).real();
        if (d > best_val) {
            best_val = d;
            best = t;
        }
    }
    return best;
}

}  // namespace

AutoCorrelation weyl_inverse(const TFGrid& grid) {
    if (grid.rows != grid.cols || grid.rows < 2)
        throw InvalidArgument("weyl_inverse: expects a square Wigner grid");
    const std::size_t N = grid.rows;
    const double half_fs = 0.5 / grid.dt;
    AutoCorrelation ac;
    ac.n = N;
    ac.dt = grid.dt;
    ac.values.assign(N * N, cplx{});

    // Same-parity entries straight from the per-row inverse transform.
    std::vector<cplx> buf(N);
    for (std::size_t n = 0; n < N; ++n) {
        auto row = grid.row(n);
        std::copy(row.begin(), row.end(), buf.begin());
        fft_backward_inplace(buf);
        const double s = half_fs / static_cast<double>(N);
        const std::size_t lmax = std::min(n, N - 1 - n);
        for (std::size_t m = 0; m <= lmax; ++m) {
            const cplx r = buf[m] * s;  // x[n+m] conj(x[n-m])
            ac.at(n - m, n + m) = r;
            ac.at(n + m, n - m) = std::conj(r);
        }
        ac.at(n, n) = cplx(ac.at(n, n).real(), 0.0);
    }

    double max_diag = 0.0;
    for (std::size_t t = 0; t < N; ++t) max_diag = std::max(max_diag, ac.at(t, t).real());
    if (!(max_diag > 0.0)) throw DegenerateInput("weyl_inverse: transform of a zero waveform");
    const double tol = 1e-12 * max_diag;

    // Each parity class is known up to its own phase.
    std::vector<cplx> even(N), odd(N);
    const std::size_t re = best_reference(ac, 0, tol);
    const std::size_t ro = best_reference(ac, 1, tol);
    if (re < N) {
        const double a = std::sqrt(ac.at(re, re).real());
        for (std::size_t t = 0; t < N; t += 2) even[t] = ac.at(re, t) / a;
    }
    if (ro < N) {
        const double a = std::sqrt(ac.at(ro, ro).real());
        for (std::size_t t = 1; t < N; t += 2) odd[t] = ac.at(ro, t) / a;
    }

    cplx z = 1.0;
    if (re < N && ro < N) {
        // Least-squares phase that empties the negative-frequency bins.
        const auto E = dft(even);
        const auto O = dft(odd);
        cplx S{};
        double scale = 0.0;
        for (std::size_t k = N / 2 + 1; k < N; ++k) {
            S += std::conj(E[k]) * O[k];
            scale += std::abs(E[k]) * std::abs(O[k]);
        }
        if (!(std::abs(S) > 1e-9 * scale) || S == cplx{})
            throw DegenerateInput("weyl_inverse: cannot fix the even/odd phase; input must be analytic");
        z = -std::conj(S) / std::abs(S);
    }

    std::vector<cplx> x(N);
    for (std::size_t t = 0; t < N; ++t) x[t] = (t % 2 == 0) ? even[t] : z * odd[t];
    for (std::size_t t = 0; t < N; ++t)
        for (std::size_t tp = 0; tp < N; ++tp)
            if ((t + tp) % 2 == 1) ac.at(t, tp) = std::conj(x[t]) * x[tp];
    return ac;
}

Waveform recover_waveform(const AutoCorrelation& ac, std::size_t ref_index) {
    if (ref_index >= ac.n) throw InvalidArgument("recover_waveform: reference index out of range");
    double max_diag = 0.0;
    for (std::size_t t = 0; t < ac.n; ++t) max_diag = std::max(max_diag, ac.at(t, t).real());
    const double d = ac.at(ref_index, ref_index).real();
    if (!(d > 1e-12 * max_diag) || d <= 0.0)
        throw DegenerateInput("recover_waveform: reference row has a near-zero diagonal");
    const double a = std::sqrt(d);
    std::vector<cplx> out(ac.n);
    for (std::size_t t = 0; t < ac.n; ++t) out[t] = ac.at(ref_index, t) / a;
    return Waveform(std::move(out), 1.0 / ac.dt);
}

}  // namespace wvtinfo
