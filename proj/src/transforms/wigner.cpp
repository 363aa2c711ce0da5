#include <algorithm>
#include <cmath>

#include "wigner_rows.hpp"
#include "wvtinfo/error.hpp"

namespace wvtinfo {

namespace detail {

namespace {

// Fills buf (length N, zeroed) with the weighted lag sequence of row n.
void fill_lags(std::span<const cplx> x, std::size_t n, LagMode mode,
               std::span<const double> weights, std::span<cplx> buf, double scale) {
    const std::size_t N = x.size();
    const std::size_t wmax = weights.empty() ? 0 : weights.size() - 1;
    if (mode == LagMode::Zero) {
        const std::size_t lmax = std::min({n, N - 1 - n, wmax});
        buf[0] += scale * weights[0] * std::norm(x[n]);
        for (std::size_t m = 1; m <= lmax; ++m) {
            const cplx r = x[n + m] * std::conj(x[n - m]) * (weights[m] * scale);
            buf[m] += r;
            buf[N - m] += std::conj(r);
        }
        return;
    }
    // Circular lags; for even N the lag N/2 lands on a single bin.
    const std::size_t lmax = std::min((N - 1) / 2, wmax);
    buf[0] += scale * weights[0] * std::norm(x[n]);
    for (std::size_t m = 1; m <= lmax; ++m) {
        const cplx r = x[(n + m) % N] * std::conj(x[(n + N - m) % N]) * (weights[m] * scale);
        buf[m] += r;
        buf[N - m] += std::conj(r);
    }
    if (N % 2 == 0 && N / 2 <= wmax && N >= 2)
        buf[N / 2] += scale * weights[N / 2] * std::norm(x[(n + N / 2) % N]);
}

}  // namespace

void wigner_rows(const Waveform& w, LagMode mode, std::span<const double> weights,
                 const std::function<void(std::size_t, std::span<const double>)>& sink) {
    const std::size_t N = w.size();
    const double s = 2.0 / w.sample_rate();
    std::vector<cplx> buf(N), tmp(N);
    std::vector<double> row_a(N), row_b(N);
    const cplx i_unit(0.0, 1.0);
    for (std::size_t n = 0; n < N; n += 2) {
        std::fill(buf.begin(), buf.end(), cplx{});
        fill_lags(w.samples(), n, mode, weights, buf, 1.0);
        const bool pair = n + 1 < N;
        if (pair) {
            // Second row rides in the imaginary part.
            std::fill(tmp.begin(), tmp.end(), cplx{});
            fill_lags(w.samples(), n + 1, mode, weights, tmp, 1.0);
            for (std::size_t i = 0; i < N; ++i) buf[i] += i_unit * tmp[i];
        }
        fft_forward_inplace(buf);
        for (std::size_t k = 0; k < N; ++k) {
            row_a[k] = buf[k].real() * s;
            row_b[k] = buf[k].imag() * s;
        }
        sink(n, row_a);
        if (pair) sink(n + 1, row_b);
    }
}

}  // namespace detail

namespace {

std::vector<double> unit_weights(std::size_t n) { return std::vector<double>(n, 1.0); }

void require_length(const Waveform& w) {
    if (w.size() < 2) throw InvalidArgument("Wigner transforms need at least two samples");
}

TFGrid grid_from_rows(const Waveform& w, LagMode mode, std::span<const double> weights,
                      const char* provenance) {
    const std::size_t N = w.size();
    TFGrid grid(N, N, w.dt(), w.sample_rate() / (2.0 * static_cast<double>(N)), w.origin_time(), 0.0);
    grid.provenance = provenance;
    detail::wigner_rows(w, mode, weights, [&](std::size_t n, std::span<const double> row) {
        std::copy(row.begin(), row.end(), grid.row(n).begin());
    });
    return grid;
}

}  // namespace

TFGrid wvt(const Waveform& w, LagMode mode) {
    require_length(w);
    auto weights = unit_weights(w.size());
    return grid_from_rows(w, mode, weights, "wvt");
}

double wvt_imag_residue(const Waveform& w) {
    require_length(w);
    const std::size_t N = w.size();
    auto weights = unit_weights(N);
    std::vector<cplx> buf(N);
    double max_re = 0.0, max_im = 0.0;
    for (std::size_t n = 0; n < N; ++n) {
        std::fill(buf.begin(), buf.end(), cplx{});
        detail::fill_lags(w.samples(), n, LagMode::Zero, weights, buf, 1.0);
        fft_forward_inplace(buf);
        for (const auto& v : buf) {
            max_re = std::max(max_re, std::abs(v.real()));
            max_im = std::max(max_im, std::abs(v.imag()));
        }
    }
    return max_re > 0.0 ? max_im / max_re : 0.0;
}

std::vector<double> lag_weights(const WindowSpec& win, std::size_t max_lag) {
    if (!(win.width_sigma >= 1.0)) throw InvalidArgument("window width must be at least 1 sample");
    std::vector<double> h;
    if (win.kind == LagWindowKind::Gaussian) {
        const double cut = 4.0 * win.width_sigma;
        const std::size_t len = std::min(max_lag, static_cast<std::size_t>(std::floor(cut)));
        h.resize(len + 1);
        for (std::size_t m = 0; m <= len; ++m) {
            const double r = static_cast<double>(m) / win.width_sigma;
            h[m] = std::exp(-r * r);
        }
    } else {
        const std::size_t len = std::min(max_lag, static_cast<std::size_t>(std::floor(win.width_sigma)));
        h.assign(len + 1, 1.0);
    }
    return h;
}

TFGrid pseudo_wvt(const Waveform& w, const WindowSpec& win) {
    require_length(w);
    auto weights = lag_weights(win, w.size());
    return grid_from_rows(w, LagMode::Zero, weights, "pseudo_wvt");
}

ColumnSums wvt_column_sums(const Waveform& w, const std::optional<WindowSpec>& win) {
    require_length(w);
    const std::size_t N = w.size();
    std::vector<double> weights = win ? lag_weights(*win, N) : unit_weights(N);
    ColumnSums out;
    out.dt = w.dt();
    out.df = w.sample_rate() / (2.0 * static_cast<double>(N));
    out.w_dt.assign(N, 0.0);
    out.w2_dt.assign(N, 0.0);
    detail::wigner_rows(w, LagMode::Zero, weights, [&](std::size_t, std::span<const double> row) {
        for (std::size_t k = 0; k < N; ++k) {
            out.w_dt[k] += row[k];
            out.w2_dt[k] += row[k] * row[k];
        }
    });
    for (std::size_t k = 0; k < N; ++k) {
        out.w_dt[k] *= out.dt;
        out.w2_dt[k] *= out.dt;
    }
    return out;
}

}  // namespace wvtinfo
