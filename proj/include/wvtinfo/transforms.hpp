#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "wvtinfo/tfgrid.hpp"
#include "wvtinfo/waveform.hpp"

namespace wvtinfo {

// Discrete Wigner-Ville transform on an N x N lattice:
//
//   W[n,k] = (2/fs) sum_m x[n+m] conj(x[n-m]) exp(-i 2 pi m k / N)
//
// rows at t = n/fs, columns at f = k*fs/(2N) for k = 0..N-1, so the grid
// spans [0, fs/2). Frequencies in [fs/2, fs) alias onto the same columns, which
// is why Wigner-family transforms expect analytic input.
enum class LagMode { Zero, Circular };

TFGrid wvt(const Waveform& w, LagMode mode = LagMode::Zero);

// Largest |Im| of the lag-domain transform relative to the largest |Re|,
// evaluated row by row before the imaginary part is discarded.
double wvt_imag_residue(const Waveform& w);

enum class LagWindowKind { Gaussian, Rectangular };

struct WindowSpec {
    LagWindowKind kind = LagWindowKind::Gaussian;
    double width_sigma = 100.0;
};

// Lag weight h(m) = w(m) conj(w(-m)). Gaussian window exp(-m^2/(2 sigma^2))
// gives exp(-m^2/sigma^2), cut at |m| > 4 sigma; Rectangular keeps |m| <= width.
std::vector<double> lag_weights(const WindowSpec& win, std::size_t max_lag);

TFGrid pseudo_wvt(const Waveform& w, const WindowSpec& win);

// Time integrals of W and W^2 per column, without storing the full grid.
struct ColumnSums {
    std::vector<double> w_dt;   // sum_n W[n,k] dt
    std::vector<double> w2_dt;  // sum_n W[n,k]^2 dt
    double dt = 1.0;
    double df = 1.0;
};

// `win` empty means the full transform.
ColumnSums wvt_column_sums(const Waveform& w, const std::optional<WindowSpec>& win = std::nullopt);

// Polynomial Wigner transform of even order q. Vectors b and c have q+1
// entries listed from j = +q/2 down to j = -q/2. The lag kernel is
//
//   prod_{j=0}^{q/2} x[n + c_j m]^{b_j} conj(x[n + c_{-j} m])^{-b_{-j}}
//
// (j = 0 contributes both factors). The frequency axis is scaled by
// kappa = sum_{j>=1} (b_j c_j + b_{-j} c_{-j}) + 2 b_0 c_0 so that a tone at f
// ridges at f: df = fs/(kappa N). Lags are limited to |m| <= (N-1)/2.
// Non-integer shifts c_j m use band-limited upsampling by the smallest L <= 64
// making every c_j L integral.
struct PolynomialSpec {
    int q = 2;
    std::vector<int> b{1, 0, -1};
    std::vector<double> c{1.0, 0.0, -1.0};
};

struct PolynomialResult {
    TFGrid grid;
    double imag_residue = 0.0;  // max |Im| / max |Re| before discarding
};

PolynomialResult polynomial_wvt_detailed(const Waveform& w, const PolynomialSpec& spec);
TFGrid polynomial_wvt(const Waveform& w, const PolynomialSpec& spec);

// 2-D "same" convolution with zero padding. Kernel dimensions must be odd and
// its entries must sum to 1 within 1e-9; the centre entry is the origin.
TFGrid cohen_transform(const TFGrid& grid, const TFGrid& kernel);

// Separable Gaussian kernel with the given standard deviations in rows and
// columns, cut at 4 sigma and normalised to unit sum.
TFGrid gaussian_kernel(double sigma_rows, double sigma_cols);

// Gaussian-windowed transform on the Wigner lattice:
//   G[n,k] = dt sum_{|d| <= 4 sigma} x[n+d] exp(-d^2/(2 sigma^2)) exp(-i 2 pi k d/(2N))
// Samples outside the record are zero.
ComplexTFGrid gabor(const Waveform& w, double sigma);

// Elementwise |G|^2 on a complex grid.
TFGrid power(const ComplexTFGrid& g);

// D = (|G|^2)^alpha * W^beta. Integer beta is exact; otherwise
// sign(W) |W|^beta.
TFGrid gabor_wigner(const TFGrid& gabor_power, const TFGrid& wigner, double alpha, double beta);
TFGrid gabor_wigner(const Waveform& w, double alpha, double beta, double sigma = 60.0);

// Two-point auto-correlation ac[t][t'] = conj(x[t]) x[t'], N x N row-major.
struct AutoCorrelation {
    std::size_t n = 0;
    std::vector<cplx> values;
    double dt = 1.0;

    const cplx& at(std::size_t t, std::size_t tp) const { return values[t * n + tp]; }
    cplx& at(std::size_t t, std::size_t tp) { return values[t * n + tp]; }
};

// Inverse of wvt(). The transform only carries products of samples whose
// indices share parity; those entries come straight from the per-row inverse
// DFT, and the relative phase between the even and odd sub-sequences is fixed
// by requiring the waveform to have no negative-frequency content. Input must
// be the transform of an analytic waveform.
AutoCorrelation weyl_inverse(const TFGrid& grid);

// Row ref_index of the auto-correlation divided by sqrt(ac[ref][ref]); equals
// the waveform up to one global phase.
Waveform recover_waveform(const AutoCorrelation& ac, std::size_t ref_index);

// rho(t) = sum_k W df
TimeSeries time_marginal(const TFGrid& grid);
// rho~(nu) = sum_n W dt
SpectralDensity freq_marginal(const TFGrid& grid);

// Product of the time variance of |x|^2 and the frequency variance of the
// power spectrum. Both densities are treated as circular and centred on their
// circular mean before taking second moments.
double variance_product(const Waveform& w);

}  // namespace wvtinfo
