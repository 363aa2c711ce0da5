#pragma once

#include <complex>
#include <span>
#include <vector>

namespace wvtinfo {

using cplx = std::complex<double>;

// N-point transform pair, any N >= 1:
//   dft:  X[n] = sum_k x[k] exp(-i 2 pi k n / N)
//   idft: x[k] = (1/N) sum_n X[n] exp(+i 2 pi n k / N)
// The 1/N lives on the inverse so that idft(dft(x)) == x.
std::vector<cplx> dft(std::span<const cplx> x);
std::vector<cplx> idft(std::span<const cplx> spectrum);

// In-place variants for hot loops. No normalization on either direction.
void fft_forward_inplace(std::span<cplx> data);
void fft_backward_inplace(std::span<cplx> data);

}  // namespace wvtinfo
