#pragma once

#include <functional>
#include <span>
#include <vector>

#include "wvtinfo/transforms.hpp"

namespace wvtinfo::detail {

// Computes Wigner rows in order n = 0..N-1 and hands each one, already scaled
// by 2/fs, to `sink`. `weights[m]` multiplies lag +-m; lags beyond the vector
// are dropped. Two rows share one complex FFT because each lag sequence is
// Hermitian and so has a real transform.
void wigner_rows(const Waveform& w, LagMode mode, std::span<const double> weights,
                 const std::function<void(std::size_t, std::span<const double>)>& sink);

}  // namespace wvtinfo::detail
