#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "wvtinfo/error.hpp"
#include "wvtinfo/fft.hpp"

namespace wvtinfo {

// Time x frequency matrix, row-major. Row n is at t0 + n*dt, column k at
// f0 + k*df.
template <typename T>
struct BasicTFGrid {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<T> values;
    double dt = 1.0;
    double df = 1.0;
    double t0 = 0.0;
    double f0 = 0.0;
    std::string provenance;

    BasicTFGrid() = default;
    BasicTFGrid(std::size_t r, std::size_t c, double dt_, double df_, double t0_ = 0.0,
                double f0_ = 0.0)
        : rows(r), cols(c), values(r * c), dt(dt_), df(df_), t0(t0_), f0(f0_) {}

    T& at(std::size_t n, std::size_t k) { return values[n * cols + k]; }
    const T& at(std::size_t n, std::size_t k) const { return values[n * cols + k]; }
    std::span<T> row(std::size_t n) { return {values.data() + n * cols, cols}; }
    std::span<const T> row(std::size_t n) const { return {values.data() + n * cols, cols}; }

    double time(std::size_t n) const { return t0 + static_cast<double>(n) * dt; }
    double freq(std::size_t k) const { return f0 + static_cast<double>(k) * df; }
    // Column whose center frequency is closest to f.
    std::size_t nearest_col(double f) const;

    template <typename U>
    bool same_axes(const BasicTFGrid<U>& o, double rel = 1e-12) const;
};

using TFGrid = BasicTFGrid<double>;
using ComplexTFGrid = BasicTFGrid<cplx>;

template <typename T>
std::size_t BasicTFGrid<T>::nearest_col(double f) const {
    double pos = (f - f0) / df;
    if (pos <= 0.0 || cols == 0) return 0;
    auto k = static_cast<std::size_t>(pos + 0.5);
    return k >= cols ? cols - 1 : k;
}

template <typename T>
template <typename U>
bool BasicTFGrid<T>::same_axes(const BasicTFGrid<U>& o, double rel) const {
    auto close = [rel](double a, double b) {
        double s = std::max(std::abs(a), std::abs(b));
        return std::abs(a - b) <= rel * (s > 0 ? s : 1.0);
    };
    return rows == o.rows && cols == o.cols && close(dt, o.dt) && close(df, o.df) &&
           close(t0, o.t0) && close(f0, o.f0);
}

}  // namespace wvtinfo
