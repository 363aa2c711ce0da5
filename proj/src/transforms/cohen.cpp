#include <cmath>
#include <numeric>

#include "wvtinfo/error.hpp"
#include "wvtinfo/transforms.hpp"

namespace wvtinfo {

TFGrid cohen_transform(const TFGrid& grid, const TFGrid& kernel) {
    if (kernel.rows % 2 == 0 || kernel.cols % 2 == 0)
        throw InvalidArgument("cohen_transform: kernel dimensions must be odd");
    const double total = std::accumulate(kernel.values.begin(), kernel.values.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-9) throw InvalidArgument("cohen_transform: kernel must sum to 1");

    TFGrid out = grid;
    out.provenance = grid.provenance.empty() ? "cohen" : "cohen(" + grid.provenance + ")";
    std::fill(out.values.begin(), out.values.end(), 0.0);
    const long cr = static_cast<long>(kernel.rows / 2);
    const long cc = static_cast<long>(kernel.cols / 2);
    const long R = static_cast<long>(grid.rows);
    const long C = static_cast<long>(grid.cols);
    for (long a = 0; a < static_cast<long>(kernel.rows); ++a) {
        const long dr = a - cr;
        for (long b = 0; b < static_cast<long>(kernel.cols); ++b) {
            const double kv = kernel.at(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
            if (kv == 0.0) continue;
            const long dc = b - cc;
            for (long n = std::max(0L, dr); n < std::min(R, R + dr); ++n) {
                const double* src = grid.row(static_cast<std::size_t>(n - dr)).data();
                double* dst = out.row(static_cast<std::size_t>(n)).data();
                for (long k = std::max(0L, dc); k < std::min(C, C + dc); ++k) dst[k] += kv * src[k - dc];
            }
        }
    }
    return out;
}

TFGrid gaussian_kernel(double sigma_rows, double sigma_cols) {
    if (sigma_rows < 0.0 || sigma_cols < 0.0) throw InvalidArgument("gaussian_kernel: negative sigma");
    auto profile = [](double sigma) {
        const auto half = static_cast<std::size_t>(std::ceil(4.0 * sigma));
        std::vector<double> p(2 * half + 1, 0.0);
        if (sigma == 0.0) {
            p[half] = 1.0;
            return p;
        }
        for (std::size_t i = 0; i < p.size(); ++i) {
            const double d = (static_cast<double>(i) - static_cast<double>(half)) / sigma;
            p[i] = std::exp(-0.5 * d * d);
        }
        return p;
    };
    const auto pr = profile(sigma_rows);
    const auto pc = profile(sigma_cols);
    TFGrid k(pr.size(), pc.size(), 1.0, 1.0);
    k.provenance = "gaussian_kernel";
    double sum = 0.0;
    for (std::size_t a = 0; a < pr.size(); ++a)
        for (std::size_t b = 0; b < pc.size(); ++b) sum += k.at(a, b) = pr[a] * pc[b];
    for (auto& v : k.values) v /= sum;
    return k;
}

}  // namespace wvtinfo
