#include <cmath>

#include "wvtinfo/error.hpp"
#include "wvtinfo/signal.hpp"

namespace wvtinfo {

Waveform generate_awgn(std::size_t n, double sample_rate, Seed seed) {
    if (n == 0) throw InvalidArgument("generate_awgn: n must be at least 1");
    Rng rng(seed);
    const double s = std::sqrt(0.5);
    std::vector<cplx> out(n);
    for (auto& v : out) {
        const double re = rng.normal();
        const double im = rng.normal();
        v = cplx(re * s, im * s);
    }
    return Waveform(std::move(out), sample_rate);
}

}  // namespace wvtinfo
