#include <cmath>

#include "wvtinfo/error.hpp"
#include "wvtinfo/infotheory.hpp"

namespace wvtinfo {

namespace {

std::vector<double> probabilities(const ProbVector& p) {
    if (!(p.bin_measure > 0.0)) throw InvalidArgument("entropy: bin measure must be positive");
    double total = 0.0;
    for (double w : p.weights) {
        if (w < 0.0 || !std::isfinite(w)) throw InvalidArgument("entropy: weights must be finite and nonnegative");
        total += w;
    }
    if (!(total > 0.0)) throw InvalidArgument("entropy: all weights are zero");
    std::vector<double> q(p.weights.size());
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = p.weights[i] / total;
    return q;
}

}  // namespace

double tsallis_entropy(const ProbVector& p, double alpha) {
    if (!(alpha > 0.0)) throw InvalidArgument("tsallis_entropy: alpha must be positive");
    if (alpha == 1.0) return shannon_entropy(p);
    double s = 0.0;
    for (double q : probabilities(p))
        if (q > 0.0) s += std::pow(q, alpha);
    return (1.0 - s) / (alpha - 1.0);
}

double shannon_entropy(const ProbVector& p) {
    double h = 0.0;
    for (double q : probabilities(p))
        if (q > 0.0) h -= q * std::log(q);
    return h;
}

double shannon_functional(const ProbVector& p) {
    double h = 0.0;
    for (double w : p.weights) {
        if (w < 0.0 || !std::isfinite(w)) throw InvalidArgument("entropy: weights must be finite and nonnegative");
        const double q = w * p.bin_measure;
        if (q > 0.0) h -= q * std::log(q);
    }
    return h;
}

}  // namespace wvtinfo
