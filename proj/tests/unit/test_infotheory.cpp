#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "doctest.h"
#include "support.hpp"
#include "wvtinfo/detection.hpp"
#include "wvtinfo/error.hpp"
#include "wvtinfo/infotheory.hpp"
#include "wvtinfo/transforms.hpp"

using namespace wvtinfo;
using testing::random_analytic;
using testing::random_complex;
using testing::tone;

namespace {

double total(const TFGrid& g) {
    double s = 0.0;
    for (double v : g.values) s += v;
    return s * g.dt * g.df;
}

double sum_sq(const TFGrid& g) {
    double s = 0.0;
    for (double v : g.values) s += v * v;
    return s * g.dt * g.df;
}

double dot(const TFGrid& a, const TFGrid& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) s += a.values[i] * b.values[i];
    return s * a.dt * a.df;
}

ProbVector random_prob(std::size_t n, std::uint64_t seed) {
    Rng rng(Seed{seed});
    ProbVector p;
    for (std::size_t i = 0; i < n; ++i) p.weights.push_back(rng.uniform() + 1e-3);
    return p;
}

bool local_max_near(const std::vector<double>& v, std::size_t centre, std::size_t radius) {
    const std::size_t lo = centre > 3 * radius ? centre - 3 * radius : 0;
    const std::size_t hi = std::min(v.size() - 1, centre + 3 * radius);
    const auto it = std::max_element(v.begin() + static_cast<long>(lo), v.begin() + static_cast<long>(hi) + 1);
    const auto at = static_cast<std::size_t>(it - v.begin());
    return (at > centre ? at - centre : centre - at) <= radius;
}

}  // namespace

TEST_CASE("tsallis entropy closed forms") {
    for (double a : {0.5, 2.0, 3.0}) {
        CHECK(std::abs(tsallis_entropy({{1.0}, 1.0}, a)) < 1e-15);
        CHECK(std::abs(tsallis_entropy({{0.0, 0.0, 5.0, 0.0}, 1.0}, a)) < 1e-15);
    }
    for (std::size_t n : {2u, 7u, 64u}) {
        ProbVector u{std::vector<double>(n, 1.0), 1.0};
        CHECK(tsallis_entropy(u, 2.0) == doctest::Approx(1.0 - 1.0 / n).epsilon(1e-14));
    }
    ProbVector p{{0.1, 0.2, 0.3, 0.4}, 1.0};
    CHECK(tsallis_entropy(p, 2.0) == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(tsallis_entropy(p, 0.5) == doctest::Approx(1.8872389021112754).epsilon(1e-14));
    CHECK(shannon_entropy(p) == doctest::Approx(1.2798542258336676).epsilon(1e-14));
    CHECK(tsallis_entropy(p, 1.0) == shannon_entropy(p));
    // Bin measure only rescales weights before renormalisation.
    CHECK(tsallis_entropy({{0.1, 0.2, 0.3, 0.4}, 0.01}, 2.0) == doctest::Approx(0.7).epsilon(1e-14));
    CHECK_THROWS_AS(tsallis_entropy({{0.5, -0.1, 0.6}, 1.0}, 2.0), InvalidArgument);
    CHECK_THROWS_AS(tsallis_entropy(p, 0.0), InvalidArgument);
}

TEST_CASE("tsallis approaches shannon as alpha tends to 1") {
    auto p = random_prob(64, 4);
    const double h = shannon_entropy(p);
    CHECK(std::abs(tsallis_entropy(p, 1.0001) - h) < 1e-3);
    CHECK(std::abs(tsallis_entropy(p, 0.9999) - h) < 1e-3);
    // The gap closes linearly in alpha - 1.
    const double g1 = std::abs(tsallis_entropy(p, 1.01) - h);
    const double g2 = std::abs(tsallis_entropy(p, 1.001) - h);
    CHECK(g1 / g2 == doctest::Approx(10.0).epsilon(0.02));
}

TEST_CASE("shannon entropy") {
    for (std::size_t n : {1u, 3u, 100u})
        CHECK(shannon_entropy({std::vector<double>(n, 2.5), 0.3}) == doctest::Approx(std::log(double(n))).epsilon(1e-14));
    CHECK(shannon_entropy({{0.0, 1.0, 0.0}, 1.0}) == 0.0);
    CHECK_THROWS_AS(shannon_entropy({{0.0, 0.0}, 1.0}), InvalidArgument);
    CHECK_THROWS_AS(shannon_entropy({{1.0, NAN}, 1.0}), InvalidArgument);
}

TEST_CASE("entropies are symmetric and expansible") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        auto p = random_prob(10 + s, s);
        auto perm = p;
        Rng rng(Seed{s + 100});
        for (std::size_t i = perm.weights.size() - 1; i > 0; --i)
            std::swap(perm.weights[i], perm.weights[rng.below(i + 1)]);
        auto padded = p;
        padded.weights.insert(padded.weights.begin() + 3, 0.0);
        padded.weights.push_back(0.0);
        padded.weights.push_back(0.0);
        for (double a : {0.5, 1.0, 2.0, 3.5}) {
            CHECK(std::abs(tsallis_entropy(perm, a) - tsallis_entropy(p, a)) < 1e-12);
            CHECK(std::abs(tsallis_entropy(padded, a) - tsallis_entropy(p, a)) < 1e-12);
        }
        CHECK(std::abs(shannon_entropy(perm) - shannon_entropy(p)) < 1e-12);
        CHECK(std::abs(shannon_entropy(padded) - shannon_entropy(p)) < 1e-12);
    }
}

TEST_CASE("shannon functional keeps the scale") {
    ProbVector p{{1.0, 1.0}, 0.25};
    CHECK(shannon_functional(p) == doctest::Approx(-2.0 * 0.25 * std::log(0.25)));
    ProbVector q{{3.0, 3.0}, 0.25};
    CHECK(shannon_functional(q) != doctest::Approx(shannon_functional(p)));
    CHECK(shannon_entropy(q) == doctest::Approx(shannon_entropy(p)));
}

TEST_CASE("info densities") {
    auto w = random_analytic(256, 5);
    auto W = wvt(w);
    auto d = info_densities(W);
    CHECK(d.i2.same_axes(W));
    CHECK(d.s2.same_axes(W));
    int inside = 0, negative = 0;
    for (std::size_t i = 0; i < W.values.size(); ++i) {
        const double v = W.values[i];
        CHECK(d.i2.values[i] >= 0.0);
        if (v > 0.0 && v < 1.0) {
            CHECK(d.s2.values[i] > 0.0);
            ++inside;
        }
        if (v < 0.0) {
            CHECK(d.s2.values[i] < 0.0);
            ++negative;
        }
    }
    CHECK(inside > 0);
    CHECK(negative > 0);
    CHECK(std::abs(sum_sq(W) - 1.0) < 1e-6);
    CHECK(std::abs(global_information(W) - 1.0) < 1e-6);
    CHECK(std::abs(global_entropy(W)) < 1e-6);
}

TEST_CASE("projected densities") {
    auto w = random_analytic(300, 6);
    auto W = wvt(w);
    auto p = projected_densities(W);
    CHECK(std::abs(p.i2_nu.integral() - 1.0) < 1e-6);
    CHECK(std::abs(p.i2_t.integral() - 1.0) < 1e-6);
    double s = 0.0;
    for (std::size_t k = 0; k < p.s2_nu.size(); ++k) s += (p.s2_nu.values[k] + p.i2_nu.values[k]) * p.s2_nu.df;
    CHECK(std::abs(s - freq_marginal(W).integral()) < 1e-9);
    CHECK(std::abs(s - 1.0) < 1e-6);
    CHECK(p.s2_t.size() == 300);
    CHECK(p.s2_nu.df == doctest::Approx(W.df));

    auto spec = wvt2_freq_spectrum(W);
    for (std::size_t k = 0; k < spec.size(); ++k) CHECK(std::abs(spec.values[k] - p.i2_nu.values[k]) < 1e-12);
}

TEST_CASE("two-qpsk projected information peaks at the carriers and their midpoint") {
    ModulationSpec spec;
    spec.kind = ModKind::QPSK;
    spec.symbol_rate = 25.0;
    const double fs = 2500.0;
    const std::size_t n = 1000;
    auto msg = random_message(ModKind::QPSK, 200, Seed{9});
    spec.carrier_hz = 256.0;
    auto a = modulate(spec, msg, n, fs, Seed{1});
    spec.carrier_hz = 512.0;
    auto b = modulate(spec, msg, n, fs, Seed{1});
    auto W = wvt(normalize(add(a, b)));
    auto i2 = projected_densities(W).i2_nu;
    const auto radius = static_cast<std::size_t>(std::ceil(12.5 / i2.df));
    for (double f : {256.0, 384.0, 512.0}) CHECK(local_max_near(i2.values, W.nearest_col(f), radius));
}

TEST_CASE("wvt2 spectrum scales quartically") {
    auto w = random_complex(128, 2);
    auto base = wvt2_freq_spectrum(wvt(w));
    auto big = wvt2_freq_spectrum(wvt(scaled(w, 3.0)));
    for (std::size_t k = 0; k < base.size(); ++k)
        CHECK(big.values[k] == doctest::Approx(81.0 * base.values[k]).epsilon(1e-10));
}

TEST_CASE("wvt2 spectrum of a real tone in real noise has prominences at f = 0 and the band top") {
    const std::size_t n = 2048;
    const double fs = 1e4;
    const double f = 1000.0;
    Rng rng(Seed{12});
    std::vector<cplx> x(n);
    for (std::size_t k = 0; k < n; ++k)
        x[k] = std::sqrt(2.0) * std::cos(2.0 * std::numbers::pi * f * k / fs) + rng.normal();
    Waveform real(x, fs);
    auto median = [n](std::vector<double> v) {
        std::nth_element(v.begin(), v.begin() + n / 2, v.end());
        return v[n / 2];
    };
    auto spec = wvt2_freq_spectrum(wvt(real));
    const double med = median(spec.values);
    const std::size_t tone_col = static_cast<std::size_t>(f / spec.df);
    const double tone_peak = std::max(spec.values[tone_col], spec.values[tone_col + 1]);
    CHECK(tone_peak > 50.0 * med);
    CHECK(spec.values[0] > 50.0 * med);
    CHECK(spec.values[n - 1] > 10.0 * med);
    CHECK(spec.values[0] > spec.values[8]);

    // The analytic version of the same record has neither.
    auto a = wvt2_freq_spectrum(wvt(analytic_signal(real)));
    const double amed = median(a.values);
    CHECK(std::max(a.values[tone_col], a.values[tone_col + 1]) > 50.0 * amed);
    CHECK(a.values[0] < 5.0 * amed);
    CHECK(a.values[n - 1] < 5.0 * amed);
}

TEST_CASE("entropy volume bands") {
    SpectralDensity s{{1.0, 2.0, 3.0, 4.0, 5.0}, 10.0, 0.0};
    CHECK(entropy_volume(s, {10.0, 30.0}) == doctest::Approx((2.0 + 3.0 + 4.0) * 10.0));
    CHECK(entropy_volume(s, {9.0, 29.0}) == doctest::Approx((2.0 + 3.0) * 10.0));
    CHECK(delta_volume(s, {10.0, 20.0}, {10.0, 20.0}) == 0.0);
    CHECK(delta_volume(s, {0.0, 10.0}, {30.0, 40.0}) == doctest::Approx(60.0));
    CHECK_THROWS_AS(entropy_volume(s, {20.0, 10.0}), InvalidArgument);
    CHECK_THROWS_AS(entropy_volume(s, {-20.0, 10.0}), InvalidArgument);
    CHECK_THROWS_AS(entropy_volume(s, {0.0, 60.0}), InvalidArgument);
    CHECK_THROWS_AS(delta_volume(s, {0.0, 10.0}, {20.0, 40.0}), InvalidArgument);
}

TEST_CASE("entropy volume difference on pure noise stays within its calibrated floor") {
    const std::size_t n = 1024;
    const double fs = 1e4;
    const Band sig{950.0, 1050.0}, back{3700.0, 3800.0};
    auto delta = [&](std::uint64_t seed) {
        auto w = normalize(generate_awgn(n, fs, Seed{seed}));
        return std::abs(delta_volume(projected_densities(wvt(w)).s2_nu, sig, back));
    };
    std::vector<double> calib;
    for (std::uint64_t s = 0; s < 40; ++s) calib.push_back(delta(1000 + s));
    const double floor95 = quantile(calib, 0.95);
    int above = 0;
    for (std::uint64_t s = 0; s < 40; ++s) above += delta(5000 + s) > floor95;
    CHECK(above <= 6);
    // Same bands never differ.
    auto w = normalize(generate_awgn(n, fs, Seed{1}));
    CHECK(delta_volume(projected_densities(wvt(w)).s2_nu, sig, sig) == 0.0);
}

TEST_CASE("additivity for disjoint components") {
    const std::size_t n = 512;
    const double fs = 512.0;
    auto a = normalize(tone(n, fs, 40.0));
    auto b = normalize(tone(n, fs, 160.0));
    auto Wa = wvt(a), Wb = wvt(b);
    auto Wm = wvt(scaled(add(a, b), 1.0 / std::sqrt(2.0)));
    CHECK(std::abs(dot(Wa, Wb)) < 1e-8);
    // Quartic expansion with vanishing overlap: I2(mix) = (I2(a) + I2(b)) / 2 + cross share.
    TFGrid cross = Wm;
    for (std::size_t i = 0; i < cross.values.size(); ++i) cross.values[i] -= 0.5 * (Wa.values[i] + Wb.values[i]);
    const double predicted = 0.25 * (sum_sq(Wa) + sum_sq(Wb)) + sum_sq(cross) + dot(Wa, cross) + dot(Wb, cross);
    CHECK(std::abs(global_information(Wm) - predicted) < 1e-6);
    CHECK(std::abs(global_entropy(Wm) - 0.5 * (global_entropy(Wa) + global_entropy(Wb))) < 1e-6);
}

TEST_CASE("sub-additivity: overlap raises the information of a sum") {
    const std::size_t n = 512;
    const double fs = 512.0;
    auto a = normalize(tone(n, fs, 40.0));
    auto disjoint = wvt(add(a, normalize(tone(n, fs, 160.0))));
    auto overlap = wvt(add(a, normalize(add(tone(n, fs, 40.0), tone(n, fs, 44.0)))));
    CHECK(global_information(overlap) >= global_information(disjoint));
}

TEST_CASE("quadratic information is convex in the distribution") {
    for (std::uint64_t s = 0; s < 5; ++s) {
        auto d1 = wvt(random_analytic(128, 10 + s));
        auto d2 = wvt(random_complex(128, 20 + s));
        for (double lam : {0.25, 0.5, 0.75}) {
            TFGrid mix = d1;
            for (std::size_t i = 0; i < mix.values.size(); ++i)
                mix.values[i] = lam * d1.values[i] + (1.0 - lam) * d2.values[i];
            CHECK(sum_sq(mix) <= lam * sum_sq(d1) + (1.0 - lam) * sum_sq(d2));
        }
    }
}

TEST_CASE("normalisation is consistent across marginals") {
    auto w = random_analytic(200, 33);
    auto W = wvt(w);
    CHECK(std::abs(total(W) - 1.0) < 1e-6);
}
