#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "oracle/oracle.hpp"
#include "support.hpp"
#include "wvtinfo/detection.hpp"
#include "wvtinfo/error.hpp"

using namespace wvtinfo;
using testing::tone;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

ScenarioSpec small(const std::string& id, ModKind kind = ModKind::BPSK, std::size_t n = 1024) {
    ScenarioSpec s = make_scenario(id, kind);
    s.n_samples = n;
    return s;
}

// Three standard deviations of the observed rate. The threshold is itself
// estimated from n baselines, which doubles the binomial variance.
double calibration_band(double p, std::size_t n) {
    return 3.0 * std::sqrt(2.0 * p * (1.0 - p) / static_cast<double>(n));
}

}  // namespace

TEST_CASE("metric names, tails and indices") {
    for (MetricKind k : kAllMetrics) {
        CHECK(parse_metric(to_string(k)) == k);
        CHECK(kAllMetrics[index_of(k)] == k);
    }
    CHECK(tail(MetricKind::I2NuEntropy) == Tail::Lower);
    CHECK(tail(MetricKind::S2NuEntropy) == Tail::Lower);
    CHECK(tail(MetricKind::PsdEntropy) == Tail::Lower);
    CHECK(tail(MetricKind::RhoNuEntropy) == Tail::Upper);
    CHECK(tail(MetricKind::Wvt2NuEntropy) == Tail::Upper);
    CHECK(tail(MetricKind::PsdPeak) == Tail::Upper);
    CHECK_THROWS_AS(parse_metric("psd"), InvalidArgument);
    CHECK(WvtVariant::full().to_string() == "full");
    CHECK_FALSE(WvtVariant::full().window().has_value());
    CHECK(WvtVariant::pseudo(100).window()->width_sigma == 100.0);
}

TEST_CASE("quantile thresholds") {
    std::vector<double> v(100);
    for (int i = 0; i < 100; ++i) v[i] = i + 1;
    auto up = calibrate_from_values(MetricKind::PsdPeak, v, 0.05);
    CHECK(up.value > 95.0);
    CHECK(up.value < 96.0);
    CHECK(up.n_baseline == 100);
    CHECK(up.value == oracle::brute_quantile(v, 0.05, Tail::Upper));
    CHECK(quantile(v, 0.0) == 1.0);
    CHECK(quantile(v, 1.0) == 100.0);

    // Lower tail mirrors the upper one under negation.
    std::vector<double> neg(v.size());
    std::transform(v.begin(), v.end(), neg.begin(), [](double x) { return -x; });
    auto lo = calibrate_from_values(MetricKind::I2NuEntropy, neg, 0.05);
    CHECK(lo.value == doctest::Approx(-up.value).epsilon(1e-14));

    CHECK_THROWS_AS(calibrate_from_values(MetricKind::PsdPeak, std::vector<double>(19, 1.0), 0.05), InvalidArgument);
    CHECK_NOTHROW(calibrate_from_values(MetricKind::PsdPeak, std::vector<double>(20, 1.0), 0.05));
    CHECK_THROWS_AS(calibrate_from_values(MetricKind::PsdPeak, v, 0.0), InvalidArgument);
    CHECK_THROWS_AS(calibrate_from_values(MetricKind::PsdPeak, v, 1.0), InvalidArgument);
    CHECK_THROWS_AS(quantile({}, 0.5), InvalidArgument);
}

TEST_CASE("strict decisions and kind checks") {
    Threshold up{MetricKind::PsdPeak, 2.0, 0.05, 100};
    CHECK_FALSE(exceeds(up, 2.0));
    CHECK(exceeds(up, std::nextafter(2.0, 3.0)));
    Threshold lo{MetricKind::I2NuEntropy, 2.0, 0.05, 100};
    CHECK_FALSE(exceeds(lo, 2.0));
    CHECK(exceeds(lo, 1.999));
    auto w = generate_awgn(256, 1e4, Seed{1});
    CHECK_THROWS_AS(detect(MetricKind::Wvt2NuEntropy, w, up, WvtVariant::full()), InvalidArgument);
    auto th = calibrate_threshold(MetricKind::PsdPeak,
                                  std::vector<Waveform>{20, generate_awgn(256, 1e4, Seed{2})}, 0.05,
                                  WvtVariant::full());
    // Identical baselines: the threshold equals the value, which does not count.
    CHECK_FALSE(detect(MetricKind::PsdPeak, generate_awgn(256, 1e4, Seed{2}), th, WvtVariant::full()));
}

TEST_CASE("psd peak rises with an added tone") {
    const std::size_t n = 1024;
    const double fs = 1e4;
    const auto v = WvtVariant::full();
    for (std::uint64_t s = 0; s < 100; ++s) {
        auto bg = generate_awgn(n, fs, Seed{s});
        auto with = inject(bg, tone(n, fs, 1000.0), 0.0);
        CHECK(compute_metric(MetricKind::PsdPeak, with, v) > compute_metric(MetricKind::PsdPeak, bg, v));
    }
    // Effectively infinite SNR: always detected.
    std::vector<Waveform> base;
    for (std::uint64_t s = 0; s < 100; ++s) base.push_back(generate_awgn(n, fs, Seed{500 + s}));
    auto th = calibrate_threshold(MetricKind::PsdPeak, base, 0.05, v);
    for (std::uint64_t s = 0; s < 100; ++s)
        CHECK(detect(MetricKind::PsdPeak, inject(generate_awgn(n, fs, Seed{900 + s}), tone(n, fs, 1000.0), 60.0),
                     th, v));
}

TEST_CASE("psd entropy is near its maximum for noise and drops with a tone") {
    const std::size_t n = 1024;
    auto bg = generate_awgn(n, 1e4, Seed{3});
    const double h = compute_metric(MetricKind::PsdEntropy, bg, WvtVariant::full());
    // Exponentially distributed periodogram ordinates sit 1 - gamma below ln N.
    CHECK(h == doctest::Approx(std::log(double(n)) - (1.0 - 0.5772156649)).epsilon(0.01));
    CHECK(h < std::log(double(n)));
    auto strong = inject(bg, tone(n, 1e4, 1000.0), 10.0);
    CHECK(compute_metric(MetricKind::PsdEntropy, strong, WvtVariant::full()) < h);
}

TEST_CASE("normalised metrics are scale invariant, relaxed ones are not") {
    auto w = make_trial(small("awgn"), -5.0, Seed{4});
    auto w2 = scaled(w, 2.0);
    for (auto v : {WvtVariant::full(), WvtVariant::pseudo(50)}) {
        auto a = compute_all_metrics(w, v);
        auto b = compute_all_metrics(w2, v);
        for (MetricKind k : {MetricKind::I2NuEntropy, MetricKind::S2NuEntropy, MetricKind::PsdEntropy,
                             MetricKind::PsdPeak})
            CHECK(std::abs(a[index_of(k)] - b[index_of(k)]) <= 1e-9 * std::abs(a[index_of(k)]));
        for (MetricKind k : {MetricKind::RhoNuEntropy, MetricKind::Wvt2NuEntropy})
            CHECK(std::abs(a[index_of(k)] - b[index_of(k)]) > 1e-3 * std::abs(a[index_of(k)]));
        for (MetricKind k : kAllMetrics) CHECK(compute_metric(k, w, v) == a[index_of(k)]);
    }
    CHECK_THROWS_AS(compute_metric(MetricKind::PsdPeak, Waveform(std::vector<cplx>(64, 1.0), 1e3), WvtVariant::full()),
                    DegenerateInput);
}

TEST_CASE("scenarios") {
    auto a = make_scenario("awgn");
    CHECK(a.clutter.empty());
    CHECK(a.n_samples == 4096);
    CHECK(a.sample_rate == 1e4);
    CHECK(a.variant.kind == WvtVariant::Pseudo);
    CHECK(a.variant.sigma == 100.0);
    auto m = make_scenario("awgn+mfsk");
    REQUIRE(m.clutter.size() == 1);
    CHECK(m.clutter[0].center_hz == 1000.0);
    auto m2 = make_scenario("awgn+2mfsk", ModKind::QPSK);
    REQUIRE(m2.clutter.size() == 2);
    CHECK(m2.policy == MessagePolicy::MatchedPair);
    CHECK(m2.injection.kind == ModKind::QPSK);
    CHECK_THROWS_AS(make_scenario("nope"), InvalidArgument);

    auto bad = a;
    bad.clutter.push_back({6000.0, 1.0, 100.0, 50});
    CHECK_THROWS_AS(validate(bad), InvalidArgument);

    for (const std::string id : {"awgn", "awgn+mfsk", "awgn+2mfsk"}) {
        auto s = small(id);
        auto bg = make_background(s, Seed{5});
        CHECK(mean_power(bg) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(mean_power(make_injection(s, Seed{6})) == doctest::Approx(1.0).epsilon(1e-12));
        auto t = make_trial(s, kNegInf, Seed{7});
        auto b2 = make_background(s, derive(Seed{7}, {kBackground}));
        CHECK(t.size() == s.n_samples);
        auto again = make_trial(s, 3.0, Seed{7});
        auto again2 = make_trial(s, 3.0, Seed{7});
        CHECK(std::equal(again.samples().begin(), again.samples().end(), again2.samples().begin()));
        (void)b2;
    }
    auto r = small("awgn");
    r.real_valued = true;
    CHECK(make_trial(r, 0.0, Seed{8}).is_real());
}

TEST_CASE("matched pair puts the same message on both centres") {
    // 5000 samples put 1 kHz on an integer number of bins.
    auto s = small("awgn+2mfsk", ModKind::BPSK, 5000);
    auto inj = make_injection(s, Seed{10});
    auto p = psd(inj);
    auto band = [&](double f) {
        double e = 0.0;
        for (std::size_t k = 0; k < p.size(); ++k)
            if (std::abs(p.freq(k) - f) < 70.0) e += p.values[k];
        return e * p.df;
    };
    const double total = p.integral();
    CHECK(band(1000.0) / total == doctest::Approx(0.5).epsilon(0.05));
    CHECK(band(2000.0) / total == doctest::Approx(0.5).epsilon(0.05));
    // Shifting the 2 kHz copy down to 1 kHz reproduces the first one.
    const double fs = s.sample_rate;
    auto X = dft(inj.samples());
    const std::size_t n = inj.size();
    std::vector<cplx> A(n, 0.0), B(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double f = k * fs / n;
        if (std::abs(f - 1000.0) < 400.0) A[k] = X[k];
        if (std::abs(f - 2000.0) < 400.0) B[(k + n - static_cast<std::size_t>(std::lround(1000.0 * n / fs))) % n] = X[k];
    }
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        num += std::norm(A[k] - B[k]);
        den += std::norm(A[k]);
    }
    CHECK(std::sqrt(num / den) < 0.05);
}

TEST_CASE("false-alarm rate matches p_fa on fresh backgrounds") {
    const std::size_t n = 400;
    for (const std::string id : {"awgn", "awgn+mfsk"}) {
        auto s = small(id, ModKind::BPSK, 512);
        auto set = detection_curves(s, {kAllMetrics.begin(), kAllMetrics.end()}, {kNegInf}, n, 0.05, Seed{77});
        for (const auto& c : set.curves) {
            INFO(to_string(c.metric) << " " << id);
            CHECK(std::abs(c.rates[0] - 0.05) <= calibration_band(0.05, n));
        }
    }
}

TEST_CASE("wvt2-nu detects bpsk at -20 dB at desk scale") {
    auto s = make_scenario("awgn", ModKind::BPSK);
    auto c = detection_curve(s, MetricKind::Wvt2NuEntropy, {-20.0}, 100, 0.05, Seed{21});
    CHECK(c.rates[0] >= 0.9);
}

TEST_CASE("detection curves: determinism, worker independence, monotonicity") {
    auto s = small("awgn", ModKind::BPSK, 512);
    const std::vector<double> grid{kNegInf, -30.0, -20.0, -15.0, -10.0, -5.0, 0.0, 5.0};
    std::vector<MetricKind> kinds{kAllMetrics.begin(), kAllMetrics.end()};
    auto a = detection_curves(s, kinds, grid, 40, 0.05, Seed{5}, 1);
    auto b = detection_curves(s, kinds, grid, 40, 0.05, Seed{5}, 3);
    CHECK(curve_csv(a.curves) == curve_csv(b.curves));
    for (const auto& c : a.curves) {
        INFO(to_string(c.metric));
        CHECK(c.rates.size() == grid.size());
        auto fit = isotonic_fit(c.rates);
        double resid = 0.0;
        for (std::size_t i = 0; i < fit.size(); ++i) resid = std::max(resid, std::abs(fit[i] - c.rates[i]));
        CHECK(resid < 0.1);
        CHECK(c.rates.back() > 0.9);
        for (double r : c.rates) CHECK((r >= 0.0 && r <= 1.0));
    }
    CHECK_THROWS_AS(detection_curves(s, kinds, grid, 19, 0.05, Seed{5}), InvalidArgument);
}

TEST_CASE("psd peak needs more snr as the symbol rate grows") {
    auto s = small("awgn", ModKind::BPSK, 1024);
    std::vector<double> grid;
    for (double x = -30.0; x <= 10.0; x += 2.5) grid.push_back(x);
    s.injection.symbol_rate = 5.0;
    auto narrow = detection_curve(s, MetricKind::PsdPeak, grid, 40, 0.05, Seed{3});
    s.injection.symbol_rate = 250.0;
    auto wide = detection_curve(s, MetricKind::PsdPeak, grid, 40, 0.05, Seed{3});
    auto a = snr_at_rate(narrow), b = snr_at_rate(wide);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(*b > *a);
}

TEST_CASE("snr at rate and isotonic fit") {
    DetectionCurve c;
    c.snr_grid = {kNegInf, -10.0, -5.0, 0.0};
    c.rates = {0.05, 0.2, 0.6, 1.0};
    CHECK(*snr_at_rate(c) == doctest::Approx(-5.0 - 5.0 * 0.1 / 0.4));
    CHECK(*snr_at_rate(c, 0.1) == -10.0);
    c.rates = {0.05, 0.1, 0.2, 0.3};
    CHECK_FALSE(snr_at_rate(c).has_value());
    CHECK(isotonic_fit({1.0, 3.0, 2.0, 4.0}) == std::vector<double>{1.0, 2.5, 2.5, 4.0});
    CHECK(isotonic_fit({3.0, 2.0, 1.0}) == std::vector<double>{2.0, 2.0, 2.0});
}

TEST_CASE("analytic detection probability") {
    CHECK(upper_normal_quantile(0.05) == doctest::Approx(1.6448536269514722).epsilon(1e-14));
    ExperimentGeometry g{1.0, 4.0, 1.0};
    CHECK(analytic_detection_probability(g, 0.0) == 0.0);
    CHECK(analytic_detection_probability(g, 0.1) == doctest::Approx(0.017470583009138285).epsilon(1e-12));
    CHECK(analytic_detection_probability(g, 0.5) == doctest::Approx(0.04591368693996678).epsilon(1e-12));
    CHECK(analytic_detection_probability(g, 1.0) == doctest::Approx(0.0498662279854013).epsilon(1e-12));
    CHECK(analytic_detection_probability(g, 1e6) == doctest::Approx(0.05).epsilon(1e-12));
    ExperimentGeometry wider = g;
    wider.b_sig = 2.0;
    CHECK(analytic_detection_probability(wider, 0.2) < analytic_detection_probability(g, 0.2));
    ExperimentGeometry bad = g;
    bad.b_sig = 0.0;
    CHECK_THROWS_AS(analytic_detection_probability(bad, 0.1), InvalidArgument);
    bad = g;
    bad.b_sig = 8.0;
    CHECK_THROWS_AS(analytic_detection_probability(bad, 0.1), InvalidArgument);
}

TEST_CASE("spectrum excess") {
    SpectralDensity a{{1.0, 2.0, 4.0}, 5.0, 0.0};
    for (double v : spectrum_excess(a, a).values) CHECK(v == 1.0);
    SpectralDensity b{{2.0, 2.0, 2.0}, 5.0, 0.0};
    CHECK(spectrum_excess(a, b).values == std::vector<double>{0.5, 1.0, 2.0});
    SpectralDensity zero{{1.0, 0.0, 1.0}, 5.0, 0.0};
    CHECK_THROWS_AS(spectrum_excess(a, zero), InvalidArgument);
    SpectralDensity other{{1.0, 1.0, 1.0}, 2.0, 0.0};
    CHECK_THROWS_AS(spectrum_excess(a, other), InvalidArgument);
}

TEST_CASE("exports") {
    DetectionCurve c;
    c.metric = MetricKind::Wvt2NuEntropy;
    c.scenario_id = "awgn";
    c.snr_grid = {kNegInf, -2.5};
    c.rates = {0.05, 0.5};
    c.n_trials = 100;
    c.p_fa = 0.05;
    c.seed = 9;
    CHECK(curve_csv({c}) ==
          "metric,scenario_id,snr_db,rate,n_trials,p_fa,seed\n"
          "wvt2-nu,awgn,-inf,0.05,100,0.05,9\n"
          "wvt2-nu,awgn,-2.5,0.5,100,0.05,9\n");
    Threshold th{MetricKind::PsdPeak, 0.125, 0.05, 100};
    auto j = threshold_json(th, "abc");
    CHECK(j.find("\"metric\": \"psd-peak\"") != std::string::npos);
    CHECK(j.find("\"baseline_digest\": \"abc\"") != std::string::npos);
    CHECK(j.find("0.125") != std::string::npos);
}
