#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "prodsum/quadrature.hpp"
#include "prodsum/seed_stream.hpp"
#include "prodsum/wiener.hpp"

using namespace prodsum;

namespace {

GridFunction ramp(std::int64_t m) {  // w(x) = x on [0,1]
    auto g = make_grid_function(m, 1.0, GridInterpretation::kPiecewiseLinear);
    for (std::int64_t i = 0; i <= m; ++i) g.values[static_cast<std::size_t>(i)] = g.grid_point(i);
    return g;
}

}  // namespace

TEST_CASE("degenerate all-zero noise gives the identically zero path") {
    const auto path = simulate_wiener(64, 1.0, [] { return 0.0; });
    for (double v : path.values) CHECK(v == 0.0);
    CHECK(log_integral_functional(path, 1.0) == 0.0);
}

TEST_CASE("simulation is deterministic in the stream") {
    SeedStream s1 = derive_stream(8, 2);
    SeedStream s2 = derive_stream(8, 2);
    const auto a = simulate_wiener(256, 1.0, s1);
    const auto b = simulate_wiener(256, 1.0, s2);
    CHECK(a.values == b.values);
    CHECK(a.values[0] == 0.0);
}

TEST_CASE("terminal variance matches the horizon") {
    const int R = 20000;
    for (double horizon : {1.0, 4.0}) {
        double sum = 0.0, sum_sq = 0.0;
        for (int r = 0; r < R; ++r) {
            SeedStream s = derive_stream(555, static_cast<std::uint64_t>(r));
            const auto w = simulate_wiener(64, horizon, s);
            const double x = w.values.back();
            sum += x;
            sum_sq += x * x;
        }
        const double mean = sum / R;
        const double var = sum_sq / R - mean * mean;
        // 4 sigma band: sd of the variance estimate is about
        // horizon*sqrt(2/R) ~ 1% of horizon.
        CHECK(var == doctest::Approx(horizon).epsilon(0.045));
    }
}

TEST_CASE("functional of the zero and ramp paths") {
    const auto zero = make_grid_function(32, 1.0, GridInterpretation::kPiecewiseLinear);
    for (double t : {0.0, 0.3, 1.0}) CHECK(log_integral_functional(zero, t) == 0.0);

    const auto r = ramp(128);
    // integrand w(x)/x = 1, so the integral is t.
    CHECK(log_integral_functional(r, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(log_integral_functional(r, 0.37) == doctest::Approx(0.37).epsilon(1e-12));
}

TEST_CASE("functional rejects bad inputs") {
    const auto r = ramp(16);
    CHECK_THROWS_AS(log_integral_functional(r, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(log_integral_functional(r, -0.1), std::invalid_argument);

    auto step = ramp(16);
    step.interpretation = GridInterpretation::kCadlagStep;
    CHECK_THROWS_AS(log_integral_functional(step, 0.5), std::invalid_argument);

    auto shifted = ramp(16);
    shifted.values[0] = 0.25;
    CHECK_THROWS_AS(log_integral_functional(shifted, 0.5), std::invalid_argument);
}

TEST_CASE("segment-analytic integration is exact up to interpolation error") {
    // w(x) = x is reproduced exactly by the interpolant; w(x) = x^2 has
    // O(1/m^2) interpolation error that must shrink by ~4x per refinement.
    auto quadratic = [](std::int64_t m) {
        auto g = make_grid_function(m, 1.0, GridInterpretation::kPiecewiseLinear);
        for (std::int64_t i = 0; i <= m; ++i) {
            const double x = g.grid_point(i);
            g.values[static_cast<std::size_t>(i)] = x * x;
        }
        return g;
    };
    // int_0^1 x dx = 1/2
    const double e1 = std::fabs(log_integral_functional(quadratic(64), 1.0) - 0.5);
    const double e2 = std::fabs(log_integral_functional(quadratic(128), 1.0) - 0.5);
    const double e3 = std::fabs(log_integral_functional(quadratic(256), 1.0) - 0.5);
    CHECK(e1 / e2 > 3.0);
    CHECK(e2 / e3 > 3.0);
    CHECK(e3 < 1e-5);
}

TEST_CASE("truncated functional branches and values") {
    const auto r = ramp(64);
    CHECK(truncated_functional(r, 0.5, 0.25) == 0.0);  // t <= eps
    CHECK(truncated_functional(r, 0.5, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(truncated_functional(r, 0.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(truncated_functional(r, 1.0, 0.5), std::invalid_argument);

    // Step interpretation is accepted away from zero.
    auto step = ramp(64);
    step.interpretation = GridInterpretation::kCadlagStep;
    CHECK(truncated_functional(step, 0.5, 1.0) ==
          doctest::Approx(0.5).epsilon(2e-2));  // left-endpoint step bias O(1/m)
}

TEST_CASE("truncation error decreases as eps -> 0 on a fixed path") {
    SeedStream s = derive_stream(97, 4);
    const auto w = simulate_wiener(4096, 1.0, s);
    const double full = log_integral_functional(w, 1.0);
    const double d1 = std::fabs(full - truncated_functional(w, 0.1, 1.0));
    const double d2 = std::fabs(full - truncated_functional(w, 0.01, 1.0));
    const double d3 = std::fabs(full - truncated_functional(w, 0.001, 1.0));
    CHECK(d1 > d2);
    CHECK(d2 > d3);
}

TEST_CASE("limit covariance closed form") {
    CHECK(limit_covariance(1.0, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(limit_covariance(0.0, 0.7) == 0.0);
    CHECK(limit_covariance(0.5, 1.0) == doctest::Approx(1.3465735902799727).epsilon(1e-12));
    CHECK_THROWS_AS(limit_covariance(-0.1, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(limit_covariance(0.5, 1.1), std::invalid_argument);
}

TEST_CASE("limit covariance is symmetric and matches the quadrature oracle") {
    for (double s = 0.1; s <= 1.0; s += 0.1) {
        for (double t = s; t <= 1.0; t += 0.3) {
            CHECK(limit_covariance(s, t) == limit_covariance(t, s));
        }
        CHECK(std::fabs(limit_covariance(s, s) -
                        min_over_xy_box_quadrature(s, s, 1e-9)) < 1e-6);
    }
    CHECK(std::fabs(limit_covariance(0.5, 1.0) -
                    min_over_xy_box_quadrature(0.5, 1.0, 1e-9)) < 1e-6);
}

TEST_CASE("gaussianity of the functional at moderate scale") {
    // Full-scale (R >= 1e5, m = 2^12) runs live in the acceptance suite;
    // this is the fast guard: variance within 10% of 2t and small skew.
    const int R = 20000;
    const std::int64_t m = 512;
    std::vector<double> at_quarter(R), at_one(R);
    const LogIntegralEvaluator evaluator(m, 1.0);
    for (int r = 0; r < R; ++r) {
        SeedStream s = derive_stream(4242, static_cast<std::uint64_t>(r));
        const auto w = simulate_wiener(m, 1.0, s);
        const auto v = evaluator.eval(w, {0.25, 1.0});
        at_quarter[static_cast<std::size_t>(r)] = v[0];
        at_one[static_cast<std::size_t>(r)] = v[1];
    }
    for (const auto* samples : {&at_quarter, &at_one}) {
        const double t = samples == &at_quarter ? 0.25 : 1.0;
        double mean = 0.0;
        for (double x : *samples) mean += x;
        mean /= R;
        double m2 = 0.0, m3 = 0.0;
        for (double x : *samples) {
            const double d = x - mean;
            m2 += d * d;
            m3 += d * d * d;
        }
        m2 /= R;
        m3 /= R;
        const double skew = m3 / std::pow(m2, 1.5);
        CHECK(m2 == doctest::Approx(limit_covariance(t, t)).epsilon(0.10));
        CHECK(std::fabs(skew) < 0.1);
    }
}

TEST_CASE("evaluator agrees with the one-shot functional") {
    SeedStream s = derive_stream(2718, 0);
    const std::int64_t m = 1024;
    const auto w = simulate_wiener(m, 1.0, s);
    const LogIntegralEvaluator evaluator(m, 1.0);
    const std::vector<double> ts = {0.0, 0.125, 0.25, 1.0 / 3.0, 0.5004882812500001,
                                    0.75, 1.0};
    const auto fast = evaluator.eval(w, ts);
    for (std::size_t i = 0; i < ts.size(); ++i) {
        CHECK(fast[i] == doctest::Approx(log_integral_functional(w, ts[i]))
                             .epsilon(1e-11));
    }

    // Horizon-n grids work the same way.
    SeedStream s2 = derive_stream(2718, 1);
    const auto wn = simulate_wiener(500, 100.0, s2);
    const LogIntegralEvaluator evaluator_n(500, 100.0);
    const auto fast_n = evaluator_n.eval(wn, {37.0, 100.0});
    CHECK(fast_n[0] == doctest::Approx(log_integral_functional(wn, 37.0)).epsilon(1e-11));
    CHECK(fast_n[1] == doctest::Approx(log_integral_functional(wn, 100.0)).epsilon(1e-11));
}
