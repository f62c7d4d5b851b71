#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "prodsum/engine.hpp"
#include "prodsum/statistic.hpp"
#include "prodsum/wiener.hpp"

using namespace prodsum;

namespace {

ExperimentConfig small_clt_config() {
    ExperimentConfig config;
    config.kind = ExperimentKind::kClt;
    config.spec = make_distribution(Family::kExponential, std::vector<double>{1.0});
    config.n = 500;
    config.R = 400;
    config.master_seed = 20250809;
    return config;
}

// Bisection inverse of a monotone CDF; test-side oracle for placing
// samples at exact quantiles.
double invert_cdf(const std::function<double(double)>& cdf, double p) {
    double lo = -60.0, hi = 60.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("ks distance on samples placed at exact quantiles is 0.5/R") {
    const auto cdf = [](double x) { return normal_cdf(x, 0.0, 1.0); };
    for (int R : {5, 40}) {
        std::vector<double> samples;
        for (int i = 1; i <= R; ++i) {
            samples.push_back(invert_cdf(cdf, (i - 0.5) / R));
        }
        CHECK(ks_distance(samples, cdf) ==
              doctest::Approx(0.5 / R).epsilon(1e-9));
    }
}

TEST_CASE("ks distance of a single sample at the median is 0.5") {
    const auto cdf = [](double x) { return normal_cdf(x, 0.0, 1.0); };
    CHECK(ks_distance(std::vector<double>{0.0}, cdf) == doctest::Approx(0.5));
}

TEST_CASE("ks distance of a far-tail constant sample approaches 1") {
    const auto cdf = [](double x) { return normal_cdf(x, 0.0, 1.0); };
    const std::vector<double> samples(100, 40.0);
    CHECK(ks_distance(samples, cdf) > 1.0 - 1e-12);
    CHECK(ks_distance(samples, cdf) <= 1.0);
}

TEST_CASE("ks distance rejects an empty sample and moves little on duplicates") {
    const auto cdf = [](double x) { return normal_cdf(x, 0.0, 1.0); };
    CHECK_THROWS_AS(ks_distance(std::vector<double>{}, cdf), std::invalid_argument);

    std::vector<double> samples;
    SeedStream s = derive_stream(99, 0);
    for (int i = 0; i < 50; ++i) samples.push_back(s.next_gaussian());
    const double base = ks_distance(samples, cdf);
    auto dup = samples;
    dup.push_back(samples[10]);
    const double with_dup = ks_distance(dup, cdf);
    CHECK(std::fabs(with_dup - base) <= 1.0 / 50.0 + 1e-12);
}

TEST_CASE("normal cdf hits standard values") {
    CHECK(normal_cdf(0.0, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(normal_cdf(1.959963984540054, 0.0, 1.0) ==
          doctest::Approx(0.975).epsilon(1e-10));
    CHECK(normal_cdf(3.0, 1.0, 2.0) == doctest::Approx(0.8413447460685429).epsilon(1e-12));
}

TEST_CASE("summarize: R = 1 reports no variance, quantiles collapse") {
    const auto s = summarize(std::vector<double>{1.5});
    CHECK(s.count == 1);
    CHECK(s.mean == 1.5);
    CHECK_FALSE(s.variance.has_value());
    for (double q : s.quantiles) CHECK(q == 1.5);
}

TEST_CASE("summarize: known small sample") {
    const auto s = summarize(std::vector<double>{4.0, 1.0, 3.0, 2.0});
    CHECK(s.mean == doctest::Approx(2.5));
    CHECK(*s.variance == doctest::Approx(5.0 / 3.0).epsilon(1e-14));
    CHECK(s.quantiles[3] == doctest::Approx(2.5));  // median, type-7
    CHECK(s.quantiles[1] == doctest::Approx(1.15).epsilon(1e-12));
}

TEST_CASE("parallel_replications preserves order and reports the first failure") {
    std::vector<int> hits(100, 0);
    parallel_replications(100, 8, [&](std::int64_t r) {
        hits[static_cast<std::size_t>(r)] = static_cast<int>(r) + 1;
    });
    for (int i = 0; i < 100; ++i) CHECK(hits[static_cast<std::size_t>(i)] == i + 1);

    CHECK_THROWS_WITH_AS(
        parallel_replications(100, 8,
                              [&](std::int64_t r) {
                                  if (r >= 37) throw std::runtime_error("boom");
                              }),
        doctest::Contains("replication 37"), std::runtime_error);
}

TEST_CASE("run_clt is a pure function of the config: workers do not matter") {
    auto config = small_clt_config();
    config.workers_hint = 1;
    const auto r1 = run_clt(config);
    config.workers_hint = 8;
    const auto r8 = run_clt(config);
    REQUIRE(r1.samples.size() == 1);
    CHECK(r1.samples[0] == r8.samples[0]);  // bitwise equal samples
    CHECK(r1.ks == r8.ks);
}

TEST_CASE("run_clt summary is sane at small scale") {
    const auto result = run_clt(small_clt_config());
    REQUIRE(result.summary.size() == 1);
    CHECK(result.summary[0].count == 400);
    CHECK(std::fabs(result.summary[0].mean) < 0.4);
    CHECK(*result.summary[0].variance == doctest::Approx(2.0).epsilon(0.35));
    CHECK(result.ks[0] >= 0.0);
    CHECK(result.ks[0] <= 1.0);
    CHECK(result.ks[0] < 0.2);
}

TEST_CASE("run_clt with R = 1 reports variance as unavailable") {
    auto config = small_clt_config();
    config.R = 1;
    const auto result = run_clt(config);
    CHECK_FALSE(result.summary[0].variance.has_value());
}

TEST_CASE("fclt with t_grid = {1} reproduces the clt samples bitwise") {
    auto clt_config = small_clt_config();
    auto fclt_config = clt_config;
    fclt_config.kind = ExperimentKind::kFclt;
    fclt_config.t_grid = {1.0};
    const auto a = run_clt(clt_config);
    const auto b = run_fclt(fclt_config);
    CHECK(a.samples[0] == b.samples[0]);
}

TEST_CASE("fclt marginals track the limit covariance at moderate scale") {
    ExperimentConfig config;
    config.kind = ExperimentKind::kFclt;
    config.spec = make_distribution(Family::kExponential, std::vector<double>{1.0});
    config.n = 2000;
    config.R = 2000;
    config.t_grid = {0.5, 1.0};
    config.master_seed = 77;
    const auto result = run_fclt(config);

    CHECK(*result.summary[0].variance ==
          doctest::Approx(limit_covariance(0.5, 0.5)).epsilon(0.15));
    CHECK(*result.summary[1].variance ==
          doctest::Approx(limit_covariance(1.0, 1.0)).epsilon(0.15));
    REQUIRE(result.cross_cov.size() == 2);
    CHECK(result.cross_cov[0][1] ==
          doctest::Approx(limit_covariance(0.5, 1.0)).epsilon(0.2));
    CHECK(result.cross_cov[0][1] == result.cross_cov[1][0]);
    for (double d : result.ks) {
        CHECK(d >= 0.0);
        CHECK(d <= 1.0);
    }
}

TEST_CASE("fclt rejects an empty t_grid and bad kinds") {
    ExperimentConfig config = small_clt_config();
    config.kind = ExperimentKind::kFclt;
    CHECK_THROWS_AS(run_fclt(config), std::invalid_argument);
    config.t_grid = {0.5};
    CHECK_NOTHROW(run_fclt(config));
    CHECK_THROWS_AS(run_clt(config), std::invalid_argument);
}

TEST_CASE("config validation catches out-of-range fields") {
    auto config = small_clt_config();
    config.n = 0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config = small_clt_config();
    config.R = 0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config = small_clt_config();
    config.t_grid = {1.5};
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}

TEST_CASE("coupled-oracle replications tighten the clt ks distance in n") {
    // Replaces the sampling route with the coupled synthetic path route:
    // the ks distance against Normal(0,2) at n = 1e4 must not exceed the
    // one at n = 1e2.
    const auto spec = make_distribution(Family::kExponential, std::vector<double>{1.0});
    const auto run_coupled = [&](std::int64_t n) {
        const int R = 400;
        std::vector<double> samples(R);
        parallel_replications(R, 4, [&](std::int64_t r) {
            SeedStream stream = derive_stream(31337, static_cast<std::uint64_t>(r));
            const auto w = simulate_wiener(n, static_cast<double>(n), stream);
            const auto coupled = coupled_path(spec, w, n);
            samples[static_cast<std::size_t>(r)] = log_prod_statistic(coupled.path, spec);
        });
        return ks_distance(samples, [](double x) {
            return normal_cdf(x, 0.0, std::sqrt(2.0));
        });
    };
    CHECK(run_coupled(10000) <= run_coupled(100));
}
