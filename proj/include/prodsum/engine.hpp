// Deterministic Monte Carlo experiment runner. Replications own
// counter-derived streams, execute on any number of workers, and are
// assembled in replication order, so results are a pure function of the
// config -- the worker count never changes a byte of output.

#ifndef PRODSUM_ENGINE_HPP
#define PRODSUM_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "prodsum/distributions.hpp"
#include "prodsum/seed_stream.hpp"

namespace prodsum {

enum class ExperimentKind { kClt, kFclt, kLil, kExtremal, kCheck };

std::string kind_name(ExperimentKind kind);
ExperimentKind kind_from_name(const std::string& name);

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::kClt;
    DistributionSpec spec;
    std::int64_t n = 1000;
    std::int64_t R = 100;
    std::int64_t m = 4096;           // grid resolution (fclt paths, extremal cells)
    std::vector<double> t_grid;      // evaluation times in [0,1]
    std::uint64_t master_seed = 0;
    bool seed_from_entropy = false;  // true when the seed was generated, not given
    int workers_hint = 1;
    std::string output_path;
    bool retain_samples = true;
    std::int64_t lil_n0 = 1000;
    double lil_rho = 1.2;

    void validate() const;  // throws std::invalid_argument on violations
};

inline constexpr double kQuantileLevels[] = {0.01, 0.05, 0.25, 0.50,
                                             0.75, 0.95, 0.99};

struct SummaryStats {
    std::int64_t count = 0;
    double mean = 0.0;
    std::optional<double> variance;  // absent for count < 2
    double quantiles[7] = {};        // at kQuantileLevels, type-7 interpolation
};

SummaryStats summarize(std::span<const double> samples);

struct ExperimentResult {
    ExperimentConfig config;                   // echo
    std::vector<double> t_grid;                // times the columns refer to
    std::vector<std::vector<double>> samples;  // [t_index][replication]
    std::vector<SummaryStats> summary;         // per t
    std::vector<double> ks;                    // per t, vs the limit marginal
    std::vector<std::vector<double>> cross_cov;  // empirical, fclt only
    double wall_ms = 0.0;
};

/// Two-sided Kolmogorov-Smirnov distance between the empirical CDF of
/// samples and target_cdf (monotone into [0,1]), evaluated at the sample
/// points. Throws on an empty sample.
double ks_distance(std::span<const double> samples,
                   const std::function<double(double)>& target_cdf);

/// Phi((x - mean)/sd) via erfc; absolute error well under 1e-10.
double normal_cdf(double x, double mean, double sd);

/// R replications of the log-product statistic at sample size n;
/// summary plus KS distance against Normal(0, 2).
ExperimentResult run_clt(const ExperimentConfig& config);

/// Per t in t_grid: R replicated values of the log-product path at t, each
/// KS'd against Normal(0, limit_covariance(t,t)); plus the empirical
/// cross-covariance matrix across t_grid.
ExperimentResult run_fclt(const ExperimentConfig& config);

/// Runs fn(r) for r = 0..R-1 on `workers` threads in index-chunked blocks.
/// fn must write only to its own replication's slot. The first failing
/// replication aborts the run and is reported by index.
void parallel_replications(std::int64_t R, int workers,
                           const std::function<void(std::int64_t)>& fn);

}  // namespace prodsum

#endif  // PRODSUM_ENGINE_HPP
