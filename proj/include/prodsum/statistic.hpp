// The product-of-sums statistic in log space, its path version, the
// rescaled partial-sum process, and the coupled-path diagnostics.

#ifndef PRODSUM_STATISTIC_HPP
#define PRODSUM_STATISTIC_HPP

#include <cstdint>

#include "prodsum/distributions.hpp"
#include "prodsum/grid_function.hpp"

namespace prodsum {

/// (gamma/sqrt(n)) * sum_{k<=n} ln(S_k/(k*mu)) -- the natural log of
/// (prod S_k/(k mu))^{gamma/sqrt n}. Compensated accumulation throughout.
/// Throws with the 1-based index of any non-positive S_k.
double log_prod_statistic(const SamplePath& path, const DistributionSpec& spec);

/// The log-product path evaluated at a single time:
/// (gamma/sqrt(n)) * sum_{k<=[nt]} ln(S_k/(k*mu)). Zero for t < 1/n.
double log_prod_at(const SamplePath& path, const DistributionSpec& spec, double t);

/// Cadlag step path of the above sampled at t_i = i/m. Values at shared
/// grid points are identical across resolutions (the cutoffs [n*i/m] are
/// computed in integer arithmetic).
GridFunction log_prod_path(const SamplePath& path, const DistributionSpec& spec,
                           std::int64_t m);

/// W_n(t) = (S_[nt] - [nt]*mu) / (sigma*sqrt(n)), S_0 = 0; cadlag step.
GridFunction partial_sum_process(const SamplePath& path,
                                 const DistributionSpec& spec, std::int64_t m);

/// theta(x) = (ln(1+x) - x)/x for x > -1, extended by theta(0) = 0.
/// A short series is used near zero where the direct form cancels.
double theta_remainder(double x);

/// |S_n - n*mu| / sqrt(n) for one path (0 for the synthetic path S_k = k*mu).
double l1_deviation(const SamplePath& path, const DistributionSpec& spec);

struct MonteCarloEstimate {
    double mean;
    double std_error;
    std::int64_t replications;
};

/// Monte Carlo estimate of E|S_n - n*mu|/sqrt(n) over R fresh samples of
/// size n drawn sequentially from the stream.
MonteCarloEstimate l1_condition_estimate(const DistributionSpec& spec,
                                         std::int64_t n, std::int64_t R,
                                         SeedStream& stream);

struct CoupledPath {
    SamplePath path;
    std::int64_t clipped = 0;  // entries raised to k*mu/2 to stay positive
    bool clip_warning = false;  // clipped > 1% of entries
};

/// Synthetic path S_k = k*mu + sigma*w(k) built from a Wiener path on
/// horizon n. Requires w.horizon == n and w.m a multiple of n so integer
/// times are exact grid nodes.
CoupledPath coupled_path(const DistributionSpec& spec, const GridFunction& w,
                         std::int64_t n);

/// |sum_{k<=n} ln(S_k/(k mu)) - (sigma/mu) int_0^n w(x)/x dx| / sqrt(n)
/// for S = coupled_path(spec, w, n).
double coupling_discrepancy(const DistributionSpec& spec, const GridFunction& w,
                            std::int64_t n);

}  // namespace prodsum

#endif  // PRODSUM_STATISTIC_HPP
