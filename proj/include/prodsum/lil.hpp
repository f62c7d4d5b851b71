// Law-of-iterated-logarithm tracking: the sqrt(2 n lnln n) normalization
// along geometric checkpoints, its running supremum, and the
// Strassen-scaled functional path fed to the limit-set scorer.

#ifndef PRODSUM_LIL_HPP
#define PRODSUM_LIL_HPP

#include <cstdint>
#include <vector>

#include "prodsum/distributions.hpp"
#include "prodsum/grid_function.hpp"

namespace prodsum {

/// (gamma / sqrt(2 n lnln n)) * sum_{k<=n} ln(S_k/(k mu)); n >= 3 so that
/// lnln n is positive.
double lil_normalized(const SamplePath& path, const DistributionSpec& spec);

struct LilCheckpoint {
    std::int64_t n;
    double value;
    double running_max;
};

struct LilConfig {
    DistributionSpec spec;
    std::int64_t n0 = 1000;  // first checkpoint, >= 3
    double rho = 1.2;        // geometric spacing, > 1
    std::int64_t n_max = 1000000;
    std::uint64_t master_seed = 0;
};

/// Follows a single seeded path to n_max, evaluating lil_normalized at
/// checkpoints n_j = ceil(n0 * rho^j) (final checkpoint clamped to n_max).
/// The log-ratio sum is extended incrementally, never recomputed.
std::vector<LilCheckpoint> run_lil(const LilConfig& config);

/// Value at x is (gamma / sqrt(2 n lnln n)) * sum_{k<=[nx]} ln(S_k/(k mu));
/// cadlag step on [0,1]. Feed into limit_set_distance / envelope checks.
GridFunction strassen_scaled_path(const SamplePath& path,
                                  const DistributionSpec& spec, std::int64_t m);

}  // namespace prodsum

#endif  // PRODSUM_LIL_HPP
