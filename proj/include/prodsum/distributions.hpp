// Positive finite-variance distribution specs with closed-form moments,
// plus reproducible i.i.d. sampling and partial sums.

#ifndef PRODSUM_DISTRIBUTIONS_HPP
#define PRODSUM_DISTRIBUTIONS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "prodsum/seed_stream.hpp"

namespace prodsum {

enum class Family {
    kExponential,   // rate > 0
    kUniform,       // 0 <= a < b (support is the open interval (a,b))
    kLogNormal,     // location real, scale > 0
    kParetoShifted  // Lomax: shape alpha > 2, scale > 0
};

std::string family_name(Family family);
Family family_from_name(const std::string& name);

/// A positive law with exact first two moments. gamma = mu/sigma is the
/// exponent scale of the product-of-sums statistic.
struct DistributionSpec {
    Family family;
    std::vector<double> params;
    double mu;
    double sigma;
    double gamma;
};

/// Validates parameters and fills in closed-form mu, sigma, gamma.
/// Throws std::invalid_argument naming the violated constraint.
DistributionSpec make_distribution(Family family, std::span<const double> params);
DistributionSpec make_distribution(const std::string& family, std::span<const double> params);

/// One draw. Inverse CDF for exponential/uniform/Pareto, normal transform
/// for lognormal, so results are reproducible given the same stream.
double sample_one(const DistributionSpec& spec, SeedStream& stream);

/// n i.i.d. draws; a pure function of (spec, n, stream state).
std::vector<double> sample_iid(const DistributionSpec& spec, std::int64_t n,
                               SeedStream& stream);

/// S_1..S_n with S_k = sum of the first k entries; strictly increasing
/// whenever all inputs are positive.
struct SamplePath {
    std::vector<double> values;

    std::int64_t n() const { return static_cast<std::int64_t>(values.size()); }
};

/// Throws std::invalid_argument identifying the first non-positive entry
/// (1-based index, matching S_k subscripts).
SamplePath partial_sums(std::span<const double> xs);

}  // namespace prodsum

#endif  // PRODSUM_DISTRIBUTIONS_HPP
