#include "prodsum/distributions.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "prodsum/accum.hpp"

namespace prodsum {

namespace {

[[noreturn]] void reject(const std::string& what) {
    throw std::invalid_argument("make_distribution: " + what);
}

void require_param_count(Family family, std::span<const double> params,
                         std::size_t want) {
    if (params.size() != want) {
        std::ostringstream os;
        os << family_name(family) << " takes " << want << " parameter"
           << (want == 1 ? "" : "s") << ", got " << params.size();
        reject(os.str());
    }
}

}  // namespace

std::string family_name(Family family) {
    switch (family) {
        case Family::kExponential: return "Exponential";
        case Family::kUniform: return "Uniform";
        case Family::kLogNormal: return "LogNormal";
        case Family::kParetoShifted: return "ParetoShifted";
    }
    return "?";
}

Family family_from_name(const std::string& name) {
    if (name == "Exponential") return Family::kExponential;
    if (name == "Uniform") return Family::kUniform;
    if (name == "LogNormal") return Family::kLogNormal;
    if (name == "ParetoShifted") return Family::kParetoShifted;
    throw std::invalid_argument(
        "unknown family '" + name +
        "'; valid: Exponential, Uniform, LogNormal, ParetoShifted");
}

DistributionSpec make_distribution(Family family, std::span<const double> params) {
    DistributionSpec spec;
    spec.family = family;
    spec.params.assign(params.begin(), params.end());

    switch (family) {
        case Family::kExponential: {
            require_param_count(family, params, 1);
            const double rate = params[0];
            if (!(rate > 0.0)) reject("Exponential rate must be > 0");
            spec.mu = 1.0 / rate;
            spec.sigma = 1.0 / rate;
            break;
        }
        case Family::kUniform: {
            require_param_count(family, params, 2);
            const double a = params[0], b = params[1];
            // a == 0 is admissible: draws live in the open interval (a,b).
            if (!(a >= 0.0)) reject("Uniform lower endpoint must be >= 0");
            if (!(b > a)) reject("Uniform requires a < b");
            spec.mu = 0.5 * (a + b);
            spec.sigma = (b - a) / std::sqrt(12.0);
            break;
        }
        case Family::kLogNormal: {
            require_param_count(family, params, 2);
            const double location = params[0], scale = params[1];
            if (!std::isfinite(location)) reject("LogNormal location must be finite");
            if (!(scale > 0.0)) reject("LogNormal scale must be > 0");
            spec.mu = std::exp(location + 0.5 * scale * scale);
            spec.sigma = spec.mu * std::sqrt(std::expm1(scale * scale));
            break;
        }
        case Family::kParetoShifted: {
            require_param_count(family, params, 2);
            const double alpha = params[0], scale = params[1];
            if (!(scale > 0.0)) reject("ParetoShifted scale must be > 0");
            if (!(alpha > 2.0)) {
                reject("ParetoShifted shape alpha must be > 2: "
                       "alpha <= 2 gives infinite variance");
            }
            spec.mu = scale / (alpha - 1.0);
            spec.sigma = spec.mu * std::sqrt(alpha / (alpha - 2.0));
            break;
        }
    }

    spec.gamma = spec.mu / spec.sigma;
    return spec;
}

DistributionSpec make_distribution(const std::string& family,
                                   std::span<const double> params) {
    return make_distribution(family_from_name(family), params);
}

double sample_one(const DistributionSpec& spec, SeedStream& stream) {
    switch (spec.family) {
        case Family::kExponential:
            return -std::log(stream.next_uniform()) / spec.params[0];
        case Family::kUniform: {
            const double a = spec.params[0], b = spec.params[1];
            return a + (b - a) * stream.next_uniform();
        }
        case Family::kLogNormal:
            return std::exp(spec.params[0] + spec.params[1] * stream.next_gaussian());
        case Family::kParetoShifted: {
            const double alpha = spec.params[0], scale = spec.params[1];
            return scale * (std::pow(stream.next_uniform(), -1.0 / alpha) - 1.0);
        }
    }
    throw std::logic_error("sample_one: unreachable family");
}

std::vector<double> sample_iid(const DistributionSpec& spec, std::int64_t n,
                               SeedStream& stream) {
    if (n < 1) throw std::invalid_argument("sample_iid: n >= 1 required");
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (auto& x : xs) x = sample_one(spec, stream);
    return xs;
}

SamplePath partial_sums(std::span<const double> xs) {
    SamplePath path;
    path.values.resize(xs.size());
    CompensatedSum acc;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0)) {
            std::ostringstream os;
            os << "partial_sums: entry " << (i + 1) << " is not positive ("
               << xs[i] << ")";
            throw std::invalid_argument(os.str());
        }
        acc.add(xs[i]);
        path.values[i] = acc.value();
    }
    return path;
}

}  // namespace prodsum
