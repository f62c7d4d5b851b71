#include "prodsum/lil.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "prodsum/accum.hpp"
#include "prodsum/seed_stream.hpp"

namespace prodsum {

namespace {

double lil_scale(const DistributionSpec& spec, std::int64_t n) {
    const double nn = static_cast<double>(n);
    return spec.gamma / std::sqrt(2.0 * nn * std::log(std::log(nn)));
}

double log_ratio(const SamplePath& path, const DistributionSpec& spec,
                 std::int64_t k) {
    const double s_k = path.values[static_cast<std::size_t>(k) - 1];
    if (!(s_k > 0.0)) {
        std::ostringstream os;
        os << "lil: S_" << k << " is not positive (" << s_k << ")";
        throw std::invalid_argument(os.str());
    }
    return std::log(s_k / (static_cast<double>(k) * spec.mu));
}

}  // namespace

double lil_normalized(const SamplePath& path, const DistributionSpec& spec) {
    const std::int64_t n = path.n();
    if (n < 3) {
        throw std::invalid_argument("lil_normalized: n >= 3 required (lnln n)");
    }
    CompensatedSum acc;
    for (std::int64_t k = 1; k <= n; ++k) acc.add(log_ratio(path, spec, k));
    return lil_scale(spec, n) * acc.value();
}

std::vector<LilCheckpoint> run_lil(const LilConfig& config) {
    if (config.n0 < 3) throw std::invalid_argument("run_lil: n0 >= 3 required");
    if (!(config.rho > 1.0)) throw std::invalid_argument("run_lil: rho > 1 required");
    if (config.n_max < config.n0) {
        throw std::invalid_argument("run_lil: n_max >= n0 required");
    }

    // Geometric checkpoints, deduplicated, with n_max as the final stop.
    std::vector<std::int64_t> checkpoints;
    double target = static_cast<double>(config.n0);
    while (true) {
        const auto n_j = static_cast<std::int64_t>(std::ceil(target));
        if (n_j > config.n_max) break;
        if (checkpoints.empty() || n_j > checkpoints.back()) {
            checkpoints.push_back(n_j);
        }
        target *= config.rho;
    }
    if (checkpoints.back() != config.n_max) checkpoints.push_back(config.n_max);

    SeedStream stream = derive_stream(config.master_seed, 0);
    std::vector<LilCheckpoint> out;
    out.reserve(checkpoints.size());

    CompensatedSum partial_sum;  // S_k
    CompensatedSum log_sum;      // sum of ln(S_k/(k mu))
    double running_max = -std::numeric_limits<double>::infinity();
    std::int64_t k = 0;

    for (const std::int64_t stop : checkpoints) {
        while (k < stop) {
            ++k;
            partial_sum.add(sample_one(config.spec, stream));
            const double s_k = partial_sum.value();
            if (!(s_k > 0.0)) {
                std::ostringstream os;
                os << "run_lil: S_" << k << " is not positive";
                throw std::runtime_error(os.str());
            }
            log_sum.add(std::log(s_k / (static_cast<double>(k) * config.spec.mu)));
        }
        const double value = lil_scale(config.spec, stop) * log_sum.value();
        running_max = std::max(running_max, value);
        out.push_back({stop, value, running_max});
    }
    return out;
}

GridFunction strassen_scaled_path(const SamplePath& path,
                                  const DistributionSpec& spec, std::int64_t m) {
    const std::int64_t n = path.n();
    if (n < 3) {
        throw std::invalid_argument("strassen_scaled_path: n >= 3 required");
    }
    auto g = make_grid_function(m, 1.0, GridInterpretation::kCadlagStep);
    const double scale = lil_scale(spec, n);
    CompensatedSum acc;
    std::int64_t done = 0;
    for (std::int64_t i = 0; i <= m; ++i) {
        const std::int64_t upto = (n * i) / m;
        for (std::int64_t k = done + 1; k <= upto; ++k) {
            acc.add(log_ratio(path, spec, k));
        }
        done = upto;
        g.values[static_cast<std::size_t>(i)] = scale * acc.value();
    }
    return g;
}

}  // namespace prodsum
