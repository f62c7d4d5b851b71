#include "prodsum/statistic.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "prodsum/accum.hpp"
#include "prodsum/wiener.hpp"

namespace prodsum {

namespace {

void check_spec(const DistributionSpec& spec) {
    if (!(spec.mu > 0.0) || !std::isfinite(spec.mu) || !(spec.gamma > 0.0) ||
        !std::isfinite(spec.gamma)) {
        throw std::invalid_argument("statistic: spec.mu and spec.gamma must be finite positive");
    }
}

// ln(S_k/(k*mu)) pushed into the accumulator for k = 1..upto.
// The denominator is double(k)*mu so the synthetic path S_k = k*mu maps to
// a ratio of exactly 1 and a term of exactly 0.
void accumulate_log_ratios(const SamplePath& path, const DistributionSpec& spec,
                           std::int64_t upto, CompensatedSum& acc) {
    for (std::int64_t k = 1; k <= upto; ++k) {
        const double s_k = path.values[static_cast<std::size_t>(k) - 1];
        if (!(s_k > 0.0)) {
            std::ostringstream os;
            os << "log-product statistic: S_" << k << " is not positive (" << s_k << ")";
            throw std::invalid_argument(os.str());
        }
        acc.add(std::log(s_k / (static_cast<double>(k) * spec.mu)));
    }
}

// [n*t_i] for the grid point t_i = i/m, exactly, as floor(n*i/m).
std::int64_t cutoff_at_grid(std::int64_t n, std::int64_t i, std::int64_t m) {
    return (n * i) / m;
}

// [n*t] for arbitrary t, snapping up when t*n sits within one part in 1e9
// of the next integer (guards against decimal t like 0.3 rounding down).
std::int64_t cutoff_at(std::int64_t n, double t) {
    const double y = static_cast<double>(n) * t;
    auto k = static_cast<std::int64_t>(std::floor(y));
    if ((static_cast<double>(k) + 1.0) - y <= 1e-9 * std::max(1.0, y)) ++k;
    if (k > n) k = n;
    return k;
}

}  // namespace

double log_prod_statistic(const SamplePath& path, const DistributionSpec& spec) {
    check_spec(spec);
    const std::int64_t n = path.n();
    if (n < 1) throw std::invalid_argument("log_prod_statistic: empty path");
    CompensatedSum acc;
    accumulate_log_ratios(path, spec, n, acc);
    return spec.gamma / std::sqrt(static_cast<double>(n)) * acc.value();
}

double log_prod_at(const SamplePath& path, const DistributionSpec& spec, double t) {
    check_spec(spec);
    const std::int64_t n = path.n();
    if (n < 1) throw std::invalid_argument("log_prod_at: empty path");
    if (!(t >= 0.0 && t <= 1.0)) {
        throw std::invalid_argument("log_prod_at: t outside [0,1]");
    }
    CompensatedSum acc;
    accumulate_log_ratios(path, spec, cutoff_at(n, t), acc);
    return spec.gamma / std::sqrt(static_cast<double>(n)) * acc.value();
}

GridFunction log_prod_path(const SamplePath& path, const DistributionSpec& spec,
                           std::int64_t m) {
    check_spec(spec);
    const std::int64_t n = path.n();
    if (n < 1) throw std::invalid_argument("log_prod_path: empty path");
    auto g = make_grid_function(m, 1.0, GridInterpretation::kCadlagStep);
    const double scale = spec.gamma / std::sqrt(static_cast<double>(n));
    CompensatedSum acc;
    std::int64_t done = 0;
    for (std::int64_t i = 0; i <= m; ++i) {
        const std::int64_t upto = cutoff_at_grid(n, i, m);
        for (std::int64_t k = done + 1; k <= upto; ++k) {
            const double s_k = path.values[static_cast<std::size_t>(k) - 1];
            if (!(s_k > 0.0)) {
                std::ostringstream os;
                os << "log_prod_path: S_" << k << " is not positive (" << s_k << ")";
                throw std::invalid_argument(os.str());
            }
            acc.add(std::log(s_k / (static_cast<double>(k) * spec.mu)));
        }
        done = upto;
        g.values[static_cast<std::size_t>(i)] = scale * acc.value();
    }
    return g;
}

GridFunction partial_sum_process(const SamplePath& path,
                                 const DistributionSpec& spec, std::int64_t m) {
    check_spec(spec);
    if (!(spec.sigma > 0.0) || !std::isfinite(spec.sigma)) {
        throw std::invalid_argument("partial_sum_process: spec.sigma must be finite positive");
    }
    const std::int64_t n = path.n();
    if (n < 1) throw std::invalid_argument("partial_sum_process: empty path");
    auto g = make_grid_function(m, 1.0, GridInterpretation::kCadlagStep);
    const double denom = spec.sigma * std::sqrt(static_cast<double>(n));
    for (std::int64_t i = 0; i <= m; ++i) {
        const std::int64_t k = cutoff_at_grid(n, i, m);
        const double s_k = (k == 0) ? 0.0 : path.values[static_cast<std::size_t>(k) - 1];
        g.values[static_cast<std::size_t>(i)] =
            (s_k - static_cast<double>(k) * spec.mu) / denom;
    }
    return g;
}

double theta_remainder(double x) {
    if (!(x > -1.0)) {
        throw std::invalid_argument("theta_remainder: x > -1 required");
    }
    if (x == 0.0) return 0.0;
    if (std::fabs(x) < 1e-4) {
        // (ln(1+x) - x)/x = -x/2 + x^2/3 - x^3/4 + x^4/5 - ...
        return x * (-1.0 / 2.0 + x * (1.0 / 3.0 + x * (-1.0 / 4.0 + x * (1.0 / 5.0))));
    }
    return (std::log1p(x) - x) / x;
}

double l1_deviation(const SamplePath& path, const DistributionSpec& spec) {
    check_spec(spec);
    const std::int64_t n = path.n();
    if (n < 1) throw std::invalid_argument("l1_deviation: empty path");
    const double s_n = path.values.back();
    return std::fabs(s_n - static_cast<double>(n) * spec.mu) /
           std::sqrt(static_cast<double>(n));
}

MonteCarloEstimate l1_condition_estimate(const DistributionSpec& spec,
                                         std::int64_t n, std::int64_t R,
                                         SeedStream& stream) {
    check_spec(spec);
    if (n < 1) throw std::invalid_argument("l1_condition_estimate: n >= 1 required");
    if (R < 1) throw std::invalid_argument("l1_condition_estimate: R >= 1 required");
    const double root_n = std::sqrt(static_cast<double>(n));
    CompensatedSum sum, sum_sq;
    for (std::int64_t r = 0; r < R; ++r) {
        CompensatedSum s;
        for (std::int64_t k = 0; k < n; ++k) s.add(sample_one(spec, stream));
        const double dev =
            std::fabs(s.value() - static_cast<double>(n) * spec.mu) / root_n;
        sum.add(dev);
        sum_sq.add(dev * dev);
    }
    const double mean = sum.value() / static_cast<double>(R);
    double se = 0.0;
    if (R > 1) {
        const double var =
            (sum_sq.value() - static_cast<double>(R) * mean * mean) /
            static_cast<double>(R - 1);
        se = std::sqrt(std::max(var, 0.0) / static_cast<double>(R));
    }
    return {mean, se, R};
}

CoupledPath coupled_path(const DistributionSpec& spec, const GridFunction& w,
                         std::int64_t n) {
    check_spec(spec);
    w.validate();
    if (n < 1) throw std::invalid_argument("coupled_path: n >= 1 required");
    if (w.horizon != static_cast<double>(n)) {
        throw std::invalid_argument("coupled_path: w must be simulated on horizon n");
    }
    if (w.m < n || w.m % n != 0) {
        throw std::invalid_argument(
            "coupled_path: resolution must be a multiple of n so integer times "
            "are grid nodes");
    }
    const std::int64_t stride = w.m / n;

    CoupledPath out;
    out.path.values.resize(static_cast<std::size_t>(n));
    for (std::int64_t k = 1; k <= n; ++k) {
        const double base = static_cast<double>(k) * spec.mu;
        double s_k = base + spec.sigma * w.values[static_cast<std::size_t>(k * stride)];
        if (s_k < 0.5 * base) {
            s_k = 0.5 * base;
            ++out.clipped;
        }
        out.path.values[static_cast<std::size_t>(k) - 1] = s_k;
    }
    out.clip_warning = static_cast<double>(out.clipped) > 0.01 * static_cast<double>(n);
    return out;
}

double coupling_discrepancy(const DistributionSpec& spec, const GridFunction& w,
                            std::int64_t n) {
    const CoupledPath coupled = coupled_path(spec, w, n);
    CompensatedSum acc;
    accumulate_log_ratios(coupled.path, spec, n, acc);
    const double integral = log_integral_functional(w, static_cast<double>(n));
    return std::fabs(acc.value() - (spec.sigma / spec.mu) * integral) /
           std::sqrt(static_cast<double>(n));
}

}  // namespace prodsum
