#include "prodsum/engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "prodsum/accum.hpp"
#include "prodsum/statistic.hpp"
#include "prodsum/wiener.hpp"

namespace prodsum {

std::string kind_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::kClt: return "clt";
        case ExperimentKind::kFclt: return "fclt";
        case ExperimentKind::kLil: return "lil";
        case ExperimentKind::kExtremal: return "extremal";
        case ExperimentKind::kCheck: return "check";
    }
    return "?";
}

ExperimentKind kind_from_name(const std::string& name) {
    if (name == "clt") return ExperimentKind::kClt;
    if (name == "fclt") return ExperimentKind::kFclt;
    if (name == "lil") return ExperimentKind::kLil;
    if (name == "extremal") return ExperimentKind::kExtremal;
    if (name == "check") return ExperimentKind::kCheck;
    throw std::invalid_argument("unknown kind '" + name +
                                "'; valid: clt, fclt, lil, extremal, check");
}

void ExperimentConfig::validate() const {
    if (n < 1) throw std::invalid_argument("config: n >= 1 required");
    if (R < 1) throw std::invalid_argument("config: R >= 1 required");
    if (m < 1) throw std::invalid_argument("config: m >= 1 required");
    if (workers_hint < 1) throw std::invalid_argument("config: workers >= 1 required");
    for (double t : t_grid) {
        if (!(t >= 0.0 && t <= 1.0)) {
            throw std::invalid_argument("config: t_grid entries must lie in [0,1]");
        }
    }
    if (lil_n0 < 3) throw std::invalid_argument("config: lil_n0 >= 3 required");
    if (!(lil_rho > 1.0)) throw std::invalid_argument("config: lil_rho > 1 required");
}

SummaryStats summarize(std::span<const double> samples) {
    if (samples.empty()) throw std::invalid_argument("summarize: empty sample");
    SummaryStats s;
    s.count = static_cast<std::int64_t>(samples.size());

    CompensatedSum sum;
    for (double x : samples) sum.add(x);
    s.mean = sum.value() / static_cast<double>(s.count);

    if (s.count > 1) {
        CompensatedSum sq;
        for (double x : samples) sq.add((x - s.mean) * (x - s.mean));
        s.variance = sq.value() / static_cast<double>(s.count - 1);
    }

    // Type-7 quantiles (linear interpolation between order statistics).
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t q = 0; q < 7; ++q) {
        const double pos = kQuantileLevels[q] * static_cast<double>(s.count - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
        const double frac = pos - static_cast<double>(lo);
        s.quantiles[q] = sorted[lo] + frac * (sorted[hi] - sorted[lo]);
    }
    return s;
}

double ks_distance(std::span<const double> samples,
                   const std::function<double(double)>& target_cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_distance: empty sample");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double r = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double cdf = target_cdf(sorted[i]);
        const double above = (static_cast<double>(i) + 1.0) / r - cdf;
        const double below = cdf - static_cast<double>(i) / r;
        d = std::max({d, above, below});
    }
    return d;
}

double normal_cdf(double x, double mean, double sd) {
    return 0.5 * std::erfc(-(x - mean) / (sd * std::sqrt(2.0)));
}

void parallel_replications(std::int64_t R, int workers,
                           const std::function<void(std::int64_t)>& fn) {
    if (R < 1) throw std::invalid_argument("parallel_replications: R >= 1 required");
    workers = std::max(1, std::min<int>(workers, static_cast<int>(R)));

    if (workers == 1) {
        for (std::int64_t r = 0; r < R; ++r) fn(r);
        return;
    }

    std::atomic<std::int64_t> first_failure{R};
    std::mutex error_mutex;
    std::string error_message;

    const auto run_block = [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t r = begin; r < end; ++r) {
            if (r > first_failure.load(std::memory_order_relaxed)) return;
            try {
                fn(r);
            } catch (const std::exception& e) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (r < first_failure.load()) {
                    first_failure.store(r);
                    error_message = e.what();
                }
                return;
            }
        }
    };

    // Contiguous index blocks; assembly order is fixed by the slot index,
    // so scheduling cannot influence the output.
    std::vector<std::thread> pool;
    const std::int64_t block = (R + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::int64_t begin = static_cast<std::int64_t>(w) * block;
        const std::int64_t end = std::min(R, begin + block);
        if (begin >= end) break;
        pool.emplace_back(run_block, begin, end);
    }
    for (auto& th : pool) th.join();

    if (first_failure.load() < R) {
        std::ostringstream os;
        os << "replication " << first_failure.load() << " failed: " << error_message;
        throw std::runtime_error(os.str());
    }
}

namespace {

ExperimentResult run_prod_experiment(const ExperimentConfig& config,
                                     std::vector<double> times) {
    const auto start = std::chrono::steady_clock::now();

    const std::size_t nt = times.size();
    ExperimentResult result;
    result.config = config;
    result.t_grid = times;
    result.samples.assign(nt, std::vector<double>(static_cast<std::size_t>(config.R)));

    parallel_replications(config.R, config.workers_hint, [&](std::int64_t r) {
        SeedStream stream = derive_stream(config.master_seed,
                                          static_cast<std::uint64_t>(r));
        const std::vector<double> xs = sample_iid(config.spec, config.n, stream);
        const SamplePath path = partial_sums(xs);
        for (std::size_t ti = 0; ti < nt; ++ti) {
            result.samples[ti][static_cast<std::size_t>(r)] =
                log_prod_at(path, config.spec, times[ti]);
        }
    });

    result.summary.reserve(nt);
    result.ks.reserve(nt);
    for (std::size_t ti = 0; ti < nt; ++ti) {
        result.summary.push_back(summarize(result.samples[ti]));
        const double sd = std::sqrt(limit_covariance(times[ti], times[ti]));
        if (sd > 0.0) {
            result.ks.push_back(ks_distance(
                result.samples[ti],
                [sd](double x) { return normal_cdf(x, 0.0, sd); }));
        } else {
            // Degenerate marginal at t = 0: the limit is the point mass at 0.
            double d = 0.0;
            for (double x : result.samples[ti]) d = std::max(d, x == 0.0 ? 0.0 : 1.0);
            result.ks.push_back(d);
        }
    }

    // Empirical cross-covariance between evaluation times.
    if (nt > 1 && config.R > 1) {
        result.cross_cov.assign(nt, std::vector<double>(nt, 0.0));
        for (std::size_t a = 0; a < nt; ++a) {
            for (std::size_t b = a; b < nt; ++b) {
                CompensatedSum acc;
                const double ma = result.summary[a].mean;
                const double mb = result.summary[b].mean;
                for (std::int64_t r = 0; r < config.R; ++r) {
                    acc.add((result.samples[a][static_cast<std::size_t>(r)] - ma) *
                            (result.samples[b][static_cast<std::size_t>(r)] - mb));
                }
                const double cov = acc.value() / static_cast<double>(config.R - 1);
                result.cross_cov[a][b] = cov;
                result.cross_cov[b][a] = cov;
            }
        }
    }

    result.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return result;
}

}  // namespace

ExperimentResult run_clt(const ExperimentConfig& config) {
    config.validate();
    if (config.kind != ExperimentKind::kClt) {
        throw std::invalid_argument("run_clt: config.kind must be clt");
    }
    return run_prod_experiment(config, {1.0});
}

ExperimentResult run_fclt(const ExperimentConfig& config) {
    config.validate();
    if (config.kind != ExperimentKind::kFclt) {
        throw std::invalid_argument("run_fclt: config.kind must be fclt");
    }
    if (config.t_grid.empty()) {
        throw std::invalid_argument("run_fclt: t_grid must be nonempty");
    }
    return run_prod_experiment(config, config.t_grid);
}

}  // namespace prodsum
