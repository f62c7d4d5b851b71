#include "prodsum/cli.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <set>

#include "prodsum/extremal.hpp"
#include "prodsum/grid_function.hpp"
#include "prodsum/io.hpp"
#include "prodsum/lil.hpp"
#include "prodsum/quadrature.hpp"
#include "prodsum/version.hpp"
#include "prodsum/wiener.hpp"

namespace prodsum {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::set<std::string> kKnownKeys = {
    "kind",           "family", "params",  "n",   "R",
    "m",              "t_grid", "seed",    "workers", "out",
    "retain_samples", "lil_n0", "lil_rho"};

[[noreturn]] void config_fail(const std::string& what) { throw ConfigError(what); }

std::uint64_t entropy_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

}  // namespace

ExperimentConfig parse_config(const std::string& path, const std::string& kind,
                              const CliOverrides& overrides) {
    std::ifstream in(path);
    if (!in) config_fail("cannot open config file: " + path);

    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        config_fail("config is not valid JSON: " + std::string(e.what()));
    }
    if (!doc.is_object()) config_fail("config root must be an object");

    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (!kKnownKeys.count(key)) config_fail("unknown config key '" + key + "'");
    }

    ExperimentConfig config;
    try {
        std::string kind_str = kind;
        if (doc.contains("kind")) {
            const auto file_kind = doc["kind"].get<std::string>();
            if (!kind_str.empty() && kind_str != file_kind) {
                config_fail("config kind '" + file_kind +
                            "' does not match subcommand '" + kind_str + "'");
            }
            kind_str = file_kind;
        }
        if (kind_str.empty()) config_fail("missing 'kind' (and no subcommand given)");
        config.kind = kind_from_name(kind_str);

        std::string family = doc.value("family", std::string("Exponential"));
        std::vector<double> params = doc.value("params", std::vector<double>{1.0});
        config.spec = make_distribution(family, params);

        config.n = doc.value("n", config.n);
        config.R = doc.value("R", config.R);
        config.m = doc.value("m", config.m);
        config.t_grid = doc.value("t_grid", config.t_grid);
        config.workers_hint = doc.value("workers", config.workers_hint);
        config.output_path = doc.value("out", config.output_path);
        config.retain_samples = doc.value("retain_samples", config.retain_samples);
        config.lil_n0 = doc.value("lil_n0", config.lil_n0);
        config.lil_rho = doc.value("lil_rho", config.lil_rho);

        if (doc.contains("seed")) {
            config.master_seed = doc["seed"].get<std::uint64_t>();
        } else {
            config.master_seed = entropy_seed();
            config.seed_from_entropy = true;
        }
    } catch (const json::exception& e) {
        config_fail("config type error: " + std::string(e.what()));
    }

    if (overrides.seed) {
        config.master_seed = *overrides.seed;
        config.seed_from_entropy = false;
    }
    if (overrides.out) config.output_path = *overrides.out;
    if (overrides.workers) config.workers_hint = *overrides.workers;
    if (overrides.retain_samples) config.retain_samples = *overrides.retain_samples;

    try {
        config.validate();
    } catch (const std::invalid_argument& e) {
        config_fail(e.what());
    }
    return config;
}

namespace {

json config_to_json(const ExperimentConfig& config) {
    json j;
    j["kind"] = kind_name(config.kind);
    j["family"] = family_name(config.spec.family);
    j["params"] = config.spec.params;
    j["n"] = config.n;
    j["R"] = config.R;
    j["m"] = config.m;
    j["t_grid"] = config.t_grid;
    j["seed"] = config.master_seed;
    j["seed_from_entropy"] = config.seed_from_entropy;
    j["workers"] = config.workers_hint;
    j["out"] = config.output_path;
    j["retain_samples"] = config.retain_samples;
    j["lil_n0"] = config.lil_n0;
    j["lil_rho"] = config.lil_rho;
    return j;
}

void write_metadata(const fs::path& dir, const ExperimentConfig& config,
                    double wall_ms, const json& extras) {
    json meta;
    meta["config"] = config_to_json(config);
    meta["master_seed"] = config.master_seed;
    meta["version"] = kVersion;
    meta["wall_clock_ms"] = wall_ms;
    meta["moments"] = {{"mu", config.spec.mu},
                       {"sigma", config.spec.sigma},
                       {"gamma", config.spec.gamma}};
    if (!extras.is_null()) meta["results"] = extras;
    std::ofstream out(dir / "metadata.json");
    if (!out) throw std::runtime_error("cannot write metadata.json");
    out << meta.dump(2) << '\n';
}

json summary_to_json(const SummaryStats& s) {
    json j;
    j["count"] = s.count;
    j["mean"] = s.mean;
    if (s.variance) {
        j["variance"] = *s.variance;
    } else {
        j["variance"] = nullptr;  // not available for a single replication
    }
    json q;
    for (std::size_t i = 0; i < 7; ++i) {
        q[std::to_string(static_cast<int>(kQuantileLevels[i] * 100))] = s.quantiles[i];
    }
    j["quantiles"] = q;
    return j;
}

void run_prod_kind(const ExperimentConfig& config, const fs::path& dir,
                   std::ostream& log) {
    const ExperimentResult result = config.kind == ExperimentKind::kClt
                                        ? run_clt(config)
                                        : run_fclt(config);

    std::ofstream csv(dir / "samples.csv");
    if (!csv) throw std::runtime_error("cannot write samples.csv");
    if (config.kind == ExperimentKind::kClt) {
        csv << "replication,value\n";
        if (config.retain_samples) {
            for (std::int64_t r = 0; r < config.R; ++r) {
                csv << r << ',' << format_double(result.samples[0][static_cast<std::size_t>(r)])
                    << '\n';
            }
        }
    } else {
        csv << "replication,t,value\n";
        if (config.retain_samples) {
            for (std::int64_t r = 0; r < config.R; ++r) {
                for (std::size_t ti = 0; ti < result.t_grid.size(); ++ti) {
                    csv << r << ',' << format_double(result.t_grid[ti]) << ','
                        << format_double(result.samples[ti][static_cast<std::size_t>(r)])
                        << '\n';
                }
            }
        }
    }

    json extras;
    extras["t_grid"] = result.t_grid;
    extras["ks"] = result.ks;
    json summaries = json::array();
    for (const auto& s : result.summary) summaries.push_back(summary_to_json(s));
    extras["summary"] = summaries;
    if (!result.cross_cov.empty()) extras["cross_cov"] = result.cross_cov;
    write_metadata(dir, config, result.wall_ms, extras);

    for (std::size_t ti = 0; ti < result.t_grid.size(); ++ti) {
        log << "t=" << format_double(result.t_grid[ti])
            << " mean=" << format_double(result.summary[ti].mean)
            << " ks=" << format_double(result.ks[ti]) << '\n';
    }
}

void run_lil_kind(const ExperimentConfig& config, const fs::path& dir,
                  std::ostream& log) {
    const auto start = std::chrono::steady_clock::now();
    LilConfig lil;
    lil.spec = config.spec;
    lil.n0 = config.lil_n0;
    lil.rho = config.lil_rho;
    lil.n_max = config.n;
    lil.master_seed = config.master_seed;
    const std::vector<LilCheckpoint> track = run_lil(lil);

    std::ofstream csv(dir / "samples.csv");
    if (!csv) throw std::runtime_error("cannot write samples.csv");
    csv << "n,value,running_max\n";
    for (const auto& cp : track) {
        csv << cp.n << ',' << format_double(cp.value) << ','
            << format_double(cp.running_max) << '\n';
    }

    const double wall_ms = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    json extras;
    extras["checkpoints"] = track.size();
    extras["final_value"] = track.back().value;
    extras["final_running_max"] = track.back().running_max;
    write_metadata(dir, config, wall_ms, extras);
    log << "lil: " << track.size() << " checkpoints, running_max="
        << format_double(track.back().running_max) << '\n';
}

void run_extremal_kind(const ExperimentConfig& config, const fs::path& dir,
                       std::ostream& log) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<double> ts = config.t_grid;
    if (ts.empty()) {
        for (int i = 1; i <= 20; ++i) ts.push_back(static_cast<double>(i) / 20.0);
    }

    std::ofstream csv(dir / "samples.csv");
    if (!csv) throw std::runtime_error("cannot write samples.csv");
    csv << "t,m,value,closed_form,gap\n";
    double worst_gap = 0.0;
    for (double t : ts) {
        if (!(t > 0.0)) continue;  // the functional is empty at t = 0
        const MaximizeResult r = maximize_functional(t, config.m);
        const double closed = std::sqrt(2.0 * t);
        const double gap = std::fabs(r.value - closed);
        worst_gap = std::max(worst_gap, gap);
        csv << format_double(t) << ',' << config.m << ',' << format_double(r.value)
            << ',' << format_double(closed) << ',' << format_double(gap) << '\n';
    }

    const double wall_ms = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    json extras;
    extras["worst_gap"] = worst_gap;
    write_metadata(dir, config, wall_ms, extras);
    log << "extremal: worst |value - sqrt(2t)| = " << format_double(worst_gap) << '\n';
}

}  // namespace

int run_check(std::ostream& out) {
    bool all_ok = true;
    const auto report = [&](const std::string& name, bool ok, double got,
                            double want, double tol) {
        all_ok = all_ok && ok;
        out << (ok ? "[PASS] " : "[FAIL] ") << name << ": got "
            << format_double(got) << ", want " << format_double(want)
            << " (tol " << format_double(tol) << ")\n";
    };

    const double quad = min_over_xy_box_quadrature(1.0, 1.0, 1e-9);
    report("covariance quadrature identity", std::fabs(quad - 2.0) <= 1e-6, quad,
           2.0, 1e-6);

    const std::int64_t m = 1 << 14;
    const MaximizeResult opt = maximize_functional(1.0, m);
    const double root2 = std::sqrt(2.0);
    report("optimizer value at t=1", std::fabs(opt.value - root2) <= 1e-3,
           opt.value, root2, 1e-3);

    const GridFunction f = opt.argmax.reconstruct();
    double sup = 0.0;
    for (std::int64_t i = 1; i <= f.m; ++i) {
        const double u = f.grid_point(i);
        const double target = (u - u * std::log(u)) / root2;
        sup = std::max(sup, std::fabs(f.values[static_cast<std::size_t>(i)] - target));
    }
    report("extremal function sup-distance", sup <= 1e-2, sup, 0.0, 1e-2);

    for (double t : {0.25, 0.5}) {
        const MaximizeResult r = maximize_functional(t, m);
        const double closed = std::sqrt(2.0 * t);
        report("optimizer value at t=" + format_double(t),
               std::fabs(r.value - closed) <= 1e-3, r.value, closed, 1e-3);
    }

    return all_ok ? kExitOk : kExitCheckFailed;
}

int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
    if (config.kind == ExperimentKind::kCheck) {
        return run_check(out);
    }
    try {
        if (config.output_path.empty()) {
            err << "error: no output directory (use --out or config 'out')\n";
            return kExitConfig;
        }
        const fs::path dir(config.output_path);
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec || !fs::is_directory(dir)) {
            err << "error: cannot create output directory '" << config.output_path
                << "'\n";
            return kExitRuntime;
        }
        if (config.seed_from_entropy) {
            out << "seed generated from entropy: " << config.master_seed << '\n';
        }

        switch (config.kind) {
            case ExperimentKind::kClt:
            case ExperimentKind::kFclt:
                run_prod_kind(config, dir, out);
                break;
            case ExperimentKind::kLil:
                run_lil_kind(config, dir, out);
                break;
            case ExperimentKind::kExtremal:
                run_extremal_kind(config, dir, out);
                break;
            case ExperimentKind::kCheck:
                break;  // handled above
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

}  // namespace prodsum
