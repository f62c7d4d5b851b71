// Wiener path simulation on uniform grids and the singular path functional
// t -> int_0^t w(x)/x dx, evaluated exactly on piecewise-linear
// interpolants. Also the covariance of the limit process.

#ifndef PRODSUM_WIENER_HPP
#define PRODSUM_WIENER_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "prodsum/grid_function.hpp"
#include "prodsum/seed_stream.hpp"

namespace prodsum {

/// Standard Wiener path on [0, horizon]: values[0] = 0, independent
/// Gaussian increments of variance horizon/m, PiecewiseLinear.
GridFunction simulate_wiener(std::int64_t m, double horizon, SeedStream& stream);

/// Same path construction from an arbitrary N(0,1) source; the stream
/// overload forwards here. Lets tests drive degenerate (all-zero) noise.
GridFunction simulate_wiener(std::int64_t m, double horizon,
                             const std::function<double()>& gaussian_source);

/// int_0^t w(x)/x dx for piecewise-linear w with w(0) = 0, t in
/// [0, w.horizon]. Per segment w = a + b*x the integral is
/// a*ln(x_hi/x_lo) + b*(x_hi - x_lo); the first segment has a = 0, so the
/// 1/x singularity at zero is removable and contributes exactly b*x_1.
/// Step-interpreted inputs are rejected (convert them first).
double log_integral_functional(const GridFunction& w, double t);

/// H_eps: int_eps^t w(x)/x dx for t > eps, 0 for t <= eps. Requires
/// 0 < eps < 1. Both interpretations are accepted since the integrand is
/// regular away from zero.
double truncated_functional(const GridFunction& w, double eps, double t);

/// Covariance of the limit process Y(t) = int_0^t W(x)/x dx:
/// E[Y(s)Y(t)] = 2*min(s,t) + min(s,t)*ln(max(s,t)/min(s,t)).
/// Arguments must lie in [0,1]. The quadrature oracle for this closed form
/// is min_over_xy_box_quadrature.
double limit_covariance(double s, double t);

/// Precomputed log-ratio tables for evaluating log_integral_functional on
/// many paths that share one grid. eval() agrees with the one-shot
/// function to rounding and costs no log calls per path.
class LogIntegralEvaluator {
public:
    LogIntegralEvaluator(std::int64_t m, double horizon);

    /// Functional at t for each t of ts (each in [0, horizon]); w must be
    /// piecewise linear on the constructor's grid with w(0) = 0.
    std::vector<double> eval(const GridFunction& w,
                             const std::vector<double>& ts) const;

private:
    std::int64_t m_;
    double horizon_;
    std::vector<double> seg_log_;   // ln((i+1)/i) per segment lower node i
    std::vector<double> seg_comp_;  // 1 - i*ln((i+1)/i)
};

}  // namespace prodsum

#endif  // PRODSUM_WIENER_HPP
