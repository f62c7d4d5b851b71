#include "prodsum/wiener.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace prodsum {

namespace {

// int_lo^hi w(x)/x dx over one linear segment [seg_lo, seg_hi] of the cell
// [x_i, x_i + dx]. a is the intercept of the segment's chord; when the
// cell starts at zero the precondition w(0) = 0 forces a = 0 and the
// integrand is the constant slope b.
double linear_piece(double w0, double w1, double x_i, double dx, double seg_lo,
                    double seg_hi) {
    const double b = (w1 - w0) / dx;
    if (seg_lo == 0.0) {
        return b * seg_hi;
    }
    const double a = w0 - b * x_i;
    return a * std::log(seg_hi / seg_lo) + b * (seg_hi - seg_lo);
}

// int_lo^hi w(x)/x dx for piecewise-linear w; 0 <= lo <= hi <= horizon,
// and w(0) = 0 whenever lo == 0.
double pl_log_integral(const GridFunction& w, double lo, double hi) {
    if (hi <= lo) return 0.0;
    const double dx = w.horizon / static_cast<double>(w.m);
    auto first = static_cast<std::int64_t>(std::floor(lo / dx));
    first = std::clamp<std::int64_t>(first, 0, w.m - 1);

    double total = 0.0;
    for (std::int64_t i = first; i < w.m; ++i) {
        const double x_i = w.grid_point(i);
        const double x_next = w.grid_point(i + 1);
        if (x_i >= hi) break;
        const double seg_lo = std::max(lo, x_i);
        const double seg_hi = std::min(hi, x_next);
        if (seg_hi <= seg_lo) continue;
        total += linear_piece(w.values[static_cast<std::size_t>(i)],
                              w.values[static_cast<std::size_t>(i) + 1], x_i, dx,
                              seg_lo, seg_hi);
    }
    return total;
}

// Step-function variant; only reachable with lo > 0, where w_i/x is exactly
// integrable per cell as w_i * ln(seg_hi/seg_lo).
double step_log_integral(const GridFunction& w, double lo, double hi) {
    if (hi <= lo) return 0.0;
    const double dx = w.horizon / static_cast<double>(w.m);
    auto first = static_cast<std::int64_t>(std::floor(lo / dx));
    first = std::clamp<std::int64_t>(first, 0, w.m - 1);

    double total = 0.0;
    for (std::int64_t i = first; i < w.m; ++i) {
        const double x_i = w.grid_point(i);
        const double x_next = w.grid_point(i + 1);
        if (x_i >= hi) break;
        const double seg_lo = std::max(lo, x_i);
        const double seg_hi = std::min(hi, x_next);
        if (seg_hi <= seg_lo) continue;
        total += w.values[static_cast<std::size_t>(i)] * std::log(seg_hi / seg_lo);
    }
    return total;
}

}  // namespace

GridFunction simulate_wiener(std::int64_t m, double horizon,
                             const std::function<double()>& gaussian_source) {
    auto path = make_grid_function(m, horizon, GridInterpretation::kPiecewiseLinear);
    const double step_sd = std::sqrt(horizon / static_cast<double>(m));
    for (std::int64_t i = 0; i < m; ++i) {
        path.values[static_cast<std::size_t>(i) + 1] =
            path.values[static_cast<std::size_t>(i)] + step_sd * gaussian_source();
    }
    return path;
}

GridFunction simulate_wiener(std::int64_t m, double horizon, SeedStream& stream) {
    return simulate_wiener(m, horizon, [&stream] { return stream.next_gaussian(); });
}

double log_integral_functional(const GridFunction& w, double t) {
    w.validate();
    if (w.interpretation != GridInterpretation::kPiecewiseLinear) {
        throw std::invalid_argument(
            "log_integral_functional: step paths must be converted to "
            "piecewise-linear first");
    }
    if (w.values[0] != 0.0) {
        throw std::invalid_argument("log_integral_functional: w(0) = 0 required");
    }
    if (!(t >= 0.0 && t <= w.horizon)) {
        throw std::invalid_argument("log_integral_functional: t outside [0, horizon]");
    }
    return pl_log_integral(w, 0.0, t);
}

double truncated_functional(const GridFunction& w, double eps, double t) {
    w.validate();
    if (!(eps > 0.0 && eps < 1.0)) {
        throw std::invalid_argument("truncated_functional: eps must lie in (0,1)");
    }
    if (!(t >= 0.0 && t <= w.horizon)) {
        throw std::invalid_argument("truncated_functional: t outside [0, horizon]");
    }
    if (t <= eps) return 0.0;
    return w.interpretation == GridInterpretation::kPiecewiseLinear
               ? pl_log_integral(w, eps, t)
               : step_log_integral(w, eps, t);
}

double limit_covariance(double s, double t) {
    if (!(s >= 0.0 && s <= 1.0 && t >= 0.0 && t <= 1.0)) {
        throw std::invalid_argument("limit_covariance: arguments must lie in [0,1]");
    }
    const double lo = std::min(s, t);
    const double hi = std::max(s, t);
    if (lo == 0.0) return 0.0;
    return 2.0 * lo + lo * std::log(hi / lo);
}

LogIntegralEvaluator::LogIntegralEvaluator(std::int64_t m, double horizon)
    : m_(m), horizon_(horizon) {
    if (m < 1) throw std::invalid_argument("LogIntegralEvaluator: m >= 1 required");
    if (!(horizon > 0.0)) {
        throw std::invalid_argument("LogIntegralEvaluator: horizon must be > 0");
    }
    // Segment i >= 1 with chord w = a + b*x contributes
    //   a*ln(x_{i+1}/x_i) + b*dx = w_i*L_i + (w_{i+1} - w_i)*(1 - i*L_i)
    // where L_i = ln((i+1)/i) is horizon-free.
    seg_log_.resize(static_cast<std::size_t>(m));
    seg_comp_.resize(static_cast<std::size_t>(m));
    for (std::int64_t i = 1; i < m; ++i) {
        const double li = std::log((static_cast<double>(i) + 1.0) / static_cast<double>(i));
        seg_log_[static_cast<std::size_t>(i)] = li;
        seg_comp_[static_cast<std::size_t>(i)] = 1.0 - static_cast<double>(i) * li;
    }
}

std::vector<double> LogIntegralEvaluator::eval(const GridFunction& w,
                                               const std::vector<double>& ts) const {
    if (w.m != m_ || w.horizon != horizon_) {
        throw std::invalid_argument("LogIntegralEvaluator: grid mismatch");
    }
    if (w.interpretation != GridInterpretation::kPiecewiseLinear || w.values[0] != 0.0) {
        throw std::invalid_argument(
            "LogIntegralEvaluator: piecewise-linear path with w(0) = 0 required");
    }
    for (double t : ts) {
        if (!(t >= 0.0 && t <= horizon_)) {
            throw std::invalid_argument("LogIntegralEvaluator: t outside [0, horizon]");
        }
    }
    std::vector<std::size_t> order(ts.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&ts](std::size_t a, std::size_t b) { return ts[a] < ts[b]; });

    const auto node = [this](std::int64_t i) {
        return horizon_ * static_cast<double>(i) / static_cast<double>(m_);
    };
    const auto segment_full = [this, &w](std::int64_t i) {
        // Contribution of segment [x_i, x_{i+1}].
        const double w0 = w.values[static_cast<std::size_t>(i)];
        const double w1 = w.values[static_cast<std::size_t>(i) + 1];
        if (i == 0) return w1;
        return w0 * seg_log_[static_cast<std::size_t>(i)] +
               (w1 - w0) * seg_comp_[static_cast<std::size_t>(i)];
    };

    std::vector<double> out(ts.size(), 0.0);
    const double dx = horizon_ / static_cast<double>(m_);
    double running = 0.0;  // integral over [0, x_i] at the top of pass i
    std::size_t next = 0;

    for (std::int64_t i = 0; i <= m_ && next < order.size(); ++i) {
        const double x_i = node(i);
        while (next < order.size() && ts[order[next]] <= x_i) {
            const double t = ts[order[next]];
            double v = running;
            if (t < x_i && i >= 1) {
                // Swap the full segment [x_{i-1}, x_i] for its partial
                // piece [x_{i-1}, t].
                const double x_prev = node(i - 1);
                v -= segment_full(i - 1);
                v += linear_piece(w.values[static_cast<std::size_t>(i) - 1],
                                  w.values[static_cast<std::size_t>(i)], x_prev, dx,
                                  x_prev, t);
            }
            out[order[next]] = v;
            ++next;
        }
        if (i < m_) running += segment_full(i);
    }
    return out;
}

}  // namespace prodsum
