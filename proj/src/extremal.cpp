#include "prodsum/extremal.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "prodsum/accum.hpp"
#include "prodsum/io.hpp"

namespace prodsum {

namespace {

// ln(t/v) at the cell midpoints, zero on [t, 1).
std::vector<double> kernel_values(double t, std::int64_t m) {
    std::vector<double> c(static_cast<std::size_t>(m), 0.0);
    for (std::int64_t j = 1; j <= m; ++j) {
        const double v = (static_cast<double>(j) - 0.5) / static_cast<double>(m);
        if (v < t) c[static_cast<std::size_t>(j) - 1] = std::log(t / v);
    }
    return c;
}

double h_norm(const std::vector<double>& xs, double h) {
    CompensatedSum acc;
    for (double x : xs) acc.add(x * x);
    return std::sqrt(h * acc.value());
}

// int_a^b ln(x/v) dv = [v + v ln(x/v)]_a^b, with the a -> 0 limit equal 0.
double cell_kernel_integral(double x, double a, double b) {
    const double upper = b + b * std::log(x / b);
    const double lower = (a == 0.0) ? 0.0 : a + a * std::log(x / a);
    return upper - lower;
}

// Forward-map matrix: rows are the grid points x_i = i/rows, i = 1..rows;
// columns the cells [(j-1)h, jh]; entry int over {v in cell j, v < x_i}.
Eigen::MatrixXd forward_matrix(std::int64_t rows, std::int64_t m) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, m);
    const double h = 1.0 / static_cast<double>(m);
    for (std::int64_t i = 1; i <= rows; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(rows);
        for (std::int64_t j = 1; j <= m; ++j) {
            const double a = (static_cast<double>(j) - 1.0) * h;
            if (a >= x) break;
            const double b = std::min(static_cast<double>(j) * h, x);
            A(i - 1, j - 1) = cell_kernel_integral(x, a, b);
        }
    }
    return A;
}

}  // namespace

double StrassenCandidate::norm_sq() const {
    CompensatedSum acc;
    for (double v : fprime) acc.add(v * v);
    return h() * acc.value();
}

GridFunction StrassenCandidate::reconstruct() const {
    auto f = make_grid_function(m, 1.0, GridInterpretation::kPiecewiseLinear);
    CompensatedSum acc;
    for (std::int64_t i = 1; i <= m; ++i) {
        acc.add(h() * fprime[static_cast<std::size_t>(i) - 1]);
        f.values[static_cast<std::size_t>(i)] = acc.value();
    }
    return f;
}

MaximizeResult maximize_functional(double t, std::int64_t m) {
    if (!(t > 0.0 && t <= 1.0)) {
        throw std::invalid_argument("maximize_functional: t must lie in (0,1]");
    }
    if (m < 2) throw std::invalid_argument("maximize_functional: m >= 2 required");

    const double h = 1.0 / static_cast<double>(m);
    std::vector<double> c = kernel_values(t, m);
    const double value = h_norm(c, h);

    MaximizeResult out;
    out.value = value;
    out.argmax.m = m;
    out.argmax.fprime = std::move(c);
    if (value > 0.0) {
        for (double& v : out.argmax.fprime) v /= value;
    }
    return out;
}

MaximizeResult maximize_functional_gradient(double t, std::int64_t m,
                                            int iterations) {
    if (!(t > 0.0 && t <= 1.0)) {
        throw std::invalid_argument("maximize_functional_gradient: t must lie in (0,1]");
    }
    if (m < 2) throw std::invalid_argument("maximize_functional_gradient: m >= 2 required");

    const double h = 1.0 / static_cast<double>(m);
    const std::vector<double> c = kernel_values(t, m);
    std::vector<double> f(static_cast<std::size_t>(m), 0.0);

    const double step = 0.5;
    for (int it = 0; it < iterations; ++it) {
        for (std::size_t j = 0; j < f.size(); ++j) f[j] += step * c[j];
        const double norm = h_norm(f, h);
        if (norm > 1.0) {
            for (double& v : f) v /= norm;
        }
    }

    MaximizeResult out;
    out.argmax.m = m;
    out.argmax.fprime = std::move(f);
    CompensatedSum obj;
    for (std::size_t j = 0; j < c.size(); ++j) {
        obj.add(c[j] * out.argmax.fprime[j]);
    }
    out.value = h * obj.value();
    return out;
}

double envelope(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::invalid_argument("envelope: x must lie in [0,1]");
    }
    return std::sqrt(2.0 * x);
}

MinNormResult min_norm_representation(const GridFunction& g, std::int64_t m,
                                      double ridge) {
    g.validate();
    if (g.horizon != 1.0) {
        throw std::invalid_argument("min_norm_representation: g must live on [0,1]");
    }
    if (g.values[0] != 0.0) {
        throw std::invalid_argument("min_norm_representation: g(0) = 0 required");
    }
    if (m < 2) throw std::invalid_argument("min_norm_representation: m >= 2 required");

    const std::int64_t rows = g.m;
    const Eigen::MatrixXd A = forward_matrix(rows, m);
    Eigen::VectorXd b(rows);
    for (std::int64_t i = 1; i <= rows; ++i) b(i - 1) = g.values[static_cast<std::size_t>(i)];

    Eigen::MatrixXd normal = A.transpose() * A;
    if (ridge < 0.0) ridge = 1e-8 * normal.trace() / static_cast<double>(m);
    normal.diagonal().array() += ridge;

    const auto ldlt = normal.ldlt();
    const Eigen::VectorXd d = ldlt.vectorD();
    const double dmax = d.maxCoeff();
    if (ridge == 0.0 && (d.minCoeff() <= 0.0 || d.minCoeff() < 1e-12 * dmax)) {
        throw std::invalid_argument(
            "min_norm_representation: normal system is numerically singular; "
            "supply a positive ridge");
    }
    const Eigen::VectorXd f = ldlt.solve(A.transpose() * b);

    MinNormResult out;
    out.candidate.m = m;
    out.candidate.fprime.assign(f.data(), f.data() + f.size());
    out.residual = (A * f - b).lpNorm<Eigen::Infinity>();
    return out;
}

double limit_set_distance(const GridFunction& g, std::int64_t m, double ridge) {
    const MinNormResult fit = min_norm_representation(g, m, ridge);
    const double excess = std::max(0.0, std::sqrt(fit.candidate.norm_sq()) - 1.0);
    return excess + fit.residual;
}

void write_candidate_csv(std::ostream& out, const StrassenCandidate& c) {
    out << "v,fprime\n";
    for (std::int64_t j = 1; j <= c.m; ++j) {
        out << format_double(c.midpoint(j)) << ','
            << format_double(c.fprime[static_cast<std::size_t>(j) - 1]) << '\n';
    }
}

}  // namespace prodsum
