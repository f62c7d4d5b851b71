#include "prodsum/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace prodsum {

namespace {

// Gauss-Kronrod 7-15 nodes/weights on [-1,1] (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelEstimate {
    double kronrod;
    double error;
};

PanelEstimate gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double halfwidth = 0.5 * (b - a);

    const double fc = f(center);
    double result_gauss = kWg[3] * fc;
    double result_kronrod = kWgk[7] * fc;

    for (int j = 0; j < 7; ++j) {
        const double dx = halfwidth * kXgk[j];
        const double fsum = f(center - dx) + f(center + dx);
        result_kronrod += kWgk[j] * fsum;
        if (j % 2 == 1) result_gauss += kWg[j / 2] * fsum;
    }

    result_gauss *= halfwidth;
    result_kronrod *= halfwidth;
    return {result_kronrod, std::fabs(result_kronrod - result_gauss)};
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double tol, int depth, int max_depth) {
    const PanelEstimate est = gk15(f, a, b);
    if (est.error <= tol || est.error <= 5e-16 * std::fabs(est.kronrod) ||
        depth >= max_depth) {
        return est.kronrod;
    }
    const double mid = 0.5 * (a + b);
    return adapt(f, a, mid, 0.5 * tol, depth + 1, max_depth) +
           adapt(f, mid, b, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

double adaptive_quadrature(const std::function<double(double)>& f, double a,
                           double b, double tol, int max_depth) {
    if (!(b >= a)) throw std::invalid_argument("adaptive_quadrature: b >= a required");
    if (!(tol > 0.0)) throw std::invalid_argument("adaptive_quadrature: tol must be > 0");
    if (a == b) return 0.0;
    return adapt(f, a, b, tol, 0, max_depth);
}

double min_over_xy_box_quadrature(double s, double t, double tol) {
    if (!(s >= 0.0 && s <= 1.0 && t >= 0.0 && t <= 1.0)) {
        throw std::invalid_argument("min_over_xy_box_quadrature: arguments must lie in [0,1]");
    }
    if (s == 0.0 || t == 0.0) return 0.0;

    // Inner integral in y for fixed x > 0, split at the kink y = x.
    const auto inner = [&](double x) {
        const double knee = std::min(x, t);
        const auto integrand = [&](double y) { return std::min(x, y) / (x * y); };
        double v = adaptive_quadrature(integrand, 0.0, knee, 0.25 * tol);
        if (t > knee) v += adaptive_quadrature(integrand, knee, t, 0.25 * tol);
        return v;
    };
    // The outer integrand has a derivative jump at x = t; split there.
    const double cut = std::min(s, t);
    double v = adaptive_quadrature(inner, 0.0, cut, 0.25 * tol);
    if (s > cut) v += adaptive_quadrature(inner, cut, s, 0.25 * tol);
    return v;
}

}  // namespace prodsum
