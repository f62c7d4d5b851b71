#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "prodsum/quadrature.hpp"

using prodsum::adaptive_quadrature;
using prodsum::min_over_xy_box_quadrature;

TEST_CASE("smooth integrands") {
    CHECK(adaptive_quadrature([](double x) { return x * x; }, 0.0, 1.0, 1e-12) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(adaptive_quadrature([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-12) ==
          doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("log endpoint singularity is integrated by grading") {
    // int_0^1 ln(1/x) dx = 1
    const double v = adaptive_quadrature([](double x) { return -std::log(x); },
                                         0.0, 1.0, 1e-10);
    CHECK(v == doctest::Approx(1.0).epsilon(1e-8));

    // int_0^t ln(t/v)^2 dv = 2t
    for (double t : {0.25, 0.5, 1.0}) {
        const double w = adaptive_quadrature(
            [t](double v2) { const double l = std::log(t / v2); return l * l; },
            0.0, t, 1e-10);
        CHECK(w == doctest::Approx(2.0 * t).epsilon(1e-8));
    }
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(adaptive_quadrature([](double) { return 0.0; }, 1.0, 0.0, 1e-8),
                    std::invalid_argument);
    CHECK_THROWS_AS(adaptive_quadrature([](double) { return 0.0; }, 0.0, 1.0, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(min_over_xy_box_quadrature(1.5, 1.0, 1e-8), std::invalid_argument);
    CHECK_THROWS_AS(min_over_xy_box_quadrature(1.0, -0.1, 1e-8), std::invalid_argument);
}

TEST_CASE("box quadrature of min(x,y)/(xy)") {
    CHECK(min_over_xy_box_quadrature(1.0, 1.0, 1e-9) ==
          doctest::Approx(2.0).epsilon(1e-7));
    CHECK(min_over_xy_box_quadrature(0.0, 0.7, 1e-9) == 0.0);
    // 2*min + min*ln(max/min) evaluated by hand for (0.5, 1).
    CHECK(min_over_xy_box_quadrature(0.5, 1.0, 1e-9) ==
          doctest::Approx(1.0 + 0.5 * std::log(2.0)).epsilon(1e-7));
    // Symmetric in its arguments.
    CHECK(min_over_xy_box_quadrature(0.3, 0.8, 1e-9) ==
          doctest::Approx(min_over_xy_box_quadrature(0.8, 0.3, 1e-9)).epsilon(1e-7));
}
