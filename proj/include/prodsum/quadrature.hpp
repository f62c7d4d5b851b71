// Adaptive quadrature used by the self-check identities and the test
// oracles. Gauss-Kronrod 7-15 panels with bisection; all nodes are
// interior, so integrable endpoint singularities (log kernels) are handled
// by grading toward the endpoint rather than by special rules.

#ifndef PRODSUM_QUADRATURE_HPP
#define PRODSUM_QUADRATURE_HPP

#include <functional>

namespace prodsum {

/// Integrates f over [a, b] to absolute tolerance tol. Panels recurse until
/// the local Kronrod-Gauss error estimate meets its share of the budget or
/// max_depth bisections have been spent (a depth-48 panel is ~3.5e-15 of
/// the original interval, which caps the unresolved mass of a log-type
/// endpoint singularity well below any tolerance used here).
double adaptive_quadrature(const std::function<double(double)>& f, double a,
                           double b, double tol, int max_depth = 48);

/// Brute-force oracle for the limit covariance: iterated adaptive
/// quadrature of min(x,y)/(xy) over [0,s] x [0,t]. Independent of the
/// closed form implemented in wiener.
double min_over_xy_box_quadrature(double s, double t, double tol);

}  // namespace prodsum

#endif  // PRODSUM_QUADRATURE_HPP
