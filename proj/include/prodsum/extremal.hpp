// The Strassen-ball extremal problem: maximize int_0^t f(u)/u du over
// absolutely continuous f with f(0) = 0 and ||f'||_{L2[0,1]} <= 1.
// Interchanging the integrals turns the objective into <f', c> with kernel
// c(v) = ln(t/v) on (0,t), so the maximizer is c/||c|| and the value
// ||c|| -> sqrt(2t). Also: membership scoring of candidate limit paths via
// ridge-regularized least-norm inversion of the forward map.

#ifndef PRODSUM_EXTREMAL_HPP
#define PRODSUM_EXTREMAL_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "prodsum/grid_function.hpp"

namespace prodsum {

/// Discretized element of the Strassen class: derivative values at cell
/// midpoints v_j = (j-0.5)/m, with f recovered by cumulative sums.
struct StrassenCandidate {
    std::int64_t m = 0;
    std::vector<double> fprime;  // size m, value at v_j

    double h() const { return 1.0 / static_cast<double>(m); }
    double midpoint(std::int64_t j) const {  // j = 1..m
        return (static_cast<double>(j) - 0.5) / static_cast<double>(m);
    }

    /// h * sum f'^2; membership in the class means norm_sq <= 1 + tol
    /// (tol = 1e-9 by convention here).
    double norm_sq() const;

    /// f at the nodes i/m, i = 0..m, with f(0) = 0.
    GridFunction reconstruct() const;
};

inline constexpr double kMembershipTol = 1e-9;

struct MaximizeResult {
    double value;
    StrassenCandidate argmax;
};

/// Closed-form solution of the discrete problem
///   max h<c, f'>  s.t.  h||f'||^2 <= 1,   c_j = ln(t/v_j) 1{v_j < t}.
/// value = sqrt(h sum c^2) -> sqrt(2t) as m grows. Requires 0 < t <= 1,
/// m >= 2.
MaximizeResult maximize_functional(double t, std::int64_t m);

/// Projected-gradient cross-check for the same discrete problem; guards
/// the closed-form derivation. Converges to the same value/direction.
MaximizeResult maximize_functional_gradient(double t, std::int64_t m,
                                            int iterations = 300);

/// sqrt(2x): the pointwise supremum of int_0^x f(u)/u du over the class.
double envelope(double x);

struct MinNormResult {
    StrassenCandidate candidate;
    double residual;  // sup-norm of A f' - g over the fit grid
};

/// Least-norm fit of g by the forward map
///   (A f')(x) = sum_j f'_j * int_{cell j, v < x} ln(x/v) dv,
/// i.e. the discrete analogue of int_0^x f'(v) ln(x/v) dv with the kernel
/// integrated exactly over each cell (so piecewise-constant preimages are
/// reproduced exactly; g(x) = x recovers f' = 1 with zero residual).
/// Solves (A^T A + ridge I) f' = A^T g. ridge < 0 selects the default
/// 1e-8 * trace(A^T A)/m. ridge = 0 on a numerically singular system
/// throws, instructing a positive ridge. Requires g.horizon == 1 and
/// g(0) = 0.
MinNormResult min_norm_representation(const GridFunction& g, std::int64_t m,
                                      double ridge);

/// Infeasibility score max(0, ||f'|| - 1) + residual from the min-norm
/// fit; 0 means g sits inside the log-image of the limit set numerically.
double limit_set_distance(const GridFunction& g, std::int64_t m, double ridge);

/// CSV with header "v,fprime", one row per cell midpoint.
void write_candidate_csv(std::ostream& out, const StrassenCandidate& c);

}  // namespace prodsum

#endif  // PRODSUM_EXTREMAL_HPP
