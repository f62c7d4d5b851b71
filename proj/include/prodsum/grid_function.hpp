// Functions sampled on a uniform grid over [0, horizon]. Carrier for Wiener
// paths, the partial-sum process, log-product paths and Strassen-scaled
// paths. horizon defaults to 1; Wiener paths coupled to sample paths live
// on [0, n].

#ifndef PRODSUM_GRID_FUNCTION_HPP
#define PRODSUM_GRID_FUNCTION_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace prodsum {

enum class GridInterpretation {
    kCadlagStep,      // f(x) = values[i] on [x_i, x_{i+1}), right-continuous
    kPiecewiseLinear  // linear interpolation between nodes
};

struct GridFunction {
    std::int64_t m = 0;  // number of cells; m+1 node values
    double horizon = 1.0;
    std::vector<double> values;  // values[i] at x_i = i * horizon / m
    GridInterpretation interpretation = GridInterpretation::kPiecewiseLinear;

    double grid_point(std::int64_t i) const {
        return horizon * static_cast<double>(i) / static_cast<double>(m);
    }

    /// Pointwise evaluation under the declared interpretation; x must lie
    /// in [0, horizon].
    double value_at(double x) const;

    /// Throws std::invalid_argument if sizes disagree, m < 1, horizon <= 0,
    /// or any value is non-finite.
    void validate() const;
};

GridFunction make_grid_function(std::int64_t m, double horizon,
                                GridInterpretation interpretation);

/// CSV with header "t,value", one row per grid node.
void write_grid_csv(std::ostream& out, const GridFunction& g);

}  // namespace prodsum

#endif  // PRODSUM_GRID_FUNCTION_HPP
