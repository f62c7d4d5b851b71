#include "prodsum/grid_function.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "prodsum/io.hpp"

namespace prodsum {

void GridFunction::validate() const {
    if (m < 1) throw std::invalid_argument("GridFunction: m >= 1 required");
    if (!(horizon > 0.0)) throw std::invalid_argument("GridFunction: horizon must be > 0");
    if (values.size() != static_cast<std::size_t>(m) + 1) {
        throw std::invalid_argument("GridFunction: expected m+1 values");
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("GridFunction: non-finite value");
        }
    }
}

double GridFunction::value_at(double x) const {
    if (!(x >= 0.0 && x <= horizon)) {
        throw std::invalid_argument("GridFunction::value_at: x outside [0, horizon]");
    }
    const double pos = x * static_cast<double>(m) / horizon;
    auto i = static_cast<std::int64_t>(std::floor(pos));
    if (i >= m) i = m;  // x == horizon
    if (interpretation == GridInterpretation::kCadlagStep) {
        return values[static_cast<std::size_t>(i)];
    }
    if (i == m) return values.back();
    const double frac = pos - static_cast<double>(i);
    const double lo = values[static_cast<std::size_t>(i)];
    const double hi = values[static_cast<std::size_t>(i) + 1];
    return lo + frac * (hi - lo);
}

GridFunction make_grid_function(std::int64_t m, double horizon,
                                GridInterpretation interpretation) {
    GridFunction g;
    g.m = m;
    g.horizon = horizon;
    g.interpretation = interpretation;
    g.values.assign(static_cast<std::size_t>(m) + 1, 0.0);
    g.validate();
    return g;
}

void write_grid_csv(std::ostream& out, const GridFunction& g) {
    out << "t,value\n";
    for (std::int64_t i = 0; i <= g.m; ++i) {
        out << format_double(g.grid_point(i)) << ','
            << format_double(g.values[static_cast<std::size_t>(i)]) << '\n';
    }
}

}  // namespace prodsum
