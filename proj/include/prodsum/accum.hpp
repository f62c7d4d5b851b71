#ifndef PRODSUM_ACCUM_HPP
#define PRODSUM_ACCUM_HPP

#include <cmath>
#include <span>

namespace prodsum {

// Neumaier-compensated accumulator. Long log-ratio sums (n up to 1e6 terms
// of magnitude ~k^{-1/2}) would otherwise lose digits.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_total(std::span<const double> xs) {
    CompensatedSum acc;
    for (double x : xs) acc.add(x);
    return acc.value();
}

}  // namespace prodsum

#endif  // PRODSUM_ACCUM_HPP
