#ifndef ESSFIT_TESTS_HELPERS_HPP
#define ESSFIT_TESTS_HELPERS_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "essfit/ess.hpp"

namespace testutil {

// Deterministic draw source for property tests; every seed is frozen in the
// test that uses it so failures replay exactly.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(engine_() >> 11) * 0x1.0p-53);
    }

    /// Value distributed uniformly in log10 between the two exponents.
    double log_uniform(double lo_exp, double hi_exp) {
        return std::pow(10.0, uniform(lo_exp, hi_exp));
    }

    std::uint64_t integer(std::uint64_t lo, std::uint64_t hi) {
        return lo + engine_() % (hi - lo + 1);
    }

    /// Dyadic value (multiple of 1/8) in [lo, hi]; sums of these are exact.
    double dyadic(int lo, int hi) {
        return static_cast<double>(integer(0, static_cast<std::uint64_t>(hi - lo) * 8)) / 8.0 +
               lo;
    }

private:
    std::mt19937_64 engine_;
};

inline double rel_diff(double a, double b) {
    const double scale = std::fmax(std::fabs(a), std::fabs(b));
    return scale == 0.0 ? 0.0 : std::fabs(a - b) / scale;
}

inline std::vector<essfit::EssPoint> affine_points(const std::vector<double>& xs, double m,
                                                   double b) {
    std::vector<essfit::EssPoint> points;
    points.reserve(xs.size());
    for (double x : xs) {
        points.push_back({x, m * x + b});
    }
    return points;
}

}  // namespace testutil

#endif
