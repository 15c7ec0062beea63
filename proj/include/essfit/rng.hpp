#ifndef ESSFIT_RNG_HPP
#define ESSFIT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace essfit {

// Seeded generator with a fully specified mapping from engine output to
// uniform and Gaussian draws. std::normal_distribution is
// implementation-defined, so reports and tests would not be reproducible
// across standard libraries if we used it.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

    /// Uniform draw in [0, 1).
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal draw via Box-Muller.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1] so the logarithm stays finite
        const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * M_PI * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace essfit

#endif
