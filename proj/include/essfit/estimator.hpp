#ifndef ESSFIT_ESTIMATOR_HPP
#define ESSFIT_ESTIMATOR_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "essfit/signal.hpp"

namespace essfit {

enum class MomentKind { Signed, Absolute };

/// Order-p moments of longitudinal velocity increments over a separation grid.
struct StructureFunctionCurve {
    int order = 0;
    MomentKind kind = MomentKind::Absolute;
    std::vector<double> separations;         // r values [m], strictly increasing
    std::vector<double> values;              // D_p(r) [(m/s)^p]
    std::vector<std::size_t> sample_counts;  // increments averaged per r
    std::string label;
    std::optional<double> re_tag;
};

/**
 * Estimate D_p(r) from a velocity signal using overlapping increments.
 *
 * For each lag l, r = l * spacing and D_p(r) is the mean over all i of
 * (u[i+l] - u[i])^p, or of |u[i+l] - u[i]|^p for the absolute kind.
 * Lags must be strictly increasing and inside [1, signal length).
 */
StructureFunctionCurve structure_function(const VelocitySignal& signal, int order,
                                          const std::vector<std::size_t>& lags,
                                          MomentKind kind);

/**
 * Approximately log-spaced unique integer lags from 1 to signal_length / 4.
 */
std::vector<std::size_t> default_lag_grid(std::size_t signal_length, int points_per_decade);

}  // namespace essfit

#endif
