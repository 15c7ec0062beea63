#ifndef ESSFIT_SIGNAL_HPP
#define ESSFIT_SIGNAL_HPP

#include <string>
#include <vector>

#include "essfit/error.hpp"

namespace essfit {

/// A 1-D longitudinal velocity record sampled on a uniform spatial grid.
struct VelocitySignal {
    std::vector<double> samples;  // velocity values [m/s]
    double spacing = 0.0;         // sample separation [m], > 0
    std::string label;
};

/// Throws unless spacing > 0, at least 2 samples, all samples finite.
void validate(const VelocitySignal& signal);

}  // namespace essfit

#endif
