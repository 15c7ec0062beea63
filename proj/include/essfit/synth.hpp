#ifndef ESSFIT_SYNTH_HPP
#define ESSFIT_SYNTH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "essfit/ess.hpp"
#include "essfit/scales.hpp"
#include "essfit/signal.hpp"

namespace essfit {

/**
 * Incomplete-similarity forward model for the second- and third-order
 * structure functions.
 *
 * The second-order prefactor and exponent carry the leading 1/ln(Re)
 * corrections: prefactor c0 + c1/ln(Re), exponent 2/3 + alpha1/ln(Re).
 * The third-order moment is b3 * eps * r in the inertial range.
 */
struct SimilarityModel {
    double c0 = 1.5;
    double c1 = 2.0;
    double alpha1 = 0.29;
    double b3 = 1.0;
};

/// Throws DomainError unless c0 > 0 and b3 != 0.
void validate(const SimilarityModel& model);

/// 2/3 + alpha1 / ln(re); requires re > 1.
double similarity_exponent(const SimilarityModel& model, double re);

/// c0 + c1 / ln(re); requires re > 1 and a positive result.
double similarity_prefactor(const SimilarityModel& model, double re);

/**
 * Second-order structure function with a dissipation-range crossover.
 *
 * D2(r) = (eps r)^(2/3) * (c0 + c1/ln Re) * (r/lambda_K)^(alpha1/ln Re) * g2(r/lambda_K)
 *
 * The crossover factor g2(rho) = [rho^(2s) / (1 + rho^(2s))]^((2 - zeta2)/(2s))
 * tends to 1 for rho >> 1 and forces D2 proportional to r^2 for rho << 1;
 * the sharpness s >= 1 controls how tight the bend is.
 */
double model_d2(double r, const SimilarityModel& model, const FlowParameters& flow,
                double crossover_sharpness = 1.0);

/// Inertial-range part of model_d2 (crossover factor identically 1).
double model_d2_inertial(double r, const SimilarityModel& model, const FlowParameters& flow);

/**
 * Third-order structure function with the same style of crossover:
 * D3(r) = b3 * eps * r * rho^2 / (1 + rho^2), proportional to r^3 deep in
 * the dissipation range and to r in the inertial range.
 */
double model_d3(double r, const SimilarityModel& model, const FlowParameters& flow);

/// Specification of a synthetic multi-experiment ESS dataset.
struct SyntheticSpec {
    SimilarityModel model;
    std::vector<FlowParameters> flows;  // one per experiment
    std::vector<double> r_grid;         // separations [m], strictly increasing
    double crossover_sharpness = 1.0;
    double noise_sigma = 0.0;           // additive Gaussian noise, log10 units
    std::uint64_t seed = 0;
    std::vector<std::string> labels;    // optional; defaults to Re-based labels
};

/**
 * Evaluate the forward model for every flow over the shared r grid and map
 * to (log10 D3, log10 D2) points, adding independent Gaussian noise of
 * standard deviation noise_sigma to each coordinate. The generator is split
 * per flow as seed + flow index, so output is deterministic and independent
 * of evaluation order.
 */
std::vector<EssPointSet> synth_ess_dataset(const SyntheticSpec& spec);

/**
 * Random-phase spectral synthesis of a 1-D velocity record.
 *
 * Mode amplitudes follow k^(-spectrum_exponent/2) for k >= 1 with
 * independent uniform phases and zero mean. n must be a power of two and
 * spectrum_exponent must lie in (1, 3). Deterministic given seed.
 */
VelocitySignal synth_velocity_signal(std::size_t n, double spectrum_exponent, double spacing,
                                     std::uint64_t seed);

/// n log-spaced values from lo to hi inclusive; requires 0 < lo < hi, n >= 2.
std::vector<double> log_spaced_grid(double lo, double hi, std::size_t n);

}  // namespace essfit

#endif
