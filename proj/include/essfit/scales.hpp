#ifndef ESSFIT_SCALES_HPP
#define ESSFIT_SCALES_HPP

/**
 * @file scales.hpp
 * @brief Flow parameters and the dimensional-analysis scales of developed
 *        turbulence: Kolmogorov microscale, velocity scale and the Reynolds
 *        number built from the scale ratio.
 *
 * All quantities are plain SI values; there is no unit-conversion layer.
 */

#include "essfit/error.hpp"

namespace essfit {

/**
 * @brief Kolmogorov scale, the lower bound of the inertial range.
 *
 * lambda_K = nu^(3/4) / eps^(1/4)
 *
 * @param nu   Kinematic viscosity [m^2/s], > 0
 * @param eps  Mean energy dissipation rate [m^2/s^3], > 0
 * @return Kolmogorov length [m]
 */
double kolmogorov_scale(double nu, double eps);

/**
 * @brief Velocity scale formed from dissipation rate and an external length.
 *
 * u = (eps * lambda_t)^(1/3)
 *
 * @param eps       Mean energy dissipation rate [m^2/s^3], > 0
 * @param lambda_t  External length scale (Taylor macroscale) [m], > 0
 * @return Velocity [m/s]
 */
double velocity_scale(double eps, double lambda_t);

/**
 * @brief Flow parameters of a developed turbulent flow.
 *
 * Holds only the three independent inputs; the Kolmogorov scale and the
 * Reynolds number are derived on demand so the type can never carry
 * inconsistent values.
 */
class FlowParameters {
public:
    /// Throws DomainError unless all three parameters are positive.
    FlowParameters(double nu, double eps_mean, double lambda_t);

    double nu() const { return nu_; }
    double eps_mean() const { return eps_mean_; }
    double lambda_t() const { return lambda_t_; }

    /// nu^(3/4) / eps^(1/4)
    double kolmogorov_scale() const;
    /// (eps * lambda_t)^(1/3)
    double velocity_scale() const;
    /// (lambda_t / lambda_k)^(4/3), equal to eps^(1/3) lambda_t^(4/3) / nu
    double reynolds_number() const;

private:
    double nu_;
    double eps_mean_;
    double lambda_t_;
};

/**
 * @brief Reynolds number from the scale ratio.
 *
 * Re = (lambda_t / lambda_k)^(4/3)
 */
double reynolds_number(const FlowParameters& params);

/**
 * @brief Build flow parameters that realize a requested Reynolds number.
 *
 * Inverts Re = eps^(1/3) lambda_t^(4/3) / nu for nu, keeping eps and
 * lambda_t fixed. Used to pin synthetic experiments to given Re values.
 */
FlowParameters flow_for_reynolds(double re, double eps = 1.0, double lambda_t = 1.0);

}  // namespace essfit

#endif
