#include "essfit/scales.hpp"

#include <cmath>
#include <cstdio>

namespace essfit {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        char msg[128];
        std::snprintf(msg, sizeof msg, "%s must be positive and finite, got %g", name, value);
        throw DomainError(msg);
    }
}

}  // namespace

double kolmogorov_scale(double nu, double eps) {
    require_positive(nu, "nu");
    require_positive(eps, "eps");
    return std::pow(nu, 0.75) / std::pow(eps, 0.25);
}

double velocity_scale(double eps, double lambda_t) {
    require_positive(eps, "eps");
    require_positive(lambda_t, "lambda_t");
    return std::cbrt(eps * lambda_t);
}

FlowParameters::FlowParameters(double nu, double eps_mean, double lambda_t)
    : nu_(nu), eps_mean_(eps_mean), lambda_t_(lambda_t) {
    require_positive(nu, "nu");
    require_positive(eps_mean, "eps_mean");
    require_positive(lambda_t, "lambda_t");
}

double FlowParameters::kolmogorov_scale() const {
    return essfit::kolmogorov_scale(nu_, eps_mean_);
}

double FlowParameters::velocity_scale() const {
    return essfit::velocity_scale(eps_mean_, lambda_t_);
}

double FlowParameters::reynolds_number() const {
    return std::pow(lambda_t_ / kolmogorov_scale(), 4.0 / 3.0);
}

double reynolds_number(const FlowParameters& params) {
    return params.reynolds_number();
}

FlowParameters flow_for_reynolds(double re, double eps, double lambda_t) {
    if (!(re > 1.0) || !std::isfinite(re)) {
        throw DomainError("Reynolds number must exceed 1");
    }
    require_positive(eps, "eps");
    require_positive(lambda_t, "lambda_t");
    const double nu = std::cbrt(eps) * std::pow(lambda_t, 4.0 / 3.0) / re;
    return FlowParameters(nu, eps, lambda_t);
}

}  // namespace essfit
