#include "essfit/estimator.hpp"

#include <cmath>
#include <cstdio>

#include "essfit/error.hpp"

namespace essfit {

void validate(const VelocitySignal& signal) {
    if (!(signal.spacing > 0.0) || !std::isfinite(signal.spacing)) {
        throw DomainError("signal spacing must be positive and finite");
    }
    if (signal.samples.size() < 2) {
        throw DegenerateInputError("signal needs at least 2 samples");
    }
    for (double v : signal.samples) {
        if (!std::isfinite(v)) {
            throw DomainError("signal contains a non-finite sample");
        }
    }
}

namespace {

double increment_moment(const std::vector<double>& u, std::size_t lag, int order,
                        MomentKind kind) {
    const std::size_t count = u.size() - lag;
    double sum = 0.0;
    if (kind == MomentKind::Absolute) {
        for (std::size_t i = 0; i < count; ++i) {
            sum += std::pow(std::fabs(u[i + lag] - u[i]), order);
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            sum += std::pow(u[i + lag] - u[i], order);
        }
    }
    return sum / static_cast<double>(count);
}

}  // namespace

StructureFunctionCurve structure_function(const VelocitySignal& signal, int order,
                                          const std::vector<std::size_t>& lags, MomentKind kind) {
    validate(signal);
    if (order < 1) {
        throw DomainError("moment order must be >= 1");
    }
    if (lags.empty()) {
        throw DegenerateInputError("lag grid is empty");
    }
    const std::size_t n = signal.samples.size();
    for (std::size_t i = 0; i < lags.size(); ++i) {
        if (lags[i] == 0 || lags[i] >= n) {
            char msg[96];
            std::snprintf(msg, sizeof msg, "lag %zu outside [1, %zu)", lags[i], n);
            throw DomainError(msg);
        }
        if (i > 0 && lags[i] <= lags[i - 1]) {
            throw ContractError("lags must be strictly increasing");
        }
    }

    StructureFunctionCurve curve;
    curve.order = order;
    curve.kind = kind;
    curve.label = signal.label;
    curve.separations.reserve(lags.size());
    curve.values.reserve(lags.size());
    curve.sample_counts.reserve(lags.size());
    for (std::size_t lag : lags) {
        curve.separations.push_back(static_cast<double>(lag) * signal.spacing);
        curve.values.push_back(increment_moment(signal.samples, lag, order, kind));
        curve.sample_counts.push_back(n - lag);
    }
    return curve;
}

std::vector<std::size_t> default_lag_grid(std::size_t signal_length, int points_per_decade) {
    if (signal_length < 4) {
        throw DegenerateInputError("signal too short for a lag grid");
    }
    if (points_per_decade < 1) {
        throw DomainError("points_per_decade must be >= 1");
    }
    const std::size_t max_lag = signal_length / 4;
    if (max_lag < 2) {
        return {1};
    }
    const double decades = std::log10(static_cast<double>(max_lag));
    const std::size_t steps =
        static_cast<std::size_t>(std::ceil(decades * points_per_decade)) + 2;
    std::vector<std::size_t> lags;
    lags.reserve(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        const double exponent = decades * static_cast<double>(i) / static_cast<double>(steps - 1);
        auto lag = static_cast<std::size_t>(std::llround(std::pow(10.0, exponent)));
        if (lag < 1) lag = 1;
        if (lag > max_lag) lag = max_lag;
        if (lags.empty() || lag > lags.back()) {
            lags.push_back(lag);
        }
    }
    return lags;
}

}  // namespace essfit
