#include "essfit/synth.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdio>

#include "essfit/error.hpp"
#include "essfit/rng.hpp"

namespace essfit {

void validate(const SimilarityModel& model) {
    if (!(model.c0 > 0.0) || !std::isfinite(model.c0)) {
        throw DomainError("c0 must be positive");
    }
    if (model.b3 == 0.0 || !std::isfinite(model.b3)) {
        throw DomainError("b3 must be nonzero");
    }
    if (!std::isfinite(model.c1) || !std::isfinite(model.alpha1)) {
        throw DomainError("model coefficients must be finite");
    }
}

namespace {

double log_reynolds(double re) {
    if (!(re > 1.0) || !std::isfinite(re)) {
        throw DomainError("Reynolds number must exceed 1");
    }
    return std::log(re);
}

void require_positive_r(double r) {
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw DomainError("separation r must be positive");
    }
}

void require_sharpness(double s) {
    if (!(s >= 1.0) || !std::isfinite(s)) {
        throw DomainError("crossover sharpness must be >= 1");
    }
}

// log of the second-order crossover factor, stable for extreme rho
double log_g2(double rho, double zeta2, double s) {
    const double e = (2.0 - zeta2) / (2.0 * s);
    if (rho >= 1.0) {
        return -e * std::log1p(std::pow(rho, -2.0 * s));
    }
    return (2.0 - zeta2) * std::log(rho) - e * std::log1p(std::pow(rho, 2.0 * s));
}

double g3(double rho) {
    if (rho >= 1.0) {
        const double inv = 1.0 / (rho * rho);
        return 1.0 / (1.0 + inv);
    }
    const double sq = rho * rho;
    return sq / (1.0 + sq);
}

}  // namespace

double similarity_exponent(const SimilarityModel& model, double re) {
    return 2.0 / 3.0 + model.alpha1 / log_reynolds(re);
}

double similarity_prefactor(const SimilarityModel& model, double re) {
    const double c = model.c0 + model.c1 / log_reynolds(re);
    if (!(c > 0.0)) {
        char msg[96];
        std::snprintf(msg, sizeof msg, "prefactor c0 + c1/ln(Re) = %g not positive at Re = %g", c,
                      re);
        throw DomainError(msg);
    }
    return c;
}

double model_d2_inertial(double r, const SimilarityModel& model, const FlowParameters& flow) {
    validate(model);
    require_positive_r(r);
    const double re = flow.reynolds_number();
    const double log_re = log_reynolds(re);
    const double rho = r / flow.kolmogorov_scale();
    return std::pow(flow.eps_mean() * r, 2.0 / 3.0) * similarity_prefactor(model, re) *
           std::pow(rho, model.alpha1 / log_re);
}

double model_d2(double r, const SimilarityModel& model, const FlowParameters& flow,
                double crossover_sharpness) {
    require_sharpness(crossover_sharpness);
    const double re = flow.reynolds_number();
    const double zeta2 = 2.0 / 3.0 + model.alpha1 / log_reynolds(re);
    const double rho = r / flow.kolmogorov_scale();
    return model_d2_inertial(r, model, flow) * std::exp(log_g2(rho, zeta2, crossover_sharpness));
}

double model_d3(double r, const SimilarityModel& model, const FlowParameters& flow) {
    validate(model);
    require_positive_r(r);
    log_reynolds(flow.reynolds_number());
    const double rho = r / flow.kolmogorov_scale();
    return model.b3 * flow.eps_mean() * r * g3(rho);
}

std::vector<EssPointSet> synth_ess_dataset(const SyntheticSpec& spec) {
    validate(spec.model);
    require_sharpness(spec.crossover_sharpness);
    if (spec.flows.empty()) {
        throw DegenerateInputError("need at least one flow");
    }
    if (spec.r_grid.size() < 2) {
        throw DegenerateInputError("r grid needs at least 2 separations");
    }
    for (std::size_t i = 0; i < spec.r_grid.size(); ++i) {
        require_positive_r(spec.r_grid[i]);
        if (i > 0 && spec.r_grid[i] <= spec.r_grid[i - 1]) {
            throw DomainError("r grid must be strictly increasing");
        }
    }
    if (!(spec.noise_sigma >= 0.0) || !std::isfinite(spec.noise_sigma)) {
        throw DomainError("noise_sigma must be >= 0");
    }
    if (!spec.labels.empty() && spec.labels.size() != spec.flows.size()) {
        throw ContractError("labels must be empty or match the flow count");
    }

    std::vector<EssPointSet> sets;
    sets.reserve(spec.flows.size());
    for (std::size_t f = 0; f < spec.flows.size(); ++f) {
        const FlowParameters& flow = spec.flows[f];
        const double re = flow.reynolds_number();
        RandomSource rng(spec.seed + f);

        std::vector<EssPoint> points;
        points.reserve(spec.r_grid.size());
        for (double r : spec.r_grid) {
            const double d2 = model_d2(r, spec.model, flow, spec.crossover_sharpness);
            const double d3 = std::fabs(model_d3(r, spec.model, flow));
            // noise draw order is fixed: x first, then y
            double x = std::log10(d3);
            double y = std::log10(d2);
            if (spec.noise_sigma > 0.0) {
                x += spec.noise_sigma * rng.gaussian();
                y += spec.noise_sigma * rng.gaussian();
            }
            points.push_back({x, y});
        }

        std::string label;
        if (!spec.labels.empty()) {
            label = spec.labels[f];
        } else {
            char buf[48];
            std::snprintf(buf, sizeof buf, "Re%.6g", re);
            label = buf;
        }
        sets.push_back(make_ess_point_set(std::move(points), std::move(label), re,
                                          std::vector<double>(spec.r_grid)));
    }
    return sets;
}

VelocitySignal synth_velocity_signal(std::size_t n, double spectrum_exponent, double spacing,
                                     std::uint64_t seed) {
    if (n < 2 || (n & (n - 1)) != 0) {
        throw DomainError("sample count must be a power of two, >= 2");
    }
    if (!(spectrum_exponent > 1.0) || !(spectrum_exponent < 3.0)) {
        throw DomainError("spectrum exponent must lie in (1, 3)");
    }
    if (!(spacing > 0.0) || !std::isfinite(spacing)) {
        throw DomainError("spacing must be positive");
    }

    const std::size_t half = n / 2;
    auto* modes = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (half + 1)));
    auto* samples = static_cast<double*>(fftw_malloc(sizeof(double) * n));
    if (modes == nullptr || samples == nullptr) {
        fftw_free(modes);
        fftw_free(samples);
        throw Error("out of memory in spectral synthesis");
    }

    // u[j] = sum_k A_k cos(2 pi j k / n + phi_k), A_k = k^(-beta/2):
    // bin k < n/2 holds (A_k/2) e^(i phi_k); the Nyquist bin is real with
    // amplitude A cos(phi) so its expected increment power matches the
    // same A^2 (1 - cos) rule as every other bin.
    RandomSource rng(seed);
    modes[0][0] = 0.0;
    modes[0][1] = 0.0;
    for (std::size_t k = 1; k <= half; ++k) {
        const double amplitude = std::pow(static_cast<double>(k), -0.5 * spectrum_exponent);
        const double phase = 2.0 * M_PI * rng.uniform01();
        if (k < half) {
            modes[k][0] = 0.5 * amplitude * std::cos(phase);
            modes[k][1] = 0.5 * amplitude * std::sin(phase);
        } else {
            modes[k][0] = amplitude * std::cos(phase);
            modes[k][1] = 0.0;
        }
    }

    fftw_plan plan = fftw_plan_dft_c2r_1d(static_cast<int>(n), modes, samples, FFTW_ESTIMATE);
    if (plan == nullptr) {
        fftw_free(modes);
        fftw_free(samples);
        throw Error("FFTW plan creation failed");
    }
    fftw_execute(plan);
    fftw_destroy_plan(plan);

    VelocitySignal signal;
    signal.samples.assign(samples, samples + n);
    signal.spacing = spacing;
    fftw_free(modes);
    fftw_free(samples);
    return signal;
}

std::vector<double> log_spaced_grid(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi)) {
        throw DomainError("need 0 < lo < hi");
    }
    if (n < 2) {
        throw DomainError("need at least 2 grid points");
    }
    std::vector<double> grid;
    grid.reserve(n);
    const double log_lo = std::log10(lo);
    const double step = (std::log10(hi) - log_lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        grid.push_back(std::pow(10.0, log_lo + step * static_cast<double>(i)));
    }
    grid.back() = hi;
    return grid;
}

}  // namespace essfit
