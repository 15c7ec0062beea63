#include <cmath>

#include "doctest.h"
#include "essfit/error.hpp"
#include "essfit/scales.hpp"
#include "helpers.hpp"

using namespace essfit;
using testutil::Gen;
using testutil::rel_diff;

TEST_CASE("kolmogorov_scale examples") {
    CHECK(kolmogorov_scale(1.0, 1.0) == 1.0);
    CHECK(rel_diff(kolmogorov_scale(1e-5, 0.1), 3.16227766016838e-4) < 1e-12);
    CHECK(rel_diff(kolmogorov_scale(1e-6, 1e-2), 1e-4) < 1e-12);
}

TEST_CASE("kolmogorov_scale rejects non-positive input") {
    CHECK_THROWS_AS(kolmogorov_scale(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(kolmogorov_scale(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(kolmogorov_scale(-1e-5, 0.1), DomainError);
    CHECK_THROWS_AS(kolmogorov_scale(1e-5, -0.1), DomainError);
}

TEST_CASE("velocity_scale examples") {
    CHECK(velocity_scale(1.0, 1.0) == 1.0);
    CHECK(velocity_scale(8.0, 1.0) == 2.0);
    CHECK(rel_diff(velocity_scale(0.1, 0.01), 0.1) < 1e-12);
    CHECK_THROWS_AS(velocity_scale(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(velocity_scale(1.0, 0.0), DomainError);
}

TEST_CASE("FlowParameters rejects non-positive fields") {
    CHECK_THROWS_AS(FlowParameters(0.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(FlowParameters(1.0, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(FlowParameters(1.0, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(FlowParameters(1.0, 1.0, -2.0), DomainError);
}

TEST_CASE("reynolds_number examples") {
    // lambda_t equal to lambda_k gives Re = 1
    const FlowParameters unit(1.0, 1.0, 1.0);
    CHECK(unit.kolmogorov_scale() == 1.0);
    CHECK(unit.reynolds_number() == 1.0);

    // scale ratio 1000 gives 1000^(4/3) = 10^4
    const FlowParameters ratio_1000(1.0, 1.0, 1000.0);
    CHECK(rel_diff(ratio_1000.reynolds_number(), 1e4) < 1e-12);

    // frozen arithmetic oracle, both formulas agree on it
    const FlowParameters lab(1e-5, 0.1, 0.1);
    CHECK(rel_diff(lab.reynolds_number(), 2154.4346900318824) < 1e-12);
    const double direct =
        std::cbrt(lab.eps_mean()) * std::pow(lab.lambda_t(), 4.0 / 3.0) / lab.nu();
    CHECK(rel_diff(lab.reynolds_number(), direct) < 1e-12);
    CHECK(reynolds_number(lab) == lab.reynolds_number());
}

TEST_CASE("both Reynolds formulas agree on 1000 random parameter sets") {
    Gen gen(2024);
    for (int i = 0; i < 1000; ++i) {
        const double nu = gen.log_uniform(-8.0, 0.0);
        const double eps = gen.log_uniform(-6.0, 4.0);
        const double lambda_t = gen.log_uniform(-4.0, 2.0);
        const FlowParameters flow(nu, eps, lambda_t);
        const double from_ratio = flow.reynolds_number();
        const double direct = std::cbrt(eps) * std::pow(lambda_t, 4.0 / 3.0) / nu;
        CHECK(rel_diff(from_ratio, direct) < 1e-12);
    }
}

TEST_CASE("kolmogorov_scale degree: scaling nu and eps by s^4 scales it by s^2") {
    Gen gen(77);
    for (int i = 0; i < 200; ++i) {
        const double nu = gen.log_uniform(-8.0, 0.0);
        const double eps = gen.log_uniform(-6.0, 4.0);
        const double s = gen.log_uniform(-2.0, 2.0);
        const double s4 = s * s * s * s;
        const double scaled = kolmogorov_scale(nu * s4, eps * s4);
        CHECK(rel_diff(scaled, s * s * kolmogorov_scale(nu, eps)) < 1e-12);
    }
}

TEST_CASE("Re is invariant under consistent unit rescaling") {
    Gen gen(1234);
    for (int i = 0; i < 200; ++i) {
        const double nu = gen.log_uniform(-8.0, 0.0);
        const double eps = gen.log_uniform(-6.0, 4.0);
        const double lambda_t = gen.log_uniform(-4.0, 2.0);
        const double length = gen.log_uniform(-3.0, 3.0);
        const double time = gen.log_uniform(-3.0, 3.0);
        const FlowParameters base(nu, eps, lambda_t);
        const FlowParameters rescaled(nu * length * length / time,
                                      eps * length * length / (time * time * time),
                                      lambda_t * length);
        CHECK(rel_diff(base.reynolds_number(), rescaled.reynolds_number()) < 1e-12);
    }
}

TEST_CASE("flow_for_reynolds inverts reynolds_number") {
    Gen gen(4321);
    for (int i = 0; i < 200; ++i) {
        const double re = gen.log_uniform(0.5, 12.0);
        const double eps = gen.log_uniform(-3.0, 3.0);
        const double lambda_t = gen.log_uniform(-2.0, 2.0);
        const FlowParameters flow = flow_for_reynolds(re, eps, lambda_t);
        CHECK(flow.eps_mean() == eps);
        CHECK(flow.lambda_t() == lambda_t);
        CHECK(rel_diff(flow.reynolds_number(), re) < 1e-12);
    }
    CHECK_THROWS_AS(flow_for_reynolds(1.0), DomainError);
    CHECK_THROWS_AS(flow_for_reynolds(0.5), DomainError);
}

TEST_CASE("velocity_scale accessor matches the free function") {
    const FlowParameters flow(1e-5, 0.3, 0.2);
    CHECK(flow.velocity_scale() == velocity_scale(0.3, 0.2));
}
