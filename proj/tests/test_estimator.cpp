#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "doctest.h"
#include "essfit/error.hpp"
#include "essfit/estimator.hpp"
#include "helpers.hpp"

using namespace essfit;
using testutil::Gen;
using testutil::rel_diff;

namespace {

VelocitySignal make_signal(std::vector<double> samples, double spacing = 1.0) {
    VelocitySignal signal;
    signal.samples = std::move(samples);
    signal.spacing = spacing;
    return signal;
}

// Independent reference: direct translation of the definition, no shortcuts.
double naive_moment(const std::vector<double>& u, std::size_t lag, int order, MomentKind kind) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i + lag < u.size(); ++i) {
        double diff = u[i + lag] - u[i];
        if (kind == MomentKind::Absolute) {
            diff = std::fabs(diff);
        }
        double term = 1.0;
        for (int k = 0; k < order; ++k) {
            term *= diff;
        }
        sum += term;
        ++count;
    }
    return sum / static_cast<double>(count);
}

std::vector<double> integer_signal(Gen& gen, std::size_t n) {
    std::vector<double> samples(n);
    for (double& v : samples) {
        v = static_cast<double>(gen.integer(0, 16)) - 8.0;
    }
    return samples;
}

}  // namespace

TEST_CASE("constant signal gives zero moments of every order") {
    const VelocitySignal signal = make_signal(std::vector<double>(32, 3.7), 0.5);
    for (int order : {1, 2, 3, 5}) {
        for (MomentKind kind : {MomentKind::Signed, MomentKind::Absolute}) {
            const auto curve = structure_function(signal, order, {1, 2, 7}, kind);
            for (double v : curve.values) {
                CHECK(v == 0.0);
            }
        }
    }
}

TEST_CASE("linear ramp has exact D2 = (c * lag)^2") {
    const double c = 0.5;
    const double h = 0.25;
    std::vector<double> samples(48);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        samples[i] = static_cast<double>(i) * c;
    }
    const auto curve =
        structure_function(make_signal(samples, h), 2, {1, 2, 4, 8}, MomentKind::Signed);
    for (std::size_t j = 0; j < curve.separations.size(); ++j) {
        const double lag = curve.separations[j] / h;
        CHECK(curve.values[j] == (c * lag) * (c * lag));
        CHECK(curve.sample_counts[j] == samples.size() - static_cast<std::size_t>(lag));
    }
}

TEST_CASE("alternating 0,1 signal has D2 = 1 at lag 1") {
    const auto curve =
        structure_function(make_signal({0.0, 1.0, 0.0, 1.0}), 2, {1}, MomentKind::Signed);
    CHECK(curve.values[0] == 1.0);
    CHECK(curve.sample_counts[0] == 3);
}

TEST_CASE("structure_function validates input") {
    const VelocitySignal signal = make_signal({0.0, 1.0, 2.0, 3.0});
    CHECK_THROWS_AS(structure_function(signal, 0, {1}, MomentKind::Signed), DomainError);
    CHECK_THROWS_AS(structure_function(signal, 2, {}, MomentKind::Signed),
                    DegenerateInputError);
    CHECK_THROWS_AS(structure_function(signal, 2, {0}, MomentKind::Signed), DomainError);
    CHECK_THROWS_AS(structure_function(signal, 2, {4}, MomentKind::Signed), DomainError);
    CHECK_THROWS_AS(structure_function(signal, 2, {2, 2}, MomentKind::Signed), ContractError);
    CHECK_THROWS_AS(structure_function(signal, 2, {3, 1}, MomentKind::Signed), ContractError);
    CHECK_THROWS_AS(structure_function(make_signal({1.0}), 2, {1}, MomentKind::Signed),
                    DegenerateInputError);
    VelocitySignal bad = make_signal({0.0, 1.0, 2.0, 3.0}, 0.0);
    CHECK_THROWS_AS(structure_function(bad, 2, {1}, MomentKind::Signed), DomainError);
}

TEST_CASE("absolute and signed moments coincide exactly for even orders") {
    Gen gen(90210);
    for (int trial = 0; trial < 25; ++trial) {
        const VelocitySignal signal = make_signal(integer_signal(gen, 40));
        for (int order : {2, 4, 6}) {
            const auto s = structure_function(signal, order, {1, 3, 9}, MomentKind::Signed);
            const auto a = structure_function(signal, order, {1, 3, 9}, MomentKind::Absolute);
            for (std::size_t j = 0; j < s.values.size(); ++j) {
                CHECK(s.values[j] == a.values[j]);
            }
        }
    }
}

TEST_CASE("moments are exactly invariant under adding a constant") {
    // Integer-valued samples and shift keep every sum exact, so the
    // invariance holds bitwise, not just approximately.
    Gen gen(311);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<double> samples = integer_signal(gen, 36);
        std::vector<double> shifted = samples;
        for (double& v : shifted) {
            v += 1000.0;
        }
        for (int order : {1, 2, 3}) {
            for (MomentKind kind : {MomentKind::Signed, MomentKind::Absolute}) {
                const auto base =
                    structure_function(make_signal(samples), order, {1, 2, 5}, kind);
                const auto moved =
                    structure_function(make_signal(shifted), order, {1, 2, 5}, kind);
                for (std::size_t j = 0; j < base.values.size(); ++j) {
                    CHECK(base.values[j] == moved.values[j]);
                }
            }
        }
    }
}

TEST_CASE("reversing the signal preserves absolute moments exactly") {
    Gen gen(555);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<double> samples = integer_signal(gen, 33);
        std::vector<double> reversed(samples.rbegin(), samples.rend());
        for (int order : {1, 2, 3, 5}) {
            const auto fwd =
                structure_function(make_signal(samples), order, {1, 4}, MomentKind::Absolute);
            const auto rev =
                structure_function(make_signal(reversed), order, {1, 4}, MomentKind::Absolute);
            for (std::size_t j = 0; j < fwd.values.size(); ++j) {
                CHECK(fwd.values[j] == rev.values[j]);
            }
        }
    }
}

TEST_CASE("implementation matches the naive double-loop oracle") {
    Gen gen(8080);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = gen.integer(8, 64);
        std::vector<double> samples(n);
        for (double& v : samples) {
            v = gen.uniform(-2.0, 2.0);
        }
        const VelocitySignal signal = make_signal(samples, 0.01);
        const int order = static_cast<int>(gen.integer(1, 6));
        const MomentKind kind = gen.integer(0, 1) == 0 ? MomentKind::Signed : MomentKind::Absolute;
        std::vector<std::size_t> lags = {1, 2};
        if (n / 3 > lags.back()) {
            lags.push_back(n / 3);
        }
        if (n / 2 > lags.back()) {
            lags.push_back(n / 2);
        }
        const auto curve = structure_function(signal, order, lags, kind);
        for (std::size_t j = 0; j < lags.size(); ++j) {
            CHECK(rel_diff(curve.values[j], naive_moment(samples, lags[j], order, kind)) < 1e-12);
        }
    }
}

TEST_CASE("default_lag_grid short-signal examples") {
    const auto tiny = default_lag_grid(8, 8);
    CHECK(tiny.front() == 1);
    CHECK(tiny.back() == 2);
    for (std::size_t lag : tiny) {
        CHECK(lag <= 2);
    }
    CHECK(default_lag_grid(4, 8) == std::vector<std::size_t>{1});
}

TEST_CASE("default_lag_grid 4096-sample example") {
    const auto lags = default_lag_grid(4096, 8);
    CHECK(lags.size() >= 20);
    CHECK(lags.size() <= 30);
    CHECK(lags.front() == 1);
    CHECK(lags.back() <= 1024);
}

TEST_CASE("default_lag_grid is strictly increasing and in range for random inputs") {
    Gen gen(17);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = gen.integer(4, 100000);
        const int ppd = static_cast<int>(gen.integer(1, 24));
        const auto lags = default_lag_grid(n, ppd);
        REQUIRE(!lags.empty());
        CHECK(lags.front() >= 1);
        CHECK(lags.back() <= std::max<std::size_t>(n / 4, 1));
        for (std::size_t j = 1; j < lags.size(); ++j) {
            CHECK(lags[j] > lags[j - 1]);
        }
    }
}

TEST_CASE("default_lag_grid validates input") {
    CHECK_THROWS_AS(default_lag_grid(3, 8), DegenerateInputError);
    CHECK_THROWS_AS(default_lag_grid(4096, 0), DomainError);
}
