#include <cmath>
#include <vector>

#include "doctest.h"

#include "cascadelab/errors.hpp"
#include "cascadelab/spectrum.hpp"

using namespace cascadelab;

namespace {

SpectrumSeries power_law(double exponent, double k0, double ratio, std::size_t n) {
    SpectrumSeries s;
    s.source_tag = "test";
    double k = k0;
    for (std::size_t i = 0; i < n; ++i) {
        s.samples.push_back({k, std::pow(k, exponent)});
        k *= ratio;
    }
    return s;
}

} // namespace

TEST_CASE("fit_loglog_slope recovers an exact power law") {
    const auto s = power_law(-5.0 / 3.0, 1.0, 2.0, 10);
    const auto fit = fit_loglog_slope(s, 0.5, 1e6);
    CHECK(fit.n_used == 10);
    CHECK(std::abs(fit.slope - (-5.0 / 3.0)) < 1e-12);
    CHECK(fit.rms_residual < 1e-13);
}

TEST_CASE("fit_loglog_slope on a constant spectrum gives slope 0") {
    SpectrumSeries s;
    for (int i = 1; i <= 8; ++i) s.samples.push_back({static_cast<double>(i), 3.5});
    const auto fit = fit_loglog_slope(s, 0.0, 100.0);
    CHECK(std::abs(fit.slope) < 1e-14);
}

TEST_CASE("fit_loglog_slope respects the k window") {
    const auto s = power_law(-2.0, 1.0, 2.0, 12);
    const auto fit = fit_loglog_slope(s, 4.0, 64.0);
    CHECK(fit.n_used == 5); // k = 4, 8, 16, 32, 64
    CHECK(std::abs(fit.slope - (-2.0)) < 1e-12);
}

TEST_CASE("fit_loglog_slope error paths") {
    const auto s = power_law(-1.0, 1.0, 2.0, 10);
    CHECK_THROWS_AS(fit_loglog_slope(s, 100.0, 200.0), config_error); // 2 samples in range
    SpectrumSeries zero;
    for (int i = 1; i <= 5; ++i) zero.samples.push_back({static_cast<double>(i), 0.0});
    CHECK_THROWS_AS(fit_loglog_slope(zero, 0.0, 10.0), config_error);
}

TEST_CASE("fit is invariant under amplitude scaling (property)") {
    // slope must not change when E is multiplied by a constant
    unsigned state = 12345;
    auto next = [&]() {
        state = state * 1664525u + 1013904223u;
        return static_cast<double>(state >> 8) / static_cast<double>(1u << 24);
    };
    for (int trial = 0; trial < 20; ++trial) {
        const double expo = -3.0 + 4.0 * next();
        const double scale = 0.01 + 100.0 * next();
        auto s = power_law(expo, 1.0, 1.7, 9);
        auto scaled = s;
        for (auto& x : scaled.samples) x.energy *= scale;
        const auto f1 = fit_loglog_slope(s, 0.0, 1e9);
        const auto f2 = fit_loglog_slope(scaled, 0.0, 1e9);
        CHECK(std::abs(f1.slope - f2.slope) < 1e-11);
    }
}

TEST_CASE("SpectrumSeries validation") {
    SpectrumSeries bad;
    bad.samples = {{1.0, 1.0}, {1.0, 0.5}};
    CHECK_THROWS_AS(bad.validate(), config_error);
    SpectrumSeries neg;
    neg.samples = {{1.0, -0.5}};
    CHECK_THROWS_AS(neg.validate(), config_error);
}
