#include <cmath>
#include <vector>

#include "doctest.h"

#include "cascadelab/errors.hpp"
#include "cascadelab/shell_model.hpp"

using namespace cascadelab;
using namespace cascadelab::shell;

namespace {

CascadeParams base(double lambda, std::size_t n, double nu = 0.0) {
    CascadeParams p;
    p.lambda = lambda;
    p.n_shells = n;
    p.nu = nu;
    return p;
}

ShellState delta_state(std::size_t n, std::size_t at = 0, double e = 1.0) {
    ShellState st{0.0, std::vector<double>(n, 0.0)};
    st.energies[at] = e;
    return st;
}

} // namespace

TEST_CASE("uniform-rate integration matches the closed form to 1e-6") {
    auto p = base(2.0, 20);
    const auto initial = delta_state(20);
    const auto series = integrate(initial, p, RhsKind::UniformRate, 1e-3, 5.0, 100);
    double worst = 0.0;
    for (const auto& s : series) {
        const auto exact = analytic_inviscid_solution(initial, p, s.time);
        double scale = 0.0, gap = 0.0;
        for (std::size_t n = 0; n < 20; ++n) {
            scale = std::max(scale, std::abs(exact.energies[n]));
            gap = std::max(gap, std::abs(exact.energies[n] - s.energies[n]));
        }
        if (scale > 0.0) worst = std::max(worst, gap / scale);
    }
    CHECK(worst < 1e-6);

    // per-shell relative error at the final time
    const auto exact = analytic_inviscid_solution(initial, p, series.back().time);
    for (std::size_t n = 0; n < 20; ++n) {
        const double rel =
            std::abs(series.back().energies[n] - exact.energies[n]) / exact.energies[n];
        CHECK(rel < 1e-6);
    }
}

TEST_CASE("the closed form does NOT solve the lambda-graded cascade") {
    // the closed form corresponds to the uniform-rate system; against the
    // graded inviscid cascade the gap at t = tau0 is order 20 percent
    auto p = base(2.0, 10);
    const auto initial = delta_state(10);
    const auto sc = shell_scales(p);
    const auto series = integrate(initial, p, RhsKind::Inviscid, 0.05 * sc.tau.back(), 1.0, 1u << 30);
    const auto closed = analytic_inviscid_solution(initial, p, series.back().time);

    // shell 1: graded solution (e^-t - e^-bt)/(b-1) vs closed-form t e^-t
    const double b = p.beta();
    const double graded = (std::exp(-1.0) - std::exp(-b)) / (b - 1.0);
    CHECK(series.back().energies[1] == doctest::Approx(graded).epsilon(1e-6));
    const double gap = std::abs(closed.energies[1] - series.back().energies[1]) /
                       series.back().energies[1];
    CHECK(gap > 0.2);
}

TEST_CASE("inviscid integration conserves the forced steady state") {
    auto p = base(2.0, 10);
    p.boundary = BoundaryPolicy::Forced;
    p.inflow = steady_inflow(p, 1.0);
    const auto st = steady_state_energies(p, 1.0);
    ShellState initial{0.0, st.energies};
    const auto series = integrate(initial, p, RhsKind::Inviscid, 0.05 * shell_scales(p).tau.back(),
                                  0.5, 1u << 30);
    for (std::size_t n = 0; n < 10; ++n)
        CHECK(series.back().energies[n] == doctest::Approx(st.energies[n]).epsilon(1e-12));
}

TEST_CASE("viscous integration: deep-shell exponential decay") {
    // isolated deep shell with nu k^2 tau >= 100 follows exp(-nu k^2 t) to 5%
    auto p = base(2.0, 21, 1e-6);
    const auto sc = shell_scales(p);
    const std::size_t n = 20;
    const double nuk2 = p.nu * sc.k[n] * sc.k[n];
    REQUIRE(nuk2 * sc.tau[n] >= 100.0);

    const auto initial = delta_state(21, n, 1.0);
    const double t_decade = std::log(10.0) / nuk2;
    const double dt = t_decade / 25.0;
    REQUIRE(dt <= 0.1 * sc.tau.back());
    const auto series = integrate(initial, p, RhsKind::Viscous, dt, t_decade, 5);
    for (const auto& s : series) {
        const double expected = std::exp(-nuk2 * s.time);
        CHECK(std::abs(s.energies[n] - expected) <= 0.05 * expected);
    }
    CHECK(series.back().energies[n] < 0.11); // one decade reached
}

TEST_CASE("zero initial state stays zero") {
    auto p = base(2.0, 8, 1e-4);
    ShellState z{0.0, std::vector<double>(8, 0.0)};
    const auto series = integrate(z, p, RhsKind::Viscous, 0.01 * shell_scales(p).tau.back(), 1.0, 50);
    for (const auto& s : series)
        for (double e : s.energies) CHECK(e == 0.0);
}

TEST_CASE("integration contract errors") {
    auto p = base(2.0, 12);
    const auto initial = delta_state(12);
    const auto sc = shell_scales(p);
    SUBCASE("stability guard rejects large dt") {
        CHECK_THROWS_AS(integrate(initial, p, RhsKind::Inviscid, 0.2 * sc.tau.back(), 1.0),
                        config_error);
    }
    SUBCASE("bad dt and t_end") {
        CHECK_THROWS_AS(integrate(initial, p, RhsKind::Inviscid, 0.0, 1.0), config_error);
        ShellState late{2.0, initial.energies};
        CHECK_THROWS_AS(integrate(late, p, RhsKind::Inviscid, 1e-3, 1.0), config_error);
    }
    SUBCASE("uniform-rate guard uses tau0") {
        // dt above 0.1 min tau_n but below 0.1 tau0 is fine for the uniform system
        const double dt = 0.09 * p.tau0;
        CHECK(dt > 0.1 * sc.tau.back());
        CHECK_NOTHROW(integrate(initial, p, RhsKind::UniformRate, dt, 0.5));
    }
}

TEST_CASE("non-negativity holds across random configurations (property)") {
    unsigned state = 777;
    auto next = [&]() {
        state = state * 1664525u + 1013904223u;
        return static_cast<double>(state >> 8) / static_cast<double>(1u << 24);
    };
    for (int trial = 0; trial < 12; ++trial) {
        auto p = base(1.3 + 2.0 * next(), 6 + static_cast<std::size_t>(6.0 * next()),
                      next() < 0.5 ? 0.0 : 1e-4 * next());
        if (next() < 0.5) {
            p.boundary = BoundaryPolicy::Forced;
            p.inflow = next();
        }
        ShellState initial{0.0, {}};
        initial.energies.resize(p.n_shells);
        for (auto& e : initial.energies) e = next() < 0.3 ? 0.0 : next();
        const auto sc = shell_scales(p);
        const auto kind = p.nu > 0.0 ? RhsKind::Viscous : RhsKind::Inviscid;
        const auto series = integrate(initial, p, kind, 0.05 * sc.tau.back(), 0.3, 10);
        for (const auto& s : series)
            for (double e : s.energies) CHECK(e >= 0.0);
    }
}

TEST_CASE("integration is deterministic") {
    auto p = base(2.0, 15, 1e-5);
    const auto initial = delta_state(15);
    const double dt = 0.05 * shell_scales(p).tau.back();
    const auto a = integrate(initial, p, RhsKind::Viscous, dt, 0.4, 7);
    const auto b = integrate(initial, p, RhsKind::Viscous, dt, 0.4, 7);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t n = 0; n < 15; ++n) CHECK(a[i].energies[n] == b[i].energies[n]);
}
