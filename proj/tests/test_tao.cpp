#include <cmath>
#include <vector>

#include "doctest.h"

#include "cascadelab/errors.hpp"
#include "cascadelab/tao_cascade.hpp"

using namespace cascadelab;
using namespace cascadelab::tao;

namespace {

TaoParams two_mode(double c, double nu) {
    TaoParams p;
    p.n_modes = 2;
    p.coefficients = {c, c};
    p.nu = nu;
    p.wavenumbers = {1.0, 2.0};
    p.initial_amplitudes = {1.0, 0.0};
    return p;
}

} // namespace

TEST_CASE("tao rhs") {
    SUBCASE("upstream drive with no viscosity") {
        const auto p = two_mode(1.0, 0.0);
        TaoState st{0.0, {1.0, 0.0}};
        const auto r = tao_rhs(st, p);
        CHECK(r[0] == 0.0); // X_{-1} == 0
        CHECK(r[1] == 1.0);
    }
    SUBCASE("pure decay rates") {
        auto p = two_mode(0.0, 0.1);
        TaoState st{0.0, {2.0, 3.0}};
        const auto r = tao_rhs(st, p);
        CHECK(r[0] == doctest::Approx(-0.1 * 1.0 * 2.0));
        CHECK(r[1] == doctest::Approx(-0.1 * 4.0 * 3.0));
    }
    SUBCASE("zero state, zero rates") {
        const auto p = two_mode(1.0, 0.5);
        TaoState st{0.0, {0.0, 0.0}};
        for (double v : tao_rhs(st, p)) CHECK(v == 0.0);
    }
    SUBCASE("negative coefficients rejected") {
        auto p = two_mode(-1.0, 0.0);
        TaoState st{0.0, {1.0, 0.0}};
        CHECK_THROWS_AS(tao_rhs(st, p), config_error);
    }
}

TEST_CASE("frozen upstream gives linear growth") {
    // C_0 = 0 pins X_0; X_1 then grows as C X_0^2 t
    TaoParams p = two_mode(1.0, 0.0);
    p.coefficients = {0.0, 1.0};
    TaoState initial{0.0, {1.0, 0.0}};
    const auto series = integrate_tao(initial, p, 1e-3, 2.0, 100);
    for (const auto& s : series) {
        CHECK(s.amplitudes[0] == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(s.amplitudes[1] == doctest::Approx(s.time).epsilon(1e-12));
    }
}

TEST_CASE("pure decay matches the closed form") {
    TaoParams p;
    p.n_modes = 4;
    p.coefficients = {0.0, 0.0, 0.0, 0.0};
    p.nu = 0.05;
    p.wavenumbers = {1.0, 2.0, 4.0, 8.0};
    p.initial_amplitudes = {1.0, 0.5, 0.25, 2.0};
    TaoState initial{0.0, p.initial_amplitudes};
    const auto series = integrate_tao(initial, p, 0.01, 3.0, 30);
    for (const auto& s : series)
        for (std::size_t i = 0; i < 4; ++i) {
            const double kk = p.wavenumbers[i];
            const double expected = p.initial_amplitudes[i] * std::exp(-p.nu * kk * kk * s.time);
            CHECK(std::abs(s.amplitudes[i] - expected) <= 1e-8 * (1.0 + expected));
        }
}

TEST_CASE("inviscid amplitudes are monotone nondecreasing downstream") {
    shell::CascadeParams sp;
    sp.lambda = 2.0;
    sp.n_shells = 8;
    const auto scales = shell::shell_scales(sp);
    TaoParams p;
    p.n_modes = 8;
    p.nu = 0.0;
    p.wavenumbers = scales.k;
    p.coefficients.resize(8);
    for (std::size_t i = 0; i < 8; ++i) p.coefficients[i] = 1.0 / scales.tau[i];
    p.initial_amplitudes.assign(8, 0.0);
    p.initial_amplitudes[0] = 1.0;
    TaoState initial{0.0, p.initial_amplitudes};
    const auto series = integrate_tao(initial, p, 1e-3, 1.0, 10);
    for (std::size_t i = 1; i < series.size(); ++i)
        for (std::size_t nmode = 0; nmode < 8; ++nmode)
            CHECK(series[i].amplitudes[nmode] >= series[i - 1].amplitudes[nmode] - 1e-12);
}

TEST_CASE("inviscid nonnegativity and determinism (property)") {
    unsigned state = 4242;
    auto next = [&]() {
        state = state * 1664525u + 1013904223u;
        return static_cast<double>(state >> 8) / static_cast<double>(1u << 24);
    };
    for (int trial = 0; trial < 10; ++trial) {
        TaoParams p;
        p.n_modes = 3 + static_cast<std::size_t>(5.0 * next());
        p.nu = 0.0;
        p.coefficients.resize(p.n_modes);
        p.wavenumbers.resize(p.n_modes);
        p.initial_amplitudes.resize(p.n_modes);
        for (std::size_t i = 0; i < p.n_modes; ++i) {
            p.coefficients[i] = 2.0 * next();
            p.wavenumbers[i] = std::pow(2.0, static_cast<double>(i));
            p.initial_amplitudes[i] = next() < 0.3 ? 0.0 : next();
        }
        TaoState initial{0.0, p.initial_amplitudes};
        const auto a = integrate_tao(initial, p, 0.01, 0.5, 10);
        const auto b = integrate_tao(initial, p, 0.01, 0.5, 10);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < p.n_modes; ++j) {
                CHECK(a[i].amplitudes[j] >= 0.0);
                CHECK(a[i].amplitudes[j] == b[i].amplitudes[j]);
            }
    }
}

TEST_CASE("t_end equal to start returns the initial state only") {
    const auto p = two_mode(1.0, 0.0);
    TaoState initial{0.0, {1.0, 0.5}};
    const auto series = integrate_tao(initial, p, 1e-3, 0.0, 1);
    CHECK(series.size() == 1);
    CHECK(series[0].amplitudes[0] == 1.0);
}

TEST_CASE("energy correspondence") {
    shell::CascadeParams sp;
    sp.lambda = 2.0;
    sp.n_shells = 10;
    const auto steady = shell::steady_state_energies(sp, 1.0);

    SUBCASE("initial cascade terms identify exactly") {
        const auto tp = params_from_shell(sp, steady.energies);
        const auto scales = shell::shell_scales(sp);
        TaoState ti{0.0, tp.initial_amplitudes};
        shell::ShellState si{0.0, steady.energies};
        const double dt = 0.05 * scales.tau.back();
        const auto tao_series = integrate_tao(ti, tp, dt, 0.2, 50);
        const auto shell_series =
            shell::integrate(si, sp, shell::RhsKind::Inviscid, dt, 0.2, 50);
        const auto rep = energy_correspondence(tao_series, tp, shell_series, sp);
        REQUIRE(rep.initial_terms.size() == 10);
        for (std::size_t n = 1; n < 10; ++n) {
            CHECK(rep.initial_terms[n].abs_diff <= 1e-12);
            CHECK(rep.initial_terms[n].shell_cascade_term ==
                  doctest::Approx(steady.energies[n - 1] / scales.tau[n - 1]));
        }
        // at t = 0 the energies coincide up to the sqrt/square round trip
        CHECK(rep.max_rel_diff.front() < 1e-15);
        // the trajectories drift apart (the amplitude ODE has no drain term)
        CHECK(rep.max_rel_diff.back() > 1e-3);
    }

    SUBCASE("zero states give zero differences") {
        TaoParams tp = params_from_shell(sp, std::vector<double>(10, 0.0));
        TaoState ti{0.0, tp.initial_amplitudes};
        shell::ShellState si{0.0, std::vector<double>(10, 0.0)};
        const double dt = 0.05 * shell::shell_scales(sp).tau.back();
        const auto ts = integrate_tao(ti, tp, dt, 0.1, 5);
        const auto ss = shell::integrate(si, sp, shell::RhsKind::Inviscid, dt, 0.1, 5);
        const auto rep = energy_correspondence(ts, ss);
        for (double v : rep.max_rel_diff) CHECK(v == 0.0);
    }

    SUBCASE("pure decay surfaces the factor-2 rate gap under E = X^2") {
        // make the cascade term negligible so both systems decay viscously
        shell::CascadeParams slow = sp;
        slow.tau0 = 1e9;
        slow.nu = 0.05;
        slow.n_shells = 3;
        const std::vector<double> e0 = {1.0, 1.0, 1.0};
        auto tp = params_from_shell(slow, e0);
        tp.coefficients.assign(3, 0.0);
        const double dt = 0.01;
        TaoState ti{0.0, tp.initial_amplitudes};
        shell::ShellState si{0.0, e0};
        const auto ts = integrate_tao(ti, tp, dt, 2.0, 20);
        const auto ss = shell::integrate(si, slow, shell::RhsKind::Viscous, dt, 2.0, 20);
        const auto rep = energy_correspondence(ts, ss);
        CHECK(rep.energy_decay_rate_factor == 2.0);
        // E_tao = e^{-2 nu k^2 t} vs E_shell ~ e^{-nu k^2 t}:
        // relative gap 1 - e^{-nu k^2 t}
        const double t = rep.times.back();
        const double k0 = 1.0 / slow.ell0;
        const double expected = 1.0 - std::exp(-slow.nu * k0 * k0 * t);
        CHECK(rep.rel_diff.back()[0] == doctest::Approx(expected).epsilon(1e-6));
    }

    SUBCASE("mismatched grids are rejected") {
        const auto tp = params_from_shell(sp, steady.energies);
        TaoState ti{0.0, tp.initial_amplitudes};
        shell::ShellState si{0.0, steady.energies};
        const double dt = 0.05 * shell::shell_scales(sp).tau.back();
        const auto ts = integrate_tao(ti, tp, dt, 0.1, 5);
        const auto ss = shell::integrate(si, sp, shell::RhsKind::Inviscid, 0.5 * dt, 0.1, 5);
        CHECK_THROWS_AS(energy_correspondence(ts, ss), config_error);
    }
}
