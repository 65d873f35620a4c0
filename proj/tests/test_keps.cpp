#include <cmath>
#include <numbers>

#include "doctest.h"

#include "cascadelab/errors.hpp"
#include "cascadelab/keps.hpp"

using namespace cascadelab;
using namespace cascadelab::keps;

TEST_CASE("constants from geometry") {
    GeometryInputs in; // dim 7/3, lambda e, c0 0.12, c_k 1.5
    const auto k = constants_from_geometry(in);

    SUBCASE("sigma_k raw is dim/3 = 7/9") {
        CHECK(k.sigma_k_raw.formula_value == doctest::Approx(7.0 / 9.0).epsilon(1e-15));
        CHECK(k.sigma_k_raw.paper_value == 0.78);
        CHECK(k.sigma_k_raw.abs_discrepancy < 0.01);
        CHECK(k.sigma_k_final.formula_value == k.sigma_k_raw.formula_value);
        CHECK(k.sigma_k_final.paper_value == 1.0);
    }
    SUBCASE("C_1eps at lambda = e is 1 + 3/7") {
        CHECK(k.c_1eps.formula_value == doctest::Approx(1.0 + 3.0 / 7.0).epsilon(1e-15));
        CHECK(std::abs(k.c_1eps.formula_value - 1.4286) < 1e-4);
        CHECK(k.c_1eps.abs_discrepancy == doctest::Approx(1.44 - (1.0 + 3.0 / 7.0)).epsilon(1e-10));
    }
    SUBCASE("C_2eps carries the source's own arithmetic, which misses its boxed value") {
        CHECK(k.c_2eps.formula_value == doctest::Approx(1.44 + 4.0 / 7.0).epsilon(1e-15)); // 2.0114
        CHECK(k.c_2eps.paper_value == 1.92);
        CHECK(k.c_2eps.abs_discrepancy == doctest::Approx(0.091428571).epsilon(1e-6));
    }
    SUBCASE("sigma_eps formula lands far from the boxed 1.3") {
        const double expected = (7.0 / 9.0) * std::sqrt(7.0 / 9.0); // ~0.686
        CHECK(k.sigma_eps.formula_value == doctest::Approx(expected).epsilon(1e-15));
        CHECK(k.sigma_eps.abs_discrepancy > 0.6);
    }
    SUBCASE("C_mu depends on C_K; the back-solved C_K is reported") {
        GeometryInputs unit = in;
        unit.c_k = 1.0;
        const auto ku = constants_from_geometry(unit);
        CHECK(ku.c_mu.formula_value ==
              doctest::Approx(0.12 * std::pow(2.0 / 3.0, 4.0 / 3.0)).epsilon(1e-15)); // ~0.0699
        CHECK(std::abs(ku.c_mu.formula_value - 0.0699) < 1e-4);
        CHECK(ku.back_solved_c_k == doctest::Approx(0.845).epsilon(1e-3));
        // with the back-solved C_K the formula reproduces the boxed value
        GeometryInputs solved = in;
        solved.c_k = ku.back_solved_c_k;
        CHECK(constants_from_geometry(solved).c_mu.formula_value ==
              doctest::Approx(0.09).epsilon(1e-12));
    }
    SUBCASE("pure function: repeated evaluation is bit-identical") {
        const auto again = constants_from_geometry(in);
        CHECK(again.c_mu.formula_value == k.c_mu.formula_value);
        CHECK(again.sigma_eps.formula_value == k.sigma_eps.formula_value);
        CHECK(again.c_2eps.formula_value == k.c_2eps.formula_value);
        CHECK(k.c_2eps.abs_discrepancy ==
              std::abs(k.c_2eps.formula_value - k.c_2eps.paper_value));
    }
    SUBCASE("input validation") {
        GeometryInputs bad = in;
        bad.hausdorff_dim = 3.5;
        CHECK_THROWS_AS(constants_from_geometry(bad), config_error);
        bad = in;
        bad.lambda = 1.0;
        CHECK_THROWS_AS(constants_from_geometry(bad), config_error);
    }
}

TEST_CASE("eddy viscosity") {
    CHECK(eddy_viscosity(1.0, 1.0, 0.09) == 0.09);
    CHECK(eddy_viscosity(2.0, 1.0, 0.09) == doctest::Approx(4.0 * 0.09)); // quadratic in k
    CHECK(eddy_viscosity(0.0, 1.0, 0.09) == 0.0);
    CHECK_THROWS_AS(eddy_viscosity(1.0, 0.0, 0.09), config_error);
    CHECK_THROWS_AS(eddy_viscosity(1.0, -1.0, 0.09), config_error);
}

TEST_CASE("decaying turbulence") {
    SUBCASE("matches the closed form to 1e-6 over t in [0, 10]") {
        const auto run = decaying_turbulence({0.0, 1.0, 1.0}, 1.92, 1e-3, 10.0, 100);
        CHECK(run.max_rel_err_k < 1e-6);
        CHECK(run.series.back().k == doctest::Approx(std::pow(10.2, -1.0 / 0.92)).epsilon(1e-6));
        CHECK(run.series.back().k == doctest::Approx(0.0801).epsilon(1e-3));
    }
    SUBCASE("timescale k/eps grows linearly at rate C2 - 1") {
        const auto run = decaying_turbulence({0.0, 1.0, 1.0}, 1.92, 1e-3, 10.0, 500);
        for (std::size_t i = 1; i < run.series.size(); ++i) {
            const auto& a = run.series[i - 1];
            const auto& b = run.series[i];
            const double rate = (b.k / b.eps - a.k / a.eps) / (b.time - a.time);
            CHECK(std::abs(rate - 0.92) < 1e-6);
        }
    }
    SUBCASE("late-time decay exponent approaches -1/(C2-1)") {
        const double c2 = 1.92;
        const double t_end = 1000.0;
        const auto run = decaying_turbulence({0.0, 1.0, 1.0}, c2, 5e-3, t_end, 100);
        SpectrumSeries s;
        for (const auto& st : run.series)
            if (st.time >= t_end / 10.0) s.samples.push_back({st.time, st.k});
        const auto fit = fit_loglog_slope(s, 0.0, 2.0 * t_end);
        const double expected = -1.0 / (c2 - 1.0); // ~ -1.087
        CHECK(std::abs(fit.slope - expected) < 0.01 * std::abs(expected));
    }
    SUBCASE("contract violations") {
        CHECK_THROWS_AS(decaying_turbulence({0.0, 1.0, 0.0}, 1.92, 1e-3, 1.0), config_error);
        CHECK_THROWS_AS(decaying_turbulence({0.0, 0.0, 1.0}, 1.92, 1e-3, 1.0), config_error);
        CHECK_THROWS_AS(decaying_turbulence({0.0, 1.0, 1.0}, 1.0, 1e-3, 1.0), config_error);
        CHECK_THROWS_AS(decaying_turbulence({0.0, 1.0, 1.0}, 0.9, 1e-3, 1.0), config_error);
    }
}

TEST_CASE("homogeneous shear balance") {
    const auto b = homogeneous_shear_balance(1.0, 1.0, 10.0 / 3.0, 0.09);
    CHECK(b.equilibrium_shear == doctest::Approx(1.0 / 0.3).epsilon(1e-14));
    const auto at_eq = homogeneous_shear_balance(1.0, 1.0, b.equilibrium_shear, 0.09);
    CHECK(at_eq.production_over_dissipation == doctest::Approx(1.0).epsilon(1e-13));
    // production scales as S^2
    const auto s1 = homogeneous_shear_balance(0.7, 1.3, 2.0, 0.09);
    const auto s2 = homogeneous_shear_balance(0.7, 1.3, 4.0, 0.09);
    CHECK(s2.production == doctest::Approx(4.0 * s1.production).epsilon(1e-13));
}

TEST_CASE("spectrum integrals") {
    SUBCASE("k^(-5/3) on [1, 64] converges to the analytic value at 2nd order") {
        const double exact = 1.5 * (1.0 - std::pow(64.0, -2.0 / 3.0)); // 1.40625
        CHECK(exact == doctest::Approx(1.40625).epsilon(1e-12));
        double prev_err = 0.0;
        for (int level = 0; level < 3; ++level) {
            const std::size_t n = 256u << level;
            SpectrumSeries s;
            for (std::size_t i = 0; i <= n; ++i) {
                const double k = 1.0 + 63.0 * static_cast<double>(i) / static_cast<double>(n);
                s.samples.push_back({k, std::pow(k, -5.0 / 3.0)});
            }
            const double err = std::abs(spectrum_integrals(s, 0.0).k_total - exact);
            if (level > 0) CHECK(prev_err / err > 3.5); // ~4x per halving
            prev_err = err;
        }
    }
    SUBCASE("single sample integrates to zero") {
        SpectrumSeries s;
        s.samples.push_back({2.0, 5.0});
        const auto ints = spectrum_integrals(s, 1.0);
        CHECK(ints.k_total == 0.0);
        CHECK(ints.eps_total == 0.0);
    }
    SUBCASE("nu = 0 kills the dissipation integral") {
        SpectrumSeries s;
        for (int i = 1; i <= 10; ++i) s.samples.push_back({static_cast<double>(i), 1.0});
        const auto ints = spectrum_integrals(s, 0.0);
        CHECK(ints.k_total == doctest::Approx(9.0));
        CHECK(ints.eps_total == 0.0);
    }
    SUBCASE("empty spectrum is rejected") {
        CHECK_THROWS_AS(spectrum_integrals(SpectrumSeries{}, 1.0), config_error);
    }
}
