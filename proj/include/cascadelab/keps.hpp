#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cascadelab/spectrum.hpp"

namespace cascadelab::keps {

struct GeometryInputs {
    double hausdorff_dim = 7.0 / 3.0; // fractal dimension of the singular set, in (0, 3]
    double lambda = 2.718281828459045235360287471353; // cascade ratio feeding C_1eps
    double c0 = 0.12;                 // universal constant, > 0
    double c_k = 1.5;                 // Kolmogorov prefactor constant, > 0 (no value is given
                                      // for it upstream; 1.5 is the conventional magnitude)

    void validate() const;
};

// One closure constant: the value the stated formula produces, the boxed
// reference value, and their gap. Gaps are carried, never reconciled.
struct ConstantComparison {
    double formula_value = 0.0;
    double paper_value = 0.0;
    double abs_discrepancy = 0.0;
    std::string note;
};

struct ClosureConstants {
    ConstantComparison c_mu;        // c0 * (2/3)^{4/3} / c_k^{3/2}            vs 0.09
    ConstantComparison sigma_k_raw; // dim_H / 3                               vs 0.78
    ConstantComparison sigma_k_final; // no formula for the advection correction; raw value carried vs 1.0
    ConstantComparison sigma_eps;   // sigma_k_raw * sqrt(dim_H/3)             vs 1.3
    ConstantComparison c_1eps;      // 1 + ln(lambda)/dim_H                    vs 1.44
    ConstantComparison c_2eps;      // 1.44 + (1 - 1/dim_H) (the boxed C_1eps feeds the chain) vs 1.92
    double back_solved_c_k = 0.0;   // C_K that would make the C_mu formula hit 0.09
};

ClosureConstants constants_from_geometry(const GeometryInputs& inputs);

// nu_t = c_mu * k^2 / eps. Throws config_error when eps <= 0.
double eddy_viscosity(double k, double eps, double c_mu);

struct KEpsState {
    double time = 0.0;
    double k = 0.0;
    double eps = 0.0;
};

struct DecayRun {
    std::vector<KEpsState> series;
    std::vector<double> closed_form_k;   // k0 (1 + (C2-1) eps0 t / k0)^{-1/(C2-1)} at the sampled times
    std::vector<double> closed_form_eps; // eps0 (...)^{-C2/(C2-1)}
    double max_rel_err_k = 0.0;          // numeric vs closed form over the samples
};

// dk/dt = -eps, deps/dt = -c_2eps * eps^2 / k, classical RK4 at fixed dt.
// Requires c_2eps > 1 (no power-law decay regime otherwise) and a positive
// initial state. A state reaching k <= 0 or eps <= 0 ends the run cleanly at
// the preceding sample.
DecayRun decaying_turbulence(const KEpsState& initial, double c_2eps, double dt, double t_end,
                             std::size_t sample_stride = 1);

struct ShearBalance {
    double production = 0.0;              // P_k = nu_t * S^2
    double production_over_dissipation = 0.0;
    double equilibrium_shear = 0.0;       // S with P_k = eps: eps/(k sqrt(c_mu))
};

ShearBalance homogeneous_shear_balance(double k, double eps, double shear_rate, double c_mu);

struct SpectrumIntegrals {
    double k_total = 0.0;   // integral of E(k) dk
    double eps_total = 0.0; // nu * integral of k^2 E(k) dk
};

// Trapezoid integration over the sample range. Throws config_error on an
// empty spectrum; a single sample integrates to zero.
SpectrumIntegrals spectrum_integrals(const SpectrumSeries& spectrum, double nu);

} // namespace cascadelab::keps
