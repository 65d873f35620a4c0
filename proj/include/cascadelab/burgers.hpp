#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace cascadelab::burgers {

enum class ProfileKind {
    Sin,     // amplitude * sin(2*pi*mode*x/domain_length + phase)
    Bump,    // compactly supported amplitude * exp(1 - 1/(1-s^2)), s = (x-center)/width
    File,    // plain text, one value per line, count == grid_points
    Samples, // caller-supplied vector
};

struct InitialCondition {
    ProfileKind kind = ProfileKind::Sin;
    double amplitude = 1.0;
    double mode = 1.0;
    double phase = 0.0;
    double center = 0.0;
    double width = 1.0;
    double noise_amp = 0.0; // optional seeded uniform perturbation, 0 disables
    std::uint64_t seed = 0;
    std::string file_path;
    std::vector<double> samples;
};

struct BurgersConfig {
    double domain_length = 6.283185307179586476925286766559; // 2*pi
    double x0 = 0.0;             // left edge; grid is x_i = x0 + i*dx, periodic
    std::size_t grid_points = 256; // power of two, >= 16
    double nu = 1e-2;            // > 0
    double dt = 1e-3;
    double t_end = 1.0;
    std::size_t sample_stride = 1;
    InitialCondition ic;

    double dx() const { return domain_length / static_cast<double>(grid_points); }

    void validate() const;                  // static invariants (throws config_error)
    std::vector<double> build_initial() const; // evaluates the IC on the grid (may read ic.file_path)

    // dt <= 0.5 * min(dx/max|u0|, dx^2/(2 nu)), checked against the initial field.
    void check_cfl(const std::vector<double>& u0) const;
};

struct BurgersState {
    double time = 0.0;
    std::vector<double> u;
};

struct BurgersDiagnostics {
    double time = 0.0;
    double kinetic_energy = 0.0;        // K = integral of u^2/2
    double dissipation = 0.0;           // D = nu * integral of (du/dx)^2
    double transport_residual_l2 = 0.0; // L2 norm of dE/dt + u dE/dx + nu (du/dx)^2
    // the identity above omits the diffusion flux: multiplying the equation by
    // u gives dE/dt + u dE/dx = nu d2E/dx2 - nu (du/dx)^2. The full residual
    // includes the nu d2E/dx2 term and is the one that vanishes under
    // refinement; the literal residual converges to ||nu d2E/dx2|| instead.
    double transport_residual_full_l2 = 0.0;
    double diffusion_flux_l2 = 0.0;     // L2 norm of nu d2E/dx2
    double critical_functional = 0.0;   // Phi = integral of |u dE/dx|^2
    double grad_norm = 0.0;             // L2 norm of du/dx
    double max_abs_grad = 0.0;
    double min_grad = 0.0;              // signed minimum of du/dx
};

// One RK4 step of du/dt = -d/dx(u^2/2) + nu d2u/dx2 with central differences
// and periodic wrap. Throws instability_error if the step produces a
// non-finite value.
BurgersState step(const BurgersState& state, const BurgersConfig& config);

// Diagnostics across a pair of states one step apart: dE/dt is the centred
// difference over the pair, spatial terms are the average of the two states,
// integrals use the uniform-grid rule. dE/dx is computed as u*du/dx with the
// same central stencil as the flux derivative.
BurgersDiagnostics diagnostics(const BurgersState& prev, const BurgersState& next,
                               const BurgersConfig& config);

// Instantaneous fields of a single state; transport_residual_l2 is 0 by
// convention (it needs a pair of states).
BurgersDiagnostics instantaneous_diagnostics(const BurgersState& state, const BurgersConfig& config);

struct BurgersRun {
    std::vector<BurgersDiagnostics> history; // one record per sampled step, plus the t=0 record
    std::vector<BurgersState> snapshots;     // filled when snapshot_stride > 0

    // summary over every step, not just sampled ones
    double min_grad_overall = 0.0;
    double time_of_min_grad = 0.0;
    double max_abs_grad_overall = 0.0;
    double max_grad_norm = 0.0;
    double time_of_max_grad_norm = 0.0;
    double max_energy_step_increase = 0.0; // max over steps of (K_next - K_prev)/K(0), 0 if monotone
    double mean_u_drift = 0.0;             // |mean(u_final) - mean(u0)|
    std::size_t n_steps = 0;
};

BurgersRun run_with_history(const BurgersConfig& config, std::size_t snapshot_stride = 0);

} // namespace cascadelab::burgers
