#pragma once

#include <cstddef>
#include <vector>

#include "cascadelab/spectrum.hpp"

namespace cascadelab::shell {

// What feeds shell 0. Closed: no inflow, the top shell only drains. Forced:
// a constant energy flux `inflow` enters shell 0, which is what sustains a
// nontrivial steady state dynamically.
enum class BoundaryPolicy { Closed, Forced };

struct CascadeParams {
    double lambda = 2.0; // scale ratio between adjacent shells, > 1
    double tau0 = 1.0;   // cascade time of shell 0, > 0
    double ell0 = 1.0;   // length of shell 0, > 0
    double nu = 0.0;     // kinematic viscosity, >= 0
    std::size_t n_shells = 1;
    std::vector<double> initial_energies; // empty means all-zero; else one entry per shell, each >= 0

    BoundaryPolicy boundary = BoundaryPolicy::Closed;
    double inflow = 0.0; // energy flux into shell 0 when boundary == Forced, >= 0

    double alpha() const; // lambda^(-2/3), in (0,1)
    double beta() const;  // 1/alpha = lambda^(2/3), > 1
    double nu0() const;   // nu / ell0^2

    void validate() const; // throws config_error
};

// Per-shell energies at a given time. Energies stay >= 0 through integration.
struct ShellState {
    double time = 0.0;
    std::vector<double> energies;
};

// ell[n] = lambda^(-n) * ell0, k[n] = 1/ell[n], tau[n] = tau0 * alpha^n.
struct ShellScales {
    std::vector<double> ell;
    std::vector<double> k;
    std::vector<double> tau;
};

enum class RhsKind {
    Inviscid,   // dE_n/dt = E_{n-1}/tau_{n-1} - E_n/tau_n
    Viscous,    // inviscid minus nu*k_n^2*E_n
    UniformRate // dE_n/dt = (E_{n-1} - E_n)/tau0; the system solved exactly by analytic_inviscid_solution
};

ShellScales shell_scales(const CascadeParams& params);

// E_n = alpha^n * e0 (the zero-flux-divergence fixed point of the inviscid cascade).
ShellState steady_state_energies(const CascadeParams& params, double e0);

// Forward recursion E_n = (E_{n-1}/tau_{n-1}) / (1/tau_n + nu*k_n^2).
// Reduces to steady_state_energies when nu == 0.
ShellState steady_viscous_energies(const CascadeParams& params, double e0);

// Samples (k_n, E_n/k_n). Throws config_error on mismatched lengths.
SpectrumSeries spectrum_from_shells(const ShellState& state, const ShellScales& scales);

std::vector<double> inviscid_rhs(const ShellState& state, const CascadeParams& params);
std::vector<double> viscous_rhs(const ShellState& state, const CascadeParams& params);
std::vector<double> uniform_rate_rhs(const ShellState& state, const CascadeParams& params);
std::vector<double> rhs(const ShellState& state, const CascadeParams& params, RhsKind kind);

// Pi_n = E_n / tau_n. Throws config_error on mismatched lengths.
std::vector<double> energy_flux(const ShellState& state, const ShellScales& scales);

// Closed-form time-dependent solution E_n(t) = e^{-t/tau0} sum_{k=0..n} (t/tau0)^k/k! E_{n-k}(0),
// i.e. alpha^n F_n(t) with F_n = E_n/alpha^n and the alpha/beta factors cancelled pairwise.
// Terms are accumulated by the ratio recurrence term *= (t/tau0)/(k+1), so no factorial overflow.
// Note: this is the closed form of the uniform-rate system (RhsKind::UniformRate); it is NOT a
// solution of the inviscid cascade for lambda > 1. integrate() lets both be run and compared.
ShellState analytic_inviscid_solution(const ShellState& initial, const CascadeParams& params, double t);

// Re_n = 1/(nu * tau_n * k_n^2) = Re_0 * lambda^(-4n/3). Throws config_error when nu == 0.
double local_reynolds(const CascadeParams& params, std::size_t n);

// Real-valued shell index n* = (3/4) ln(1/(nu0*tau0)) / ln(lambda) where Re ~ 1.
// Uses nu0 = nu/ell0^2 so the expression is dimensionless. Requires 0 < nu0*tau0 < 1.
double dissipation_shell_index(const CascadeParams& params);

// tau_n * nu * k_n^2 = nu*tau0*lambda^(4n/3)/ell0^2. Strictly increasing in n.
double timescale_ratio(const CascadeParams& params, std::size_t n);

// Inflow that makes steady_state_energies an exact fixed point of the inviscid rhs: e0/tau0.
double steady_inflow(const CascadeParams& params, double e0);

// Inflow that makes steady_viscous_energies an exact fixed point of the viscous rhs:
// e0 * (1/tau0 + nu*k_0^2).
double steady_viscous_inflow(const CascadeParams& params, double e0);

// Shell window used for dissipation-range slope fits: the five shells centred on
// round(n*) (a k-span of lambda^4, slightly over one decade for lambda = 2). Beyond
// this window the steady recursion's flux collapses super-exponentially and the
// spectrum has no power-law range left to fit.
struct ShellBand {
    std::size_t lo = 0;
    std::size_t hi = 0; // inclusive
};
ShellBand dissipation_fit_band(const CascadeParams& params);

// Fixed-step 4th-order integration with the stiff per-shell linear decay term
// handled by an exact exponential integrating factor (Viscous: nu*k_n^2; other
// kinds have no stiff factor and reduce to classical RK4).
//
// The explicit part must satisfy dt <= 0.1 * min_n tau_n (dt <= 0.1 * tau0 for
// UniformRate); violations throw config_error rather than silently adjusting.
// A step that would drive a shell below -1e-12 * (initial total energy) throws
// instability_error naming the shell and a suggested dt; smaller undershoots
// are clamped to zero.
//
// Returns states sampled every `sample_stride` steps, always including the
// initial and final state. Deterministic: identical inputs give bit-identical
// output on the same platform.
std::vector<ShellState> integrate(const ShellState& initial, const CascadeParams& params,
                                  RhsKind kind, double dt, double t_end,
                                  std::size_t sample_stride = 1);

} // namespace cascadelab::shell
