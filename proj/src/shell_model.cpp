#include "cascadelab/shell_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cascadelab/errors.hpp"

namespace cascadelab::shell {

namespace {

double pow_lambda(double lambda, double exponent) { return std::pow(lambda, exponent); }

} // namespace

double CascadeParams::alpha() const { return pow_lambda(lambda, -2.0 / 3.0); }
double CascadeParams::beta() const { return pow_lambda(lambda, 2.0 / 3.0); }
double CascadeParams::nu0() const { return nu / (ell0 * ell0); }

void CascadeParams::validate() const {
    if (!(lambda > 1.0)) throw config_error("cascade: lambda must be > 1");
    if (!(tau0 > 0.0)) throw config_error("cascade: tau0 must be > 0");
    if (!(ell0 > 0.0)) throw config_error("cascade: ell0 must be > 0");
    if (!(nu >= 0.0)) throw config_error("cascade: nu must be >= 0");
    if (n_shells < 1) throw config_error("cascade: n_shells must be >= 1");
    if (!initial_energies.empty() && initial_energies.size() != n_shells)
        throw config_error("cascade: initial_energies must be empty or have n_shells entries");
    for (double e : initial_energies)
        if (!(e >= 0.0)) throw config_error("cascade: initial energies must be >= 0");
    if (boundary == BoundaryPolicy::Forced && !(inflow >= 0.0))
        throw config_error("cascade: inflow must be >= 0");
}

ShellScales shell_scales(const CascadeParams& params) {
    params.validate();
    ShellScales s;
    s.ell.resize(params.n_shells);
    s.k.resize(params.n_shells);
    s.tau.resize(params.n_shells);
    for (std::size_t n = 0; n < params.n_shells; ++n) {
        const double dn = static_cast<double>(n);
        s.ell[n] = params.ell0 * pow_lambda(params.lambda, -dn);
        s.k[n] = 1.0 / s.ell[n];
        s.tau[n] = params.tau0 * pow_lambda(params.lambda, -2.0 * dn / 3.0);
    }
    return s;
}

ShellState steady_state_energies(const CascadeParams& params, double e0) {
    params.validate();
    if (!(e0 >= 0.0)) throw config_error("steady_state_energies: e0 must be >= 0");
    ShellState state;
    state.time = 0.0;
    state.energies.resize(params.n_shells);
    for (std::size_t n = 0; n < params.n_shells; ++n)
        state.energies[n] = e0 * pow_lambda(params.lambda, -2.0 * static_cast<double>(n) / 3.0);
    return state;
}

ShellState steady_viscous_energies(const CascadeParams& params, double e0) {
    params.validate();
    if (!(e0 >= 0.0)) throw config_error("steady_viscous_energies: e0 must be >= 0");
    const ShellScales scales = shell_scales(params);
    ShellState state;
    state.time = 0.0;
    state.energies.resize(params.n_shells);
    state.energies[0] = e0;
    for (std::size_t n = 1; n < params.n_shells; ++n) {
        const double input = state.energies[n - 1] / scales.tau[n - 1];
        state.energies[n] = input / (1.0 / scales.tau[n] + params.nu * scales.k[n] * scales.k[n]);
    }
    return state;
}

SpectrumSeries spectrum_from_shells(const ShellState& state, const ShellScales& scales) {
    if (state.energies.size() != scales.k.size())
        throw config_error("spectrum_from_shells: state has " + std::to_string(state.energies.size()) +
                           " shells but scales have " + std::to_string(scales.k.size()));
    SpectrumSeries series;
    series.source_tag = "shell";
    series.samples.resize(state.energies.size());
    for (std::size_t n = 0; n < state.energies.size(); ++n)
        series.samples[n] = {scales.k[n], state.energies[n] / scales.k[n]};
    return series;
}

std::vector<double> inviscid_rhs(const ShellState& state, const CascadeParams& params) {
    const ShellScales scales = shell_scales(params);
    const std::size_t n = state.energies.size();
    if (n != params.n_shells) throw config_error("inviscid_rhs: state size != n_shells");
    std::vector<double> rate(n);
    const double in0 = params.boundary == BoundaryPolicy::Forced ? params.inflow : 0.0;
    rate[0] = in0 - state.energies[0] / scales.tau[0];
    for (std::size_t i = 1; i < n; ++i)
        rate[i] = state.energies[i - 1] / scales.tau[i - 1] - state.energies[i] / scales.tau[i];
    return rate;
}

std::vector<double> viscous_rhs(const ShellState& state, const CascadeParams& params) {
    std::vector<double> rate = inviscid_rhs(state, params);
    const ShellScales scales = shell_scales(params);
    for (std::size_t i = 0; i < rate.size(); ++i)
        rate[i] -= params.nu * scales.k[i] * scales.k[i] * state.energies[i];
    return rate;
}

std::vector<double> uniform_rate_rhs(const ShellState& state, const CascadeParams& params) {
    const std::size_t n = state.energies.size();
    if (n != params.n_shells) throw config_error("uniform_rate_rhs: state size != n_shells");
    std::vector<double> rate(n);
    const double in0 = params.boundary == BoundaryPolicy::Forced ? params.inflow : 0.0;
    rate[0] = in0 - state.energies[0] / params.tau0;
    for (std::size_t i = 1; i < n; ++i)
        rate[i] = (state.energies[i - 1] - state.energies[i]) / params.tau0;
    return rate;
}

std::vector<double> rhs(const ShellState& state, const CascadeParams& params, RhsKind kind) {
    switch (kind) {
    case RhsKind::Inviscid: return inviscid_rhs(state, params);
    case RhsKind::Viscous: return viscous_rhs(state, params);
    case RhsKind::UniformRate: return uniform_rate_rhs(state, params);
    }
    throw config_error("rhs: unknown kind");
}

std::vector<double> energy_flux(const ShellState& state, const ShellScales& scales) {
    if (state.energies.size() != scales.tau.size())
        throw config_error("energy_flux: mismatched state/scales lengths");
    std::vector<double> flux(state.energies.size());
    for (std::size_t n = 0; n < flux.size(); ++n)
        flux[n] = state.energies[n] / scales.tau[n];
    return flux;
}

ShellState analytic_inviscid_solution(const ShellState& initial, const CascadeParams& params, double t) {
    params.validate();
    if (initial.energies.size() != params.n_shells)
        throw config_error("analytic_inviscid_solution: state size != n_shells");
    if (!(t >= 0.0)) throw config_error("analytic_inviscid_solution: t must be >= 0");

    const std::size_t n = params.n_shells;
    ShellState out;
    out.time = initial.time + t;
    out.energies.assign(n, 0.0);

    // term_k = e^{-t/tau0} (t/tau0)^k / k!, built multiplicatively
    const double x = t / params.tau0;
    std::vector<double> term(n);
    term[0] = std::exp(-x);
    for (std::size_t k = 1; k < n; ++k) term[k] = term[k - 1] * x / static_cast<double>(k);

    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k <= i; ++k) acc += term[k] * initial.energies[i - k];
        out.energies[i] = acc;
    }
    return out;
}

double local_reynolds(const CascadeParams& params, std::size_t n) {
    params.validate();
    if (!(params.nu > 0.0))
        throw config_error("local_reynolds: undefined in the inviscid regime (nu == 0)");
    if (n >= params.n_shells) throw config_error("local_reynolds: shell index out of range");
    // 1/(nu tau_n k_n^2) = ell0^2/(nu tau0) * lambda^(-4n/3)
    const double re0 = params.ell0 * params.ell0 / (params.nu * params.tau0);
    return re0 * pow_lambda(params.lambda, -4.0 * static_cast<double>(n) / 3.0);
}

double dissipation_shell_index(const CascadeParams& params) {
    params.validate();
    if (!(params.nu > 0.0)) throw config_error("dissipation_shell_index: nu must be > 0");
    const double nt = params.nu0() * params.tau0;
    if (!(nt < 1.0))
        throw config_error("dissipation_shell_index: nu*tau0/ell0^2 >= 1, no inertial range exists");
    return 0.75 * std::log(1.0 / nt) / std::log(params.lambda);
}

double timescale_ratio(const CascadeParams& params, std::size_t n) {
    params.validate();
    if (n >= params.n_shells) throw config_error("timescale_ratio: shell index out of range");
    return params.nu0() * params.tau0 * pow_lambda(params.lambda, 4.0 * static_cast<double>(n) / 3.0);
}

double steady_inflow(const CascadeParams& params, double e0) { return e0 / params.tau0; }

double steady_viscous_inflow(const CascadeParams& params, double e0) {
    const double k0 = 1.0 / params.ell0;
    return e0 * (1.0 / params.tau0 + params.nu * k0 * k0);
}

ShellBand dissipation_fit_band(const CascadeParams& params) {
    const double nstar = dissipation_shell_index(params);
    const long center = std::lround(nstar);
    const long lo = std::max(center - 2, 0L);
    const long hi = std::min(center + 2, static_cast<long>(params.n_shells) - 1);
    if (hi - lo < 2)
        throw config_error("dissipation_fit_band: too few shells around n* = " + std::to_string(nstar));
    return {static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)};
}

std::vector<ShellState> integrate(const ShellState& initial, const CascadeParams& params,
                                  RhsKind kind, double dt, double t_end,
                                  std::size_t sample_stride) {
    params.validate();
    if (initial.energies.size() != params.n_shells)
        throw config_error("integrate: state size != n_shells");
    if (!(dt > 0.0)) throw config_error("integrate: dt must be > 0");
    if (!(t_end >= initial.time)) throw config_error("integrate: t_end must be >= initial time");
    if (sample_stride == 0) sample_stride = 1;

    const ShellScales scales = shell_scales(params);
    const std::size_t n = params.n_shells;

    // explicit-part stability guard
    const double tau_min = kind == RhsKind::UniformRate
                               ? params.tau0
                               : *std::min_element(scales.tau.begin(), scales.tau.end());
    if (dt > 0.1 * tau_min * (1.0 + 1e-12))
        throw config_error("integrate: dt = " + std::to_string(dt) + " exceeds 0.1*min(tau) = " +
                           std::to_string(0.1 * tau_min) + "; reduce dt");

    // exact exponential factors for the stiff linear decay (viscous only)
    std::vector<double> decay(n, 0.0);
    if (kind == RhsKind::Viscous)
        for (std::size_t i = 0; i < n; ++i) decay[i] = params.nu * scales.k[i] * scales.k[i];
    std::vector<double> ehalf(n), efull(n);
    for (std::size_t i = 0; i < n; ++i) {
        ehalf[i] = std::exp(-0.5 * dt * decay[i]);
        efull[i] = ehalf[i] * ehalf[i];
    }

    double total0 = 0.0;
    for (double e : initial.energies) total0 += e;
    const double neg_tol = 1e-12 * total0;

    // cascade (non-stiff) part of the rhs; for the viscous kind the decay term
    // lives in the exponential factors, so the explicit part is the inviscid one
    const double in0 = params.boundary == BoundaryPolicy::Forced ? params.inflow : 0.0;
    auto cascade_rhs = [&](const std::vector<double>& e, std::vector<double>& out) {
        if (kind == RhsKind::UniformRate) {
            out[0] = in0 - e[0] / params.tau0;
            for (std::size_t i = 1; i < n; ++i) out[i] = (e[i - 1] - e[i]) / params.tau0;
        } else {
            out[0] = in0 - e[0] / scales.tau[0];
            for (std::size_t i = 1; i < n; ++i)
                out[i] = e[i - 1] / scales.tau[i - 1] - e[i] / scales.tau[i];
        }
    };

    const std::size_t n_steps =
        static_cast<std::size_t>(std::ceil((t_end - initial.time) / dt - 1e-9));

    std::vector<ShellState> series;
    series.reserve(n_steps / sample_stride + 2);
    series.push_back(initial);

    std::vector<double> e = initial.energies;
    std::vector<double> tmp(n), k1(n), k2(n), k3(n), k4(n);
    double time = initial.time;

    for (std::size_t step = 0; step < n_steps; ++step) {
        // integrating-factor RK4: the linear decay is advanced by exact
        // exponentials, the cascade part by classical RK4 stages
        cascade_rhs(e, k1);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = ehalf[i] * (e[i] + 0.5 * dt * k1[i]);
        cascade_rhs(tmp, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = ehalf[i] * e[i] + 0.5 * dt * k2[i];
        cascade_rhs(tmp, k3);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = efull[i] * e[i] + dt * ehalf[i] * k3[i];
        cascade_rhs(tmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            e[i] = efull[i] * e[i] +
                   dt / 6.0 * (efull[i] * k1[i] + 2.0 * ehalf[i] * (k2[i] + k3[i]) + k4[i]);

        time = initial.time + dt * static_cast<double>(step + 1);

        for (std::size_t i = 0; i < n; ++i) {
            if (e[i] < 0.0) {
                if (e[i] < -neg_tol)
                    throw instability_error(
                        "integrate: shell " + std::to_string(i) + " went negative (" +
                        std::to_string(e[i]) + ") at t = " + std::to_string(time) +
                        "; suggested dt = " + std::to_string(0.5 * dt));
                e[i] = 0.0;
            }
        }

        if ((step + 1) % sample_stride == 0 || step + 1 == n_steps) {
            ShellState s;
            s.time = time;
            s.energies = e;
            series.push_back(std::move(s));
        }
    }
    return series;
}

} // namespace cascadelab::shell
