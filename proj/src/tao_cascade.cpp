#include "cascadelab/tao_cascade.hpp"

#include <algorithm>
#include <cmath>

#include "cascadelab/errors.hpp"

namespace cascadelab::tao {

void TaoParams::validate() const {
    if (n_modes < 1) throw config_error("tao: n_modes must be >= 1");
    if (coefficients.size() != n_modes) throw config_error("tao: coefficients size != n_modes");
    if (wavenumbers.size() != n_modes) throw config_error("tao: wavenumbers size != n_modes");
    if (initial_amplitudes.size() != n_modes)
        throw config_error("tao: initial_amplitudes size != n_modes");
    if (!(nu >= 0.0)) throw config_error("tao: nu must be >= 0");
    for (double c : coefficients)
        if (!(c >= 0.0)) throw config_error("tao: coefficients must be >= 0");
}

std::vector<double> tao_rhs(const TaoState& state, const TaoParams& params) {
    params.validate();
    const std::size_t n = params.n_modes;
    if (state.amplitudes.size() != n) throw config_error("tao_rhs: state size != n_modes");
    std::vector<double> rate(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double upstream = i == 0 ? 0.0 : state.amplitudes[i - 1];
        const double kk = params.wavenumbers[i];
        rate[i] = params.coefficients[i] * upstream * upstream -
                  params.nu * kk * kk * state.amplitudes[i];
    }
    return rate;
}

std::vector<TaoState> integrate_tao(const TaoState& initial, const TaoParams& params,
                                    double dt, double t_end, std::size_t sample_stride) {
    params.validate();
    if (initial.amplitudes.size() != params.n_modes)
        throw config_error("integrate_tao: state size != n_modes");
    if (!(dt > 0.0)) throw config_error("integrate_tao: dt must be > 0");
    if (!(t_end >= initial.time)) throw config_error("integrate_tao: t_end must be >= initial time");
    if (sample_stride == 0) sample_stride = 1;

    const std::size_t n = params.n_modes;
    std::vector<double> ehalf(n), efull(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = params.nu * params.wavenumbers[i] * params.wavenumbers[i];
        ehalf[i] = std::exp(-0.5 * dt * d);
        efull[i] = ehalf[i] * ehalf[i];
    }

    // quadratic source term only; the linear decay is carried by the exponentials
    auto source = [&](const std::vector<double>& x, std::vector<double>& out) {
        out[0] = 0.0;
        for (std::size_t i = 1; i < n; ++i)
            out[i] = params.coefficients[i] * x[i - 1] * x[i - 1];
    };

    const std::size_t n_steps =
        static_cast<std::size_t>(std::ceil((t_end - initial.time) / dt - 1e-9));

    std::vector<TaoState> series;
    series.reserve(n_steps / sample_stride + 2);
    series.push_back(initial);

    std::vector<double> x = initial.amplitudes;
    std::vector<double> tmp(n), k1(n), k2(n), k3(n), k4(n);

    for (std::size_t step = 0; step < n_steps; ++step) {
        source(x, k1);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = ehalf[i] * (x[i] + 0.5 * dt * k1[i]);
        source(tmp, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = ehalf[i] * x[i] + 0.5 * dt * k2[i];
        source(tmp, k3);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = efull[i] * x[i] + dt * ehalf[i] * k3[i];
        source(tmp, k4);
        double maxabs = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = efull[i] * x[i] +
                   dt / 6.0 * (efull[i] * k1[i] + 2.0 * ehalf[i] * (k2[i] + k3[i]) + k4[i]);
            maxabs = std::max(maxabs, std::abs(x[i]));
        }
        const double time = initial.time + dt * static_cast<double>(step + 1);
        if (!std::isfinite(maxabs))
            throw instability_error("integrate_tao: non-finite amplitude at t = " +
                                    std::to_string(time) + "; suggested dt = " +
                                    std::to_string(0.5 * dt));
        if ((step + 1) % sample_stride == 0 || step + 1 == n_steps)
            series.push_back(TaoState{time, x});
    }
    return series;
}

TaoParams params_from_shell(const shell::CascadeParams& shell_params,
                            const std::vector<double>& initial_shell_energies) {
    shell_params.validate();
    if (initial_shell_energies.size() != shell_params.n_shells)
        throw config_error("params_from_shell: energies size != n_shells");
    const shell::ShellScales scales = shell::shell_scales(shell_params);

    TaoParams p;
    p.n_modes = shell_params.n_shells;
    p.nu = shell_params.nu;
    p.wavenumbers = scales.k;
    p.coefficients.resize(p.n_modes);
    p.initial_amplitudes.resize(p.n_modes);
    p.coefficients[0] = 0.0; // multiplies X_{-1}^2 == 0
    for (std::size_t i = 1; i < p.n_modes; ++i) p.coefficients[i] = 1.0 / scales.tau[i - 1];
    for (std::size_t i = 0; i < p.n_modes; ++i) {
        if (!(initial_shell_energies[i] >= 0.0))
            throw config_error("params_from_shell: energies must be >= 0");
        p.initial_amplitudes[i] = std::sqrt(initial_shell_energies[i]);
    }
    return p;
}

CorrespondenceReport energy_correspondence(const std::vector<TaoState>& tao_series,
                                           const std::vector<shell::ShellState>& shell_series) {
    if (tao_series.empty() || shell_series.empty())
        throw config_error("energy_correspondence: empty series");
    if (tao_series.size() != shell_series.size())
        throw config_error("energy_correspondence: series lengths differ");
    const std::size_t n = tao_series.front().amplitudes.size();
    if (shell_series.front().energies.size() != n)
        throw config_error("energy_correspondence: mode counts differ");

    CorrespondenceReport rep;
    rep.times.reserve(tao_series.size());
    rep.rel_diff.reserve(tao_series.size());
    rep.max_rel_diff.reserve(tao_series.size());

    for (std::size_t t = 0; t < tao_series.size(); ++t) {
        const auto& ts = tao_series[t];
        const auto& ss = shell_series[t];
        if (ts.amplitudes.size() != n || ss.energies.size() != n)
            throw config_error("energy_correspondence: ragged series");
        if (std::abs(ts.time - ss.time) > 1e-9 * (1.0 + std::abs(ss.time)))
            throw config_error("energy_correspondence: time grids differ at index " +
                               std::to_string(t));
        rep.times.push_back(ss.time);
        std::vector<double> row(n);
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e_tao = ts.amplitudes[i] * ts.amplitudes[i];
            const double e_shell = ss.energies[i];
            const double scale = std::max({std::abs(e_tao), std::abs(e_shell), 1e-300});
            row[i] = std::abs(e_tao - e_shell) / scale;
            worst = std::max(worst, row[i]);
        }
        rep.rel_diff.push_back(std::move(row));
        rep.max_rel_diff.push_back(worst);
    }
    return rep;
}

CorrespondenceReport energy_correspondence(const std::vector<TaoState>& tao_series,
                                           const TaoParams& tao_params,
                                           const std::vector<shell::ShellState>& shell_series,
                                           const shell::CascadeParams& shell_params) {
    CorrespondenceReport rep = energy_correspondence(tao_series, shell_series);
    const shell::ShellScales scales = shell::shell_scales(shell_params);
    const auto& x0 = tao_series.front().amplitudes;
    const auto& e0 = shell_series.front().energies;
    rep.initial_terms.resize(x0.size());
    for (std::size_t i = 0; i < x0.size(); ++i) {
        const double xin = i == 0 ? 0.0 : x0[i - 1];
        const double ein = i == 0 ? 0.0 : e0[i - 1] / scales.tau[i - 1];
        CorrespondenceEntry entry;
        entry.tao_cascade_term = tao_params.coefficients[i] * xin * xin;
        entry.shell_cascade_term = ein;
        entry.abs_diff = std::abs(entry.tao_cascade_term - entry.shell_cascade_term);
        rep.initial_terms[i] = entry;
    }
    return rep;
}

} // namespace cascadelab::tao
