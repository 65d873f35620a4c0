#include "cascadelab/burgers.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "cascadelab/errors.hpp"

namespace cascadelab::burgers {

namespace {

// du/dt = -d/dx(u^2/2) + nu d2u/dx2, central differences, periodic wrap
void rhs(const std::vector<double>& u, double dx, double nu, std::vector<double>& out) {
    const std::size_t n = u.size();
    const double inv2dx = 1.0 / (2.0 * dx);
    const double nudx2 = nu / (dx * dx);
    auto f = [](double v) { return 0.5 * v * v; };

    out[0] = -(f(u[1]) - f(u[n - 1])) * inv2dx + nudx2 * (u[1] - 2.0 * u[0] + u[n - 1]);
    for (std::size_t i = 1; i + 1 < n; ++i)
        out[i] = -(f(u[i + 1]) - f(u[i - 1])) * inv2dx + nudx2 * (u[i + 1] - 2.0 * u[i] + u[i - 1]);
    out[n - 1] = -(f(u[0]) - f(u[n - 2])) * inv2dx + nudx2 * (u[0] - 2.0 * u[n - 1] + u[n - 2]);
}

struct Stepper {
    const BurgersConfig& cfg;
    double dx;
    std::vector<double> k1, k2, k3, k4, tmp;

    explicit Stepper(const BurgersConfig& c, std::size_t n)
        : cfg(c), dx(c.dx()), k1(n), k2(n), k3(n), k4(n), tmp(n) {}

    // advances u in place; returns max|u| of the new field (NaN poisons it)
    double advance(std::vector<double>& u, double t_now) {
        const std::size_t n = u.size();
        const double dt = cfg.dt;
        rhs(u, dx, cfg.nu, k1);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + 0.5 * dt * k1[i];
        rhs(tmp, dx, cfg.nu, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + 0.5 * dt * k2[i];
        rhs(tmp, dx, cfg.nu, k3);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + dt * k3[i];
        rhs(tmp, dx, cfg.nu, k4);
        double maxabs = 0.0, abssum = 0.0; // NaN survives into the sum, not the max
        for (std::size_t i = 0; i < n; ++i) {
            u[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            maxabs = std::max(maxabs, std::abs(u[i]));
            abssum += std::abs(u[i]);
        }
        if (!std::isfinite(abssum))
            throw instability_error("burgers: non-finite field at t = " + std::to_string(t_now + dt) +
                                    "; suggested dt = " + std::to_string(0.5 * dt));
        return maxabs;
    }
};

} // namespace

void BurgersConfig::validate() const {
    if (!(domain_length > 0.0)) throw config_error("burgers: domain_length must be > 0");
    if (grid_points < 16 || (grid_points & (grid_points - 1)) != 0)
        throw config_error("burgers: grid_points must be a power of two >= 16");
    if (!(nu > 0.0)) throw config_error("burgers: nu must be > 0");
    if (!(dt > 0.0)) throw config_error("burgers: dt must be > 0");
    if (!(t_end >= 0.0)) throw config_error("burgers: t_end must be >= 0");
    if (sample_stride == 0) throw config_error("burgers: sample_stride must be >= 1");
}

std::vector<double> BurgersConfig::build_initial() const {
    validate();
    const std::size_t n = grid_points;
    std::vector<double> u(n, 0.0);
    const double h = dx();

    switch (ic.kind) {
    case ProfileKind::Sin: {
        const double kk = 2.0 * 3.14159265358979323846 * ic.mode / domain_length;
        for (std::size_t i = 0; i < n; ++i) {
            const double x = x0 + h * static_cast<double>(i);
            u[i] = ic.amplitude * std::sin(kk * x + ic.phase);
        }
        break;
    }
    case ProfileKind::Bump: {
        if (!(ic.width > 0.0)) throw config_error("burgers: bump width must be > 0");
        for (std::size_t i = 0; i < n; ++i) {
            const double x = x0 + h * static_cast<double>(i);
            const double s = (x - ic.center) / ic.width;
            u[i] = std::abs(s) < 1.0 ? ic.amplitude * std::exp(1.0 - 1.0 / (1.0 - s * s)) : 0.0;
        }
        break;
    }
    case ProfileKind::File: {
        std::ifstream in(ic.file_path);
        if (!in) throw io_error("burgers: cannot open initial-condition file " + ic.file_path);
        std::vector<double> vals;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::istringstream ls(line);
            double v;
            if (!(ls >> v)) throw io_error("burgers: bad value in " + ic.file_path + ": '" + line + "'");
            vals.push_back(v);
        }
        if (vals.size() != n)
            throw config_error("burgers: initial-condition file has " + std::to_string(vals.size()) +
                               " values, grid has " + std::to_string(n));
        u = std::move(vals);
        break;
    }
    case ProfileKind::Samples: {
        if (ic.samples.size() != n)
            throw config_error("burgers: ic.samples has " + std::to_string(ic.samples.size()) +
                               " values, grid has " + std::to_string(n));
        u = ic.samples;
        break;
    }
    }

    if (ic.noise_amp != 0.0) {
        if (!(ic.noise_amp > 0.0)) throw config_error("burgers: noise_amp must be >= 0");
        std::mt19937_64 rng(ic.seed);
        std::uniform_real_distribution<double> dist(-ic.noise_amp, ic.noise_amp);
        for (auto& v : u) v += dist(rng);
    }
    return u;
}

void BurgersConfig::check_cfl(const std::vector<double>& u0) const {
    double umax = 0.0;
    for (double v : u0) umax = std::max(umax, std::abs(v));
    const double h = dx();
    double bound = 0.5 * h * h / (2.0 * nu);
    if (umax > 0.0) bound = std::min(bound, 0.5 * h / umax);
    if (dt > bound)
        throw config_error("burgers: dt = " + std::to_string(dt) +
                           " violates the stability bound " + std::to_string(bound) +
                           " for the initial field");
}

BurgersState step(const BurgersState& state, const BurgersConfig& config) {
    config.validate();
    if (state.u.size() != config.grid_points)
        throw config_error("burgers: state size != grid_points");
    Stepper st(config, state.u.size());
    BurgersState out = state;
    st.advance(out.u, state.time);
    out.time = state.time + config.dt;
    return out;
}

BurgersDiagnostics instantaneous_diagnostics(const BurgersState& state, const BurgersConfig& config) {
    const std::size_t n = state.u.size();
    const double h = config.dx();
    const double inv2dx = 1.0 / (2.0 * h);
    const auto& u = state.u;

    BurgersDiagnostics d;
    d.time = state.time;
    d.min_grad = std::numeric_limits<double>::infinity();
    double sum_u2 = 0.0, sum_g2 = 0.0, sum_phi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double up = u[i + 1 == n ? 0 : i + 1];
        const double um = u[i == 0 ? n - 1 : i - 1];
        const double g = (up - um) * inv2dx;
        sum_u2 += u[i] * u[i];
        sum_g2 += g * g;
        const double udE = u[i] * u[i] * g; // u * dE/dx with dE/dx = u * du/dx
        sum_phi += udE * udE;
        d.max_abs_grad = std::max(d.max_abs_grad, std::abs(g));
        d.min_grad = std::min(d.min_grad, g);
    }
    d.kinetic_energy = 0.5 * h * sum_u2;
    d.dissipation = config.nu * h * sum_g2;
    d.critical_functional = h * sum_phi;
    d.grad_norm = std::sqrt(h * sum_g2);
    d.transport_residual_l2 = 0.0;
    return d;
}

BurgersDiagnostics diagnostics(const BurgersState& prev, const BurgersState& next,
                               const BurgersConfig& config) {
    const std::size_t n = next.u.size();
    if (prev.u.size() != n) throw config_error("burgers diagnostics: mismatched states");
    const double dt_pair = next.time - prev.time;
    if (!(dt_pair > 0.0)) throw config_error("burgers diagnostics: states must be one step apart");

    BurgersDiagnostics d = instantaneous_diagnostics(next, config);

    const double h = config.dx();
    const double inv2dx = 1.0 / (2.0 * h);
    const double invdx2 = 1.0 / (h * h);
    double sum_r2 = 0.0, sum_rf2 = 0.0, sum_flux2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t ip = i + 1 == n ? 0 : i + 1;
        const std::size_t im = i == 0 ? n - 1 : i - 1;
        const double gp = (prev.u[ip] - prev.u[im]) * inv2dx;
        const double gn = (next.u[ip] - next.u[im]) * inv2dx;
        auto e = [](double v) { return 0.5 * v * v; };
        const double dEdt = (e(next.u[i]) - e(prev.u[i])) / dt_pair;
        const double conv = 0.5 * (prev.u[i] * prev.u[i] * gp + next.u[i] * next.u[i] * gn);
        const double diss = 0.5 * config.nu * (gp * gp + gn * gn);
        const double flux_p =
            config.nu * (e(prev.u[ip]) - 2.0 * e(prev.u[i]) + e(prev.u[im])) * invdx2;
        const double flux_n =
            config.nu * (e(next.u[ip]) - 2.0 * e(next.u[i]) + e(next.u[im])) * invdx2;
        const double flux = 0.5 * (flux_p + flux_n);
        const double r = dEdt + conv + diss;
        sum_r2 += r * r;
        sum_rf2 += (r - flux) * (r - flux);
        sum_flux2 += flux * flux;
    }
    d.transport_residual_l2 = std::sqrt(h * sum_r2);
    d.transport_residual_full_l2 = std::sqrt(h * sum_rf2);
    d.diffusion_flux_l2 = std::sqrt(h * sum_flux2);
    return d;
}

BurgersRun run_with_history(const BurgersConfig& config, std::size_t snapshot_stride) {
    config.validate();
    std::vector<double> u = config.build_initial();
    config.check_cfl(u);

    const std::size_t n = u.size();
    const double h = config.dx();

    BurgersRun run;
    BurgersState cur{0.0, u};
    run.history.push_back(instantaneous_diagnostics(cur, config));
    if (snapshot_stride > 0) run.snapshots.push_back(cur);

    run.min_grad_overall = run.history[0].min_grad;
    run.time_of_min_grad = 0.0;
    run.max_abs_grad_overall = run.history[0].max_abs_grad;
    run.max_grad_norm = run.history[0].grad_norm;
    run.time_of_max_grad_norm = 0.0;

    const double k0 = run.history[0].kinetic_energy;
    double mean0 = 0.0;
    for (double v : u) mean0 += v;
    mean0 /= static_cast<double>(n);

    const std::size_t n_steps =
        static_cast<std::size_t>(std::ceil(config.t_end / config.dt - 1e-9));
    run.n_steps = n_steps;
    if (n_steps == 0) {
        run.mean_u_drift = 0.0;
        return run;
    }

    Stepper st(config, n);
    std::vector<double> uprev;
    double k_prev = k0;

    for (std::size_t s = 0; s < n_steps; ++s) {
        const bool sampled = ((s + 1) % config.sample_stride == 0) || (s + 1 == n_steps);
        if (sampled) uprev = cur.u;

        st.advance(cur.u, cur.time);
        cur.time = config.dt * static_cast<double>(s + 1);

        // per-step scalar tracking
        double sum_u2 = 0.0, ming = std::numeric_limits<double>::infinity(), sum_g2 = 0.0,
               maxag = 0.0;
        const double inv2dx = 1.0 / (2.0 * h);
        for (std::size_t i = 0; i < n; ++i) {
            const double up = cur.u[i + 1 == n ? 0 : i + 1];
            const double um = cur.u[i == 0 ? n - 1 : i - 1];
            const double g = (up - um) * inv2dx;
            sum_u2 += cur.u[i] * cur.u[i];
            ming = std::min(ming, g);
            maxag = std::max(maxag, std::abs(g));
            sum_g2 += g * g;
        }
        const double k_now = 0.5 * h * sum_u2;
        const double gnorm = std::sqrt(h * sum_g2);
        if (k0 > 0.0)
            run.max_energy_step_increase =
                std::max(run.max_energy_step_increase, (k_now - k_prev) / k0);
        k_prev = k_now;
        run.max_abs_grad_overall = std::max(run.max_abs_grad_overall, maxag);
        if (ming < run.min_grad_overall) {
            run.min_grad_overall = ming;
            run.time_of_min_grad = cur.time;
        }
        if (gnorm > run.max_grad_norm) {
            run.max_grad_norm = gnorm;
            run.time_of_max_grad_norm = cur.time;
        }

        if (sampled) {
            BurgersState prev{cur.time - config.dt, std::move(uprev)};
            run.history.push_back(diagnostics(prev, cur, config));
            uprev.clear();
            if (snapshot_stride > 0 && ((s + 1) % snapshot_stride == 0 || s + 1 == n_steps))
                run.snapshots.push_back(cur);
        }
    }

    double mean1 = 0.0;
    for (double v : cur.u) mean1 += v;
    mean1 /= static_cast<double>(n);
    run.mean_u_drift = std::abs(mean1 - mean0);
    return run;
}

} // namespace cascadelab::burgers
