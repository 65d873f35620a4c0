#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cascadelab/burgers.hpp"
#include "cascadelab/cli.hpp"
#include "cascadelab/closure_spectral.hpp"
#include "cascadelab/errors.hpp"
#include "cascadelab/keps.hpp"
#include "cascadelab/shell_model.hpp"
#include "cascadelab/spectrum.hpp"
#include "cascadelab/tao_cascade.hpp"
#include "cascadelab/version.hpp"

namespace py = pybind11;
using namespace cascadelab;

namespace {

SpectrumSeries make_spectrum(const std::vector<double>& ks, const std::vector<double>& es,
                             const std::string& tag) {
    if (ks.size() != es.size()) throw config_error("make_spectrum: k and E lengths differ");
    SpectrumSeries s;
    s.source_tag = tag;
    s.samples.reserve(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) s.samples.push_back({ks[i], es[i]});
    s.validate();
    return s;
}

std::vector<std::pair<double, double>> spectrum_pairs(const SpectrumSeries& s) {
    std::vector<std::pair<double, double>> out;
    out.reserve(s.samples.size());
    for (const auto& x : s.samples) out.emplace_back(x.k, x.energy);
    return out;
}

} // namespace

PYBIND11_MODULE(cascadelab, m) {
    m.doc() = "cascade-model numerics lab: shell cascades, Burgers diagnostics, spectral closure "
              "solutions and k-eps constants";
    m.attr("__version__") = kVersion;

    py::register_exception<config_error>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<instability_error>(m, "InstabilityError", PyExc_RuntimeError);
    py::register_exception<io_error>(m, "IoError", PyExc_OSError);

    // ---- spectrum -----------------------------------------------------------
    py::class_<SpectrumSeries>(m, "SpectrumSeries")
        .def(py::init(&make_spectrum), py::arg("k"), py::arg("E"), py::arg("source_tag") = "python")
        .def_property_readonly("samples", &spectrum_pairs)
        .def_readonly("source_tag", &SpectrumSeries::source_tag)
        .def("__len__", [](const SpectrumSeries& s) { return s.samples.size(); });

    py::class_<SlopeFit>(m, "SlopeFit")
        .def_readonly("slope", &SlopeFit::slope)
        .def_readonly("intercept", &SlopeFit::intercept)
        .def_readonly("rms_residual", &SlopeFit::rms_residual)
        .def_readonly("n_used", &SlopeFit::n_used)
        .def("__repr__", [](const SlopeFit& f) {
            return "SlopeFit(slope=" + std::to_string(f.slope) + ")";
        });

    m.def("fit_loglog_slope", &fit_loglog_slope, py::arg("series"), py::arg("k_min"),
          py::arg("k_max"));

    // ---- shell model --------------------------------------------------------
    auto sh = m.def_submodule("shell", "shell energy cascade");

    py::enum_<shell::BoundaryPolicy>(sh, "BoundaryPolicy")
        .value("Closed", shell::BoundaryPolicy::Closed)
        .value("Forced", shell::BoundaryPolicy::Forced);

    py::enum_<shell::RhsKind>(sh, "RhsKind")
        .value("Inviscid", shell::RhsKind::Inviscid)
        .value("Viscous", shell::RhsKind::Viscous)
        .value("UniformRate", shell::RhsKind::UniformRate);

    py::class_<shell::CascadeParams>(sh, "CascadeParams")
        .def(py::init([](double lambda, double tau0, double ell0, double nu, std::size_t n_shells,
                         std::vector<double> initial_energies, shell::BoundaryPolicy boundary,
                         double inflow) {
                 shell::CascadeParams p{lambda, tau0,     ell0,
                                        nu,     n_shells, std::move(initial_energies),
                                        boundary, inflow};
                 p.validate();
                 return p;
             }),
             py::arg("lambda_") = 2.0, py::arg("tau0") = 1.0, py::arg("ell0") = 1.0,
             py::arg("nu") = 0.0, py::arg("n_shells") = 1,
             py::arg("initial_energies") = std::vector<double>{},
             py::arg("boundary") = shell::BoundaryPolicy::Closed, py::arg("inflow") = 0.0)
        .def_readwrite("lambda_", &shell::CascadeParams::lambda)
        .def_readwrite("tau0", &shell::CascadeParams::tau0)
        .def_readwrite("ell0", &shell::CascadeParams::ell0)
        .def_readwrite("nu", &shell::CascadeParams::nu)
        .def_readwrite("n_shells", &shell::CascadeParams::n_shells)
        .def_readwrite("boundary", &shell::CascadeParams::boundary)
        .def_readwrite("inflow", &shell::CascadeParams::inflow)
        .def_property_readonly("alpha", &shell::CascadeParams::alpha)
        .def_property_readonly("beta", &shell::CascadeParams::beta);

    py::class_<shell::ShellState>(sh, "ShellState")
        .def(py::init([](double time, std::vector<double> energies) {
                 return shell::ShellState{time, std::move(energies)};
             }),
             py::arg("time") = 0.0, py::arg("energies") = std::vector<double>{})
        .def_readwrite("time", &shell::ShellState::time)
        .def_readwrite("energies", &shell::ShellState::energies);

    py::class_<shell::ShellScales>(sh, "ShellScales")
        .def_readonly("ell", &shell::ShellScales::ell)
        .def_readonly("k", &shell::ShellScales::k)
        .def_readonly("tau", &shell::ShellScales::tau);

    sh.def("shell_scales", &shell::shell_scales);
    sh.def("steady_state_energies", &shell::steady_state_energies, py::arg("params"),
           py::arg("e0"));
    sh.def("steady_viscous_energies", &shell::steady_viscous_energies, py::arg("params"),
           py::arg("e0"));
    sh.def("spectrum_from_shells", &shell::spectrum_from_shells);
    sh.def("inviscid_rhs", &shell::inviscid_rhs);
    sh.def("viscous_rhs", &shell::viscous_rhs);
    sh.def("uniform_rate_rhs", &shell::uniform_rate_rhs);
    sh.def("energy_flux", &shell::energy_flux);
    sh.def("analytic_inviscid_solution", &shell::analytic_inviscid_solution, py::arg("initial"),
           py::arg("params"), py::arg("t"));
    sh.def("local_reynolds", &shell::local_reynolds);
    sh.def("dissipation_shell_index", &shell::dissipation_shell_index);
    sh.def("timescale_ratio", &shell::timescale_ratio);
    sh.def("steady_inflow", &shell::steady_inflow);
    sh.def("steady_viscous_inflow", &shell::steady_viscous_inflow);
    sh.def("dissipation_fit_band", [](const shell::CascadeParams& p) {
        const auto b = shell::dissipation_fit_band(p);
        return std::make_pair(b.lo, b.hi);
    });
    sh.def("integrate", &shell::integrate, py::arg("initial"), py::arg("params"), py::arg("kind"),
           py::arg("dt"), py::arg("t_end"), py::arg("sample_stride") = 1);

    // ---- burgers ------------------------------------------------------------
    auto bg = m.def_submodule("burgers", "1D viscous Burgers lab");

    py::enum_<burgers::ProfileKind>(bg, "ProfileKind")
        .value("Sin", burgers::ProfileKind::Sin)
        .value("Bump", burgers::ProfileKind::Bump)
        .value("File", burgers::ProfileKind::File)
        .value("Samples", burgers::ProfileKind::Samples);

    py::class_<burgers::InitialCondition>(bg, "InitialCondition")
        .def(py::init<>())
        .def_readwrite("kind", &burgers::InitialCondition::kind)
        .def_readwrite("amplitude", &burgers::InitialCondition::amplitude)
        .def_readwrite("mode", &burgers::InitialCondition::mode)
        .def_readwrite("phase", &burgers::InitialCondition::phase)
        .def_readwrite("center", &burgers::InitialCondition::center)
        .def_readwrite("width", &burgers::InitialCondition::width)
        .def_readwrite("noise_amp", &burgers::InitialCondition::noise_amp)
        .def_readwrite("seed", &burgers::InitialCondition::seed)
        .def_readwrite("file_path", &burgers::InitialCondition::file_path)
        .def_readwrite("samples", &burgers::InitialCondition::samples);

    py::class_<burgers::BurgersConfig>(bg, "BurgersConfig")
        .def(py::init<>())
        .def_readwrite("domain_length", &burgers::BurgersConfig::domain_length)
        .def_readwrite("x0", &burgers::BurgersConfig::x0)
        .def_readwrite("grid_points", &burgers::BurgersConfig::grid_points)
        .def_readwrite("nu", &burgers::BurgersConfig::nu)
        .def_readwrite("dt", &burgers::BurgersConfig::dt)
        .def_readwrite("t_end", &burgers::BurgersConfig::t_end)
        .def_readwrite("sample_stride", &burgers::BurgersConfig::sample_stride)
        .def_readwrite("ic", &burgers::BurgersConfig::ic)
        .def_property_readonly("dx", &burgers::BurgersConfig::dx)
        .def("build_initial", &burgers::BurgersConfig::build_initial);

    py::class_<burgers::BurgersState>(bg, "BurgersState")
        .def(py::init([](double time, std::vector<double> u) {
                 return burgers::BurgersState{time, std::move(u)};
             }),
             py::arg("time") = 0.0, py::arg("u") = std::vector<double>{})
        .def_readwrite("time", &burgers::BurgersState::time)
        .def_readwrite("u", &burgers::BurgersState::u);

    py::class_<burgers::BurgersDiagnostics>(bg, "BurgersDiagnostics")
        .def_readonly("time", &burgers::BurgersDiagnostics::time)
        .def_readonly("kinetic_energy", &burgers::BurgersDiagnostics::kinetic_energy)
        .def_readonly("dissipation", &burgers::BurgersDiagnostics::dissipation)
        .def_readonly("transport_residual_l2", &burgers::BurgersDiagnostics::transport_residual_l2)
        .def_readonly("transport_residual_full_l2",
                      &burgers::BurgersDiagnostics::transport_residual_full_l2)
        .def_readonly("diffusion_flux_l2", &burgers::BurgersDiagnostics::diffusion_flux_l2)
        .def_readonly("critical_functional", &burgers::BurgersDiagnostics::critical_functional)
        .def_readonly("grad_norm", &burgers::BurgersDiagnostics::grad_norm)
        .def_readonly("max_abs_grad", &burgers::BurgersDiagnostics::max_abs_grad)
        .def_readonly("min_grad", &burgers::BurgersDiagnostics::min_grad);

    py::class_<burgers::BurgersRun>(bg, "BurgersRun")
        .def_readonly("history", &burgers::BurgersRun::history)
        .def_readonly("snapshots", &burgers::BurgersRun::snapshots)
        .def_readonly("min_grad_overall", &burgers::BurgersRun::min_grad_overall)
        .def_readonly("time_of_min_grad", &burgers::BurgersRun::time_of_min_grad)
        .def_readonly("max_abs_grad_overall", &burgers::BurgersRun::max_abs_grad_overall)
        .def_readonly("max_grad_norm", &burgers::BurgersRun::max_grad_norm)
        .def_readonly("time_of_max_grad_norm", &burgers::BurgersRun::time_of_max_grad_norm)
        .def_readonly("max_energy_step_increase", &burgers::BurgersRun::max_energy_step_increase)
        .def_readonly("mean_u_drift", &burgers::BurgersRun::mean_u_drift)
        .def_readonly("n_steps", &burgers::BurgersRun::n_steps);

    bg.def("step", &burgers::step);
    bg.def("diagnostics", &burgers::diagnostics);
    bg.def("instantaneous_diagnostics", &burgers::instantaneous_diagnostics);
    bg.def("run_with_history", &burgers::run_with_history, py::arg("config"),
           py::arg("snapshot_stride") = 0,
           py::call_guard<py::gil_scoped_release>());

    // ---- tao ----------------------------------------------------------------
    auto ta = m.def_submodule("tao", "amplitude cascade ODEs");

    py::class_<tao::TaoParams>(ta, "TaoParams")
        .def(py::init<>())
        .def_readwrite("coefficients", &tao::TaoParams::coefficients)
        .def_readwrite("nu", &tao::TaoParams::nu)
        .def_readwrite("wavenumbers", &tao::TaoParams::wavenumbers)
        .def_readwrite("n_modes", &tao::TaoParams::n_modes)
        .def_readwrite("initial_amplitudes", &tao::TaoParams::initial_amplitudes);

    py::class_<tao::TaoState>(ta, "TaoState")
        .def(py::init([](double time, std::vector<double> amplitudes) {
                 return tao::TaoState{time, std::move(amplitudes)};
             }),
             py::arg("time") = 0.0, py::arg("amplitudes") = std::vector<double>{})
        .def_readwrite("time", &tao::TaoState::time)
        .def_readwrite("amplitudes", &tao::TaoState::amplitudes);

    py::class_<tao::CorrespondenceEntry>(ta, "CorrespondenceEntry")
        .def_readonly("tao_cascade_term", &tao::CorrespondenceEntry::tao_cascade_term)
        .def_readonly("shell_cascade_term", &tao::CorrespondenceEntry::shell_cascade_term)
        .def_readonly("abs_diff", &tao::CorrespondenceEntry::abs_diff);

    py::class_<tao::CorrespondenceReport>(ta, "CorrespondenceReport")
        .def_readonly("initial_terms", &tao::CorrespondenceReport::initial_terms)
        .def_readonly("times", &tao::CorrespondenceReport::times)
        .def_readonly("rel_diff", &tao::CorrespondenceReport::rel_diff)
        .def_readonly("max_rel_diff", &tao::CorrespondenceReport::max_rel_diff)
        .def_readonly("energy_decay_rate_factor",
                      &tao::CorrespondenceReport::energy_decay_rate_factor);

    ta.def("tao_rhs", &tao::tao_rhs);
    ta.def("integrate_tao", &tao::integrate_tao, py::arg("initial"), py::arg("params"),
           py::arg("dt"), py::arg("t_end"), py::arg("sample_stride") = 1);
    ta.def("params_from_shell", &tao::params_from_shell);
    ta.def("energy_correspondence",
           py::overload_cast<const std::vector<tao::TaoState>&,
                             const std::vector<shell::ShellState>&>(&tao::energy_correspondence));
    ta.def("energy_correspondence",
           py::overload_cast<const std::vector<tao::TaoState>&, const tao::TaoParams&,
                             const std::vector<shell::ShellState>&, const shell::CascadeParams&>(
               &tao::energy_correspondence));

    // ---- closure spectral ----------------------------------------------------
    auto cl = m.def_submodule("closure", "spectral closure solutions");

    py::class_<closure::ClosureParams>(cl, "ClosureParams")
        .def(py::init([](double nu, double epsilon, double c0, double hausdorff_dim) {
                 closure::ClosureParams p{nu, epsilon, c0, hausdorff_dim};
                 p.validate();
                 return p;
             }),
             py::arg("nu") = 1e-3, py::arg("epsilon") = 1.0, py::arg("c0") = 0.12,
             py::arg("hausdorff_dim") = 7.0 / 3.0)
        .def_readwrite("nu", &closure::ClosureParams::nu)
        .def_readwrite("epsilon", &closure::ClosureParams::epsilon)
        .def_readwrite("c0", &closure::ClosureParams::c0)
        .def_readwrite("hausdorff_dim", &closure::ClosureParams::hausdorff_dim);

    py::class_<closure::FourierField1D>(cl, "FourierField1D")
        .def_static("zeros", &closure::FourierField1D::zeros, py::arg("n_modes"),
                    py::arg("domain_length") = 6.283185307179586476925286766559)
        .def_readwrite("k", &closure::FourierField1D::k)
        .def_readwrite("c", &closure::FourierField1D::c)
        .def("is_hermitian", &closure::FourierField1D::is_hermitian, py::arg("tol") = 1e-12)
        .def("__len__", &closure::FourierField1D::size);

    cl.def("band_forcing", &closure::band_forcing, py::arg("n_modes"),
           py::arg("domain_length") = 6.283185307179586476925286766559, py::arg("band_top") = 0.0);
    cl.def("fractional_laplacian_apply", &closure::fractional_laplacian_apply, py::arg("field"),
           py::arg("order"));
    cl.def("steady_spectral_solution", &closure::steady_spectral_solution, py::arg("forcing"),
           py::arg("params"));
    cl.def("crossover_wavenumber", &closure::crossover_wavenumber);
    cl.def("energy_spectrum_raw", &closure::energy_spectrum_raw);
    cl.def("hausdorff_corrected_spectrum", &closure::hausdorff_corrected_spectrum, py::arg("raw"),
           py::arg("exponent"));
    cl.def("transient_solution", &closure::transient_solution, py::arg("u0_amplitude"),
           py::arg("params"), py::arg("t_star"), py::arg("t"));
    cl.def("hausdorff_from_exponent", &closure::hausdorff_from_exponent, py::arg("zeta"));

    // ---- k-eps ----------------------------------------------------------------
    auto ke = m.def_submodule("keps", "k-eps closure constants and 0D runs");

    py::class_<keps::GeometryInputs>(ke, "GeometryInputs")
        .def(py::init([](double hausdorff_dim, double lambda, double c0, double c_k) {
                 keps::GeometryInputs g{hausdorff_dim, lambda, c0, c_k};
                 g.validate();
                 return g;
             }),
             py::arg("hausdorff_dim") = 7.0 / 3.0,
             py::arg("lambda_") = 2.718281828459045235360287471353, py::arg("c0") = 0.12,
             py::arg("c_k") = 1.5)
        .def_readwrite("hausdorff_dim", &keps::GeometryInputs::hausdorff_dim)
        .def_readwrite("lambda_", &keps::GeometryInputs::lambda)
        .def_readwrite("c0", &keps::GeometryInputs::c0)
        .def_readwrite("c_k", &keps::GeometryInputs::c_k);

    py::class_<keps::ConstantComparison>(ke, "ConstantComparison")
        .def_readonly("formula_value", &keps::ConstantComparison::formula_value)
        .def_readonly("paper_value", &keps::ConstantComparison::paper_value)
        .def_readonly("abs_discrepancy", &keps::ConstantComparison::abs_discrepancy)
        .def_readonly("note", &keps::ConstantComparison::note);

    py::class_<keps::ClosureConstants>(ke, "ClosureConstants")
        .def_readonly("c_mu", &keps::ClosureConstants::c_mu)
        .def_readonly("sigma_k_raw", &keps::ClosureConstants::sigma_k_raw)
        .def_readonly("sigma_k_final", &keps::ClosureConstants::sigma_k_final)
        .def_readonly("sigma_eps", &keps::ClosureConstants::sigma_eps)
        .def_readonly("c_1eps", &keps::ClosureConstants::c_1eps)
        .def_readonly("c_2eps", &keps::ClosureConstants::c_2eps)
        .def_readonly("back_solved_c_k", &keps::ClosureConstants::back_solved_c_k);

    py::class_<keps::KEpsState>(ke, "KEpsState")
        .def(py::init([](double time, double k, double eps) {
                 return keps::KEpsState{time, k, eps};
             }),
             py::arg("time") = 0.0, py::arg("k") = 1.0, py::arg("eps") = 1.0)
        .def_readwrite("time", &keps::KEpsState::time)
        .def_readwrite("k", &keps::KEpsState::k)
        .def_readwrite("eps", &keps::KEpsState::eps);

    py::class_<keps::DecayRun>(ke, "DecayRun")
        .def_readonly("series", &keps::DecayRun::series)
        .def_readonly("closed_form_k", &keps::DecayRun::closed_form_k)
        .def_readonly("closed_form_eps", &keps::DecayRun::closed_form_eps)
        .def_readonly("max_rel_err_k", &keps::DecayRun::max_rel_err_k);

    py::class_<keps::ShearBalance>(ke, "ShearBalance")
        .def_readonly("production", &keps::ShearBalance::production)
        .def_readonly("production_over_dissipation",
                      &keps::ShearBalance::production_over_dissipation)
        .def_readonly("equilibrium_shear", &keps::ShearBalance::equilibrium_shear);

    py::class_<keps::SpectrumIntegrals>(ke, "SpectrumIntegrals")
        .def_readonly("k_total", &keps::SpectrumIntegrals::k_total)
        .def_readonly("eps_total", &keps::SpectrumIntegrals::eps_total);

    ke.def("constants_from_geometry", &keps::constants_from_geometry);
    ke.def("eddy_viscosity", &keps::eddy_viscosity, py::arg("k"), py::arg("eps"), py::arg("c_mu"));
    ke.def("decaying_turbulence", &keps::decaying_turbulence, py::arg("initial"), py::arg("c_2eps"),
           py::arg("dt"), py::arg("t_end"), py::arg("sample_stride") = 1,
           py::call_guard<py::gil_scoped_release>());
    ke.def("homogeneous_shear_balance", &keps::homogeneous_shear_balance, py::arg("k"),
           py::arg("eps"), py::arg("shear_rate"), py::arg("c_mu"));
    ke.def("spectrum_integrals", &keps::spectrum_integrals, py::arg("spectrum"), py::arg("nu"));

    // ---- cli -----------------------------------------------------------------
    m.def("run_cli", &cli::run_cli, py::arg("args"),
          "run one command-line invocation; returns the exit code",
          py::call_guard<py::gil_scoped_release>());
}
