#include "cascadelab/closure_spectral.hpp"

#include <cmath>

#include "cascadelab/errors.hpp"

namespace cascadelab::closure {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

void ClosureParams::validate() const {
    if (!(nu >= 0.0)) throw config_error("closure: nu must be >= 0");
    if (!(epsilon > 0.0)) throw config_error("closure: epsilon must be > 0");
    if (!(c0 > 0.0)) throw config_error("closure: c0 must be > 0");
    if (!(hausdorff_dim > 0.0 && hausdorff_dim <= 3.0))
        throw config_error("closure: hausdorff_dim must lie in (0, 3]");
}

FourierField1D FourierField1D::zeros(std::size_t n_modes, double domain_length) {
    if (n_modes < 2) throw config_error("fourier: need at least 2 modes");
    if (!(domain_length > 0.0)) throw config_error("fourier: domain_length must be > 0");
    FourierField1D f;
    f.k.resize(n_modes);
    f.c.assign(n_modes, {0.0, 0.0});
    const double dk = kTwoPi / domain_length;
    for (std::size_t j = 0; j < n_modes; ++j) {
        const auto sj = static_cast<long long>(j);
        const auto half = static_cast<long long>(n_modes / 2);
        const long long m = sj <= half ? sj : sj - static_cast<long long>(n_modes);
        f.k[j] = dk * static_cast<double>(m);
    }
    return f;
}

bool FourierField1D::is_hermitian(double tol) const {
    const std::size_t n = size();
    for (std::size_t j = 1; j < n; ++j) {
        const std::size_t jc = n - j; // mode with wavenumber -k[j] (Nyquist pairs with itself)
        const auto diff = c[j] - std::conj(c[jc]);
        if (std::abs(diff) > tol) return false;
    }
    return std::abs(c[0].imag()) <= tol;
}

FourierField1D band_forcing(std::size_t n_modes, double domain_length, double band_top) {
    FourierField1D f = FourierField1D::zeros(n_modes, domain_length);
    double kmax = 0.0;
    for (double kk : f.k) kmax = std::max(kmax, std::abs(kk));
    if (band_top <= 0.0) band_top = kmax / 4.0;
    for (std::size_t j = 0; j < n_modes; ++j) {
        const double a = std::abs(f.k[j]);
        if (a >= 1.0 && a <= band_top) f.c[j] = {1.0, 0.0};
    }
    return f;
}

FourierField1D fractional_laplacian_apply(const FourierField1D& field, double order) {
    if (!(order > 0.0)) throw config_error("fractional_laplacian_apply: order must be > 0");
    FourierField1D out = field;
    for (std::size_t j = 0; j < out.size(); ++j) {
        const double a = std::abs(out.k[j]);
        out.c[j] *= a == 0.0 ? 0.0 : std::pow(a, 2.0 * order);
    }
    return out;
}

FourierField1D steady_spectral_solution(const FourierField1D& forcing, const ClosureParams& params) {
    params.validate();
    const double eps23 = std::pow(params.epsilon, 2.0 / 3.0);
    FourierField1D out = forcing;
    for (std::size_t j = 0; j < out.size(); ++j) {
        const double a = std::abs(out.k[j]);
        if (a == 0.0) {
            if (std::abs(out.c[j]) != 0.0)
                throw config_error("steady_spectral_solution: forcing must vanish at k = 0");
            continue;
        }
        const double denom = params.nu * a * a + params.c0 * eps23 * std::pow(a, 2.0 / 3.0);
        out.c[j] /= denom;
    }
    return out;
}

double crossover_wavenumber(const ClosureParams& params) {
    params.validate();
    if (!(params.nu > 0.0)) throw config_error("crossover_wavenumber: no crossover when nu == 0");
    const double eps23 = std::pow(params.epsilon, 2.0 / 3.0);
    return std::pow(params.c0 * eps23 / params.nu, 0.75);
}

SpectrumSeries energy_spectrum_raw(const FourierField1D& solution) {
    SpectrumSeries series;
    series.source_tag = "spectral_solution_raw";
    for (std::size_t j = 0; j < solution.size(); ++j) {
        if (solution.k[j] <= 0.0) continue;
        const double a = solution.k[j];
        const double mag2 = std::norm(solution.c[j]);
        series.samples.push_back({a, 0.5 * a * a * mag2});
    }
    // FFT ordering keeps positive wavenumbers ascending in the first half, so
    // the samples are already sorted
    return series;
}

SpectrumSeries hausdorff_corrected_spectrum(const SpectrumSeries& raw, double exponent) {
    SpectrumSeries out = raw;
    out.source_tag = raw.source_tag + "_hausdorff_corrected";
    for (auto& s : out.samples) s.energy *= std::pow(s.k, -exponent);
    return out;
}

double transient_solution(double u0_amplitude, const ClosureParams& params, double t_star, double t) {
    params.validate();
    if (!(t_star >= 0.0)) throw config_error("transient_solution: t_star must be >= 0");
    if (t < 0.0 || t > t_star)
        throw config_error("transient_solution: t must lie in [0, t_star]");
    const double rate = params.c0 * std::pow(params.epsilon, 2.0 / 3.0);
    return u0_amplitude * std::exp(-rate * std::pow(t_star - t, 2.0 / 3.0));
}

double hausdorff_from_exponent(double zeta) { return 3.0 - (zeta - 1.0); }

} // namespace cascadelab::closure
