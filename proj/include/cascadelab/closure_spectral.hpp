#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "cascadelab/spectrum.hpp"

namespace cascadelab::closure {

struct ClosureParams {
    double nu = 1e-3;               // >= 0
    double epsilon = 1.0;           // mean dissipation rate, > 0
    double c0 = 0.12;               // universal constant, > 0
    double hausdorff_dim = 7.0 / 3.0; // in (0, 3]

    void validate() const;
};

// Fourier coefficients of a 1D periodic field in standard FFT mode ordering:
// mode j carries wavenumber (j <= n/2 ? j : j - n) * 2*pi/domain_length.
// A real physical field shows up as Hermitian symmetry c[-k] = conj(c[k]).
struct FourierField1D {
    std::vector<double> k;
    std::vector<std::complex<double>> c;

    static FourierField1D zeros(std::size_t n_modes, double domain_length);
    std::size_t size() const { return k.size(); }
    bool is_hermitian(double tol = 1e-12) const;
};

// F(k) = 1 on the band 1 <= |k| <= band_top, 0 elsewhere (including k = 0).
// band_top == 0 selects the default k_max/4.
FourierField1D band_forcing(std::size_t n_modes, double domain_length, double band_top = 0.0);

// Multiplies each coefficient by |k|^(2*order); the zero mode maps to zero.
// order == 1 is the ordinary (-Laplacian) multiplier k^2. Multipliers compose:
// order a then order b equals order a+b.
FourierField1D fractional_laplacian_apply(const FourierField1D& field, double order);

// U(k) = F(k) / (nu |k|^2 + c0 eps^{2/3} |k|^{2/3}).
// Throws config_error when the forcing has a nonzero k = 0 component (the
// denominator vanishes there).
FourierField1D steady_spectral_solution(const FourierField1D& forcing, const ClosureParams& params);

// k_c = (c0 eps^{2/3} / nu)^{3/4}, where the two denominator terms balance.
// Throws config_error when nu == 0.
double crossover_wavenumber(const ClosureParams& params);

// Samples (|k|, 0.5 k^2 |U(k)|^2) over the k > 0 modes.
SpectrumSeries energy_spectrum_raw(const FourierField1D& solution);

// Multiplies each sample by k^(-exponent); exponent 0 is the identity. Callers
// normally pass params.hausdorff_dim (7/3 by default), which turns the raw
// inertial slope +2/3 into -5/3. Applied as a separate stage so raw and
// corrected spectra can always be emitted side by side.
SpectrumSeries hausdorff_corrected_spectrum(const SpectrumSeries& raw, double exponent);

// u0_amplitude * exp(-c0 eps^{2/3} (t_star - t)^{2/3}) for 0 <= t <= t_star.
// The factor equals 1 at t = t_star and is smaller earlier, i.e. the formula
// grows toward the singular time; it is evaluated literally as written.
// Throws config_error when t < 0 or t > t_star.
double transient_solution(double u0_amplitude, const ClosureParams& params, double t_star, double t);

// dim_H = 3 - (zeta - 1) for a spectrum exponent E(k) ~ k^{-zeta}; 5/3 -> 7/3.
double hausdorff_from_exponent(double zeta);

} // namespace cascadelab::closure
