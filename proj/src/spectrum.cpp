#include "cascadelab/spectrum.hpp"

#include <cmath>

#include "cascadelab/errors.hpp"

namespace cascadelab {

void SpectrumSeries::validate() const {
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!(samples[i].energy >= 0.0))
            throw config_error("spectrum: negative or non-finite energy at sample " + std::to_string(i));
        if (i > 0 && !(samples[i].k > samples[i - 1].k))
            throw config_error("spectrum: wavenumbers must be strictly increasing (sample " +
                               std::to_string(i) + ")");
    }
}

SlopeFit fit_loglog_slope(const SpectrumSeries& series, double k_min, double k_max) {
    std::vector<double> xs, ys;
    for (const auto& s : series.samples) {
        if (s.k < k_min || s.k > k_max) continue;
        if (!(s.energy > 0.0))
            throw config_error("fit_loglog_slope: non-positive energy at k = " + std::to_string(s.k));
        xs.push_back(std::log(s.k));
        ys.push_back(std::log(s.energy));
    }
    if (xs.size() < 3)
        throw config_error("fit_loglog_slope: need at least 3 samples in [k_min, k_max], got " +
                           std::to_string(xs.size()));

    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0)
        throw config_error("fit_loglog_slope: degenerate abscissa (all k equal)");

    SlopeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / n);
    fit.n_used = xs.size();
    return fit;
}

} // namespace cascadelab
