#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace cascadelab {

struct SpectrumSample {
    double k = 0.0;      // wavenumber
    double energy = 0.0; // E(k)
};

// Ordered (k, E(k)) samples plus a tag naming the formula that produced them.
// Invariant: k strictly increasing, E >= 0.
struct SpectrumSeries {
    std::vector<SpectrumSample> samples;
    std::string source_tag;

    void validate() const; // throws config_error on violated invariants
};

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;    // in ln E = slope * ln k + intercept
    double rms_residual = 0.0; // RMS of log-space residuals
    std::size_t n_used = 0;
};

// Ordinary least squares on (ln k, ln E) over samples with k in [k_min, k_max].
// Throws config_error if fewer than 3 samples fall in range or any in-range E <= 0.
SlopeFit fit_loglog_slope(const SpectrumSeries& series, double k_min, double k_max);

} // namespace cascadelab
