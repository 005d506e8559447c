// Two-dimensional spectra on uniform, ascending frequency axes.
#pragma once

#include <cstddef>

#include "bisar/core.hpp"

namespace bisar {

/// Rows are azimuth frequency f_tau, columns are range frequency f.
struct FreqAxes {
    double f_start = 0.0;
    double df = 1.0;
    std::size_t nf = 0;
    double ft_start = 0.0;
    double dft = 1.0;
    std::size_t nft = 0;

    double f(std::size_t k) const { return f_start + static_cast<double>(k) * df; }
    double ft(std::size_t i) const { return ft_start + static_cast<double>(i) * dft; }
};

struct SpectrumGrid {
    Grid2D<cplx> samples;
    FreqAxes axes;
    // Time references removed from the phase, kept for the inverse mapping.
    double t0 = 0.0;
    double tau_start = 0.0;
    // Number of cells zeroed because they fell outside the spectral support.
    std::size_t zeroed_cells = 0;
};

}  // namespace bisar
