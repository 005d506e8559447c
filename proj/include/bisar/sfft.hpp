// Inverse scaled FFT: the inverse DFT evaluated on a scaled and shifted grid,
// computed with a chirp (Bluestein) decomposition.
#pragma once

#include <functional>
#include <span>
#include <vector>

#include "bisar/core.hpp"

namespace bisar {

struct ScaledAxis {
    double scale = 1.0;
    double shift = 0.0;  // in output bins
};

/// w[m] = sum_k v[k] exp(+j 2 pi (scale*k + shift) m / n).
std::vector<cplx> scaled_idft(std::span<const cplx> v, const ScaledAxis& axis);

/// Kernel linear in the input coordinate: for input samples at
/// f_k = f_start + k*df and outputs at x_m = x0 + m*dx,
///   w[m] = sum_k v[k] exp(j 2 pi (A f_k + B) x_m).
struct LinearKernel {
    double A = 1.0;
    double B = 0.0;
    double f_start = 0.0;
    double df = 1.0;
    double x0 = 0.0;
    double dx = 1.0;
};

std::vector<cplx> linear_kernel_idft(std::span<const cplx> v, const LinearKernel& k);

/// Row-wise transform with per-row axes followed by a column-wise transform
/// with one scale and a per-column shift.
Grid2D<cplx> scaled_idft_2d(const Grid2D<cplx>& grid, const std::function<ScaledAxis(std::size_t)>& row_axis,
                            double az_scale, const std::function<double(std::size_t)>& col_shift);

}  // namespace bisar
