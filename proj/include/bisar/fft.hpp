// Thin FFTW3 wrapper. Forward uses exp(-j2πkn/N); inverse uses exp(+j2πkn/N)
// and is normalised by 1/N.
#pragma once

#include <span>

#include "bisar/core.hpp"

namespace bisar::fft {

void forward(std::span<cplx> data);
void inverse(std::span<cplx> data);

/// In-place transforms of every row (along columns index) of a grid.
void forward_rows(Grid2D<cplx>& grid);
void inverse_rows(Grid2D<cplx>& grid);
/// In-place transforms of every column (along the row index) of a grid.
void forward_cols(Grid2D<cplx>& grid);
void inverse_cols(Grid2D<cplx>& grid);

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);
/// Smallest 2,3,5-smooth integer >= n.
std::size_t next_fast_size(std::size_t n);

}  // namespace bisar::fft
