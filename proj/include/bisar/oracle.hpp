// Brute-force references: spectra by direct quadrature and time-domain
// back-projection.
#pragma once

#include <string>

#include "bisar/focuser.hpp"
#include "bisar/geometry.hpp"
#include "bisar/rawsim.hpp"
#include "bisar/spectrum.hpp"

namespace bisar {

struct OracleReport {
    double rms_phase_error = 0.0;  // rad
    double max_phase_error = 0.0;  // rad
    double max_magnitude_error = 0.0;  // relative
    double support_fraction = 0.0;
    std::size_t support_cells = 0;
    Grid2D<double> error_map;  // phase error, NaN outside the support
};

/// Frequency grid covering [-B/2, B/2] and the Doppler band swept by the
/// composite window.
FreqAxes validation_axes(const BistaticGeometry& geom, const Vec3& p, const RadarParams& radar,
                         const DopplerWindow& window, std::size_t nf = 5, std::size_t nft = 241);

/// Midpoint quadrature of exp(-j 2 pi [(f + f0) tau_d(tau) + f_tau tau]) over
/// the window, with step 1 / (oversample * max(prf, azimuth bandwidth)).
SpectrumGrid numeric_spectrum(const BistaticGeometry& geom, const Vec3& p, const RadarParams& radar,
                              const DopplerWindow& window, const FreqAxes& axes, double oversample = 4.0);

/// Phase comparison over cells inside the -3 dB support whose common
/// stationary time lies at least `fresnel_guard` Fresnel lengths inside the
/// window edges.
OracleReport compare_lbf(const BistaticGeometry& geom, const Vec3& p, const RadarParams& radar,
                         const DopplerWindow& window, const FreqAxes& axes, double fresnel_guard = 16.0);

/// Coherent time-domain sum on `grid` (receiver coordinates) of range
/// compressed data, 8x oversampled and linearly interpolated in fast time.
FocusedImage backproject(const RawDataGrid& compressed, const BistaticGeometry& geom, const RadarParams& radar,
                         const ImageGrid& grid, int look_side);

/// Moves the transmitter along its track so the target's a0 becomes `a0`.
BistaticGeometry with_a0(const BistaticGeometry& g, const Vec3& target, double a0);
/// Scales the transmitter's closest-approach offset so a2 becomes `a2`.
BistaticGeometry with_a2(const BistaticGeometry& g, const Vec3& target, double a2);
/// Controlled sweep point: `param` ("a0" or "a2") takes `value`, the other
/// one is held neutral (a0 = 0, a2 = 1).
BistaticGeometry sweep_geometry(const BistaticGeometry& g, const Vec3& target, const std::string& param, double value);

}  // namespace bisar
