// Impulse-response analysis of focused images.
#pragma once

#include <optional>

#include "bisar/focuser.hpp"

namespace bisar {

/// A position in receiver coordinates.
struct ImagePoint {
    double range = 0.0;  // R0R, meters
    double tau = 0.0;    // tau0R, seconds
};

struct IrfMetrics {
    ImagePoint peak;
    double peak_az_m = 0.0;  // tau * |v_rx|
    double peak_row = 0.0;   // fractional pixel coordinates
    double peak_col = 0.0;
    double peak_mag = 0.0;
    double res_range_3db = 0.0;  // m
    double res_az_3db = 0.0;     // m
    double pslr_range = 0.0;     // dB
    double pslr_az = 0.0;        // dB
    double err_range = 0.0;      // m, measured minus truth
    double err_az = 0.0;         // m
};

struct IrfOptions {
    int search = 16;    // half width of the peak search window, cells
    int patch = 32;     // interpolation patch size, cells
    int upsample = 16;
};

/// PSLR reported when no sidelobe is found.
inline constexpr double kPslrFloor = -300.0;

IrfMetrics extract_irf(const FocusedImage& img, const ImagePoint& approx, const std::optional<ImagePoint>& truth,
                       const IrfOptions& opt = {});

/// Position of the brightest pixel of the whole image.
ImagePoint global_peak(const FocusedImage& img);

struct Separation {
    double range = 0.0;      // m
    double azimuth_m = 0.0;  // m
};

/// b minus a, from the two interpolated peaks.
Separation pairwise_distance(const FocusedImage& img, const ImagePoint& a, const ImagePoint& b,
                             const IrfOptions& opt = {});

}  // namespace bisar
