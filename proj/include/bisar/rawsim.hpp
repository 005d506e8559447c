// Time-domain bistatic raw-data simulation and range compression.
#pragma once

#include <vector>

#include "bisar/core.hpp"
#include "bisar/geometry.hpp"

namespace bisar {

struct RadarParams {
    double f0 = 0.0;
    double bandwidth = 0.0;
    double pulse_duration = 0.0;
    double prf = 0.0;
    double fs = 0.0;
    int chirp_sign = 1;

    double chirp_rate() const { return chirp_sign * bandwidth / pulse_duration; }
    /// Throws ConfigError on violated invariants.
    void validate() const;
    bool operator==(const RadarParams&) const = default;
};

struct RawDataGrid {
    Grid2D<cplx> samples;  // [azimuth][range]
    double t0 = 0.0;
    double tau_start = 0.0;
    double fs = 1.0;
    double prf = 1.0;

    std::size_t n_azimuth() const { return samples.rows(); }
    std::size_t n_range() const { return samples.cols(); }
    double fast_time(std::size_t n) const { return t0 + static_cast<double>(n) / fs; }
    double slow_time(std::size_t m) const { return tau_start + static_cast<double>(m) / prf; }
};

struct Scene {
    std::vector<PointTarget> targets;
};

struct ReceiveWindow {
    double t0 = 0.0;
    std::size_t n_range = 0;
};

struct AzimuthGrid {
    double tau_start = 0.0;
    std::size_t n_azimuth = 0;
};

cplx baseband_chirp(const RadarParams& radar, double t);

/// Rectangular azimuth window of every target, from the aperture model.
std::vector<DopplerWindow> target_windows(const BistaticGeometry& geom, const Scene& scene, double f0,
                                          const ApertureSpec& aperture);

/// Receive window covering every echo inside its azimuth window with one
/// pulse duration of margin on both sides, rounded up to a fast FFT size.
ReceiveWindow auto_receive_window(const BistaticGeometry& geom, const Scene& scene, const RadarParams& radar,
                                  const std::vector<DopplerWindow>& windows, const AzimuthGrid& az);

RawDataGrid simulate(const BistaticGeometry& geom, const Scene& scene, const RadarParams& radar,
                     const std::vector<DopplerWindow>& windows, const AzimuthGrid& az, const ReceiveWindow& rw);

RawDataGrid range_compress(const RawDataGrid& raw, const RadarParams& radar);

/// Spectrum of the baseband chirp centred at t = 0, on the FFT-ordered
/// frequency grid k*fs/n (wrapped to [-fs/2, fs/2)).
std::vector<cplx> chirp_spectrum(const RadarParams& radar, std::size_t n);

}  // namespace bisar
