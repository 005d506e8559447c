#include "bisar/rawsim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bisar/fft.hpp"
#include "bisar/parallel.hpp"

namespace bisar {

void RadarParams::validate() const {
    if (!(f0 > 0.0)) throw ConfigError("carrier frequency must be positive");
    if (!(bandwidth > 0.0)) throw ConfigError("bandwidth must be positive");
    if (!(pulse_duration > 0.0)) throw ConfigError("pulse duration must be positive");
    if (!(prf > 0.0)) throw ConfigError("prf must be positive");
    if (fs < bandwidth) throw ConfigError("fs must be at least the bandwidth");
    if (pulse_duration * bandwidth < 1.0) throw ConfigError("time-bandwidth product below 1");
    if (chirp_sign != 1 && chirp_sign != -1) throw ConfigError("chirp_sign must be +1 or -1");
}

cplx baseband_chirp(const RadarParams& radar, double t) {
    if (std::abs(t) > 0.5 * radar.pulse_duration) return {0.0, 0.0};
    return std::polar(1.0, kPi * radar.chirp_rate() * t * t);
}

std::vector<DopplerWindow> target_windows(const BistaticGeometry& geom, const Scene& scene, double f0,
                                          const ApertureSpec& aperture) {
    std::vector<DopplerWindow> out;
    out.reserve(scene.targets.size());
    for (const auto& t : scene.targets) out.push_back(doppler_window(geom, t.position, f0, aperture));
    return out;
}

namespace {

bool inside(const DopplerWindow& w, double tau) { return tau >= w.start() && tau < w.end(); }

// Delay extremes over the pulses inside the window; the bistatic range is
// convex in tau so the maximum is at an end and the minimum is at an end or
// at the sampled interior minimum.
std::pair<double, double> delay_span(const BistaticGeometry& geom, const Vec3& p, const DopplerWindow& w,
                                     const AzimuthGrid& az, double prf) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t m = 0; m < az.n_azimuth; ++m) {
        const double tau = az.tau_start + static_cast<double>(m) / prf;
        if (!inside(w, tau)) continue;
        const double d = bistatic_range(geom, p, tau) / kSpeedOfLight;
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    return {lo, hi};
}

}  // namespace

ReceiveWindow auto_receive_window(const BistaticGeometry& geom, const Scene& scene, const RadarParams& radar,
                                  const std::vector<DopplerWindow>& windows, const AzimuthGrid& az) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < scene.targets.size(); ++i) {
        auto [a, b] = delay_span(geom, scene.targets[i].position, windows[i], az, radar.prf);
        lo = std::min(lo, a);
        hi = std::max(hi, b);
    }
    if (!std::isfinite(lo)) throw EmptyOverlap("no target echo falls inside the azimuth grid");
    const double t0 = lo - radar.pulse_duration;
    const double span = hi + radar.pulse_duration - t0;
    const auto n = static_cast<std::size_t>(std::ceil(span * radar.fs)) + 1;
    return {t0, fft::next_fast_size(n)};
}

RawDataGrid simulate(const BistaticGeometry& geom, const Scene& scene, const RadarParams& radar,
                     const std::vector<DopplerWindow>& windows, const AzimuthGrid& az, const ReceiveWindow& rw) {
    radar.validate();
    RawDataGrid raw;
    raw.samples = Grid2D<cplx>(az.n_azimuth, rw.n_range);
    raw.t0 = rw.t0;
    raw.tau_start = az.tau_start;
    raw.fs = radar.fs;
    raw.prf = radar.prf;

    const double t_end = rw.t0 + static_cast<double>(rw.n_range - 1) / radar.fs;
    const double half = 0.5 * radar.pulse_duration;

    for (std::size_t i = 0; i < scene.targets.size(); ++i) {
        auto [a, b] = delay_span(geom, scene.targets[i].position, windows[i], az, radar.prf);
        if (std::isfinite(a) && (a - half < rw.t0 || b + half > t_end))
            throw WindowOverrun("echo of target " + std::to_string(i) + " falls outside the receive window");
    }

    parallel_for(0, az.n_azimuth, [&](std::size_t m) {
        const double tau = raw.slow_time(m);
        auto line = raw.samples.row(m);
        for (std::size_t i = 0; i < scene.targets.size(); ++i) {
            if (!inside(windows[i], tau)) continue;
            const auto& target = scene.targets[i];
            const double td = bistatic_range(geom, target.position, tau) / kSpeedOfLight;
            const cplx carrier = target.reflectivity * std::polar(1.0, -kTwoPi * radar.f0 * td);
            const auto first = static_cast<std::ptrdiff_t>(std::ceil((td - half - rw.t0) * radar.fs));
            const auto last = static_cast<std::ptrdiff_t>(std::floor((td + half - rw.t0) * radar.fs));
            for (std::ptrdiff_t n = std::max<std::ptrdiff_t>(first, 0);
                 n <= std::min<std::ptrdiff_t>(last, static_cast<std::ptrdiff_t>(rw.n_range) - 1); ++n) {
                line[n] += carrier * baseband_chirp(radar, raw.fast_time(n) - td);
            }
        }
    });
    return raw;
}

std::vector<cplx> chirp_spectrum(const RadarParams& radar, std::size_t n) {
    std::vector<cplx> h(n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto idx = k < (n + 1) / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
        h[k] = baseband_chirp(radar, idx / radar.fs);
    }
    fft::forward(h);
    return h;
}

RawDataGrid range_compress(const RawDataGrid& raw, const RadarParams& radar) {
    RawDataGrid out = raw;
    const std::vector<cplx> spectrum = chirp_spectrum(radar, raw.n_range());
    parallel_for(0, raw.n_azimuth(), [&](std::size_t m) {
        auto line = out.samples.row(m);
        fft::forward(line);
        for (std::size_t k = 0; k < line.size(); ++k) line[k] *= std::conj(spectrum[k]);
        fft::inverse(line);
    });
    return out;
}

}  // namespace bisar
