// Straight-line platform trajectories, closest-approach solutions and the
// composite-beam azimuth window.
#pragma once

#include <cmath>

#include "bisar/core.hpp"

namespace bisar {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    bool operator==(const Vec3&) const = default;
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

struct Trajectory {
    Vec3 ref_position;  // position at tau = 0
    Vec3 velocity;

    Vec3 at(double tau) const { return ref_position + velocity * tau; }
    double speed() const { return norm(velocity); }
    bool operator==(const Trajectory&) const = default;
};

struct PointTarget {
    Vec3 position;
    cplx reflectivity{1.0, 0.0};
};

struct PcaSolution {
    double tau0 = 0.0;
    double r0 = 0.0;
};

struct BistaticGeometry {
    Trajectory tx;
    Trajectory rx;
    bool operator==(const BistaticGeometry&) const = default;
};

struct BistaticParams {
    double a0 = 0.0;  // tau0t - tau0r
    double a2 = 1.0;  // r0t / r0r
    double r0t = 0.0;
    double tau0t = 0.0;
    double r0r = 0.0;
    double tau0r = 0.0;
};

/// Visibility of a target from one platform: either a dwell time or an
/// azimuth beamwidth (converted to dwell via r0*theta/|v|). The beam centre is
/// steered by the squint angle, positive forward.
struct ApertureSpec {
    enum class Kind { Dwell, Beamwidth };
    Kind kind = Kind::Dwell;
    double tx_value = 1.0;  // seconds or radians
    double rx_value = 1.0;
    double tx_squint = 0.0;  // radians
    double rx_squint = 0.0;
};

struct DopplerWindow {
    double tau_cb = 0.0;
    double tau_span = 0.0;
    double fdc = 0.0;
    double az_bandwidth = 0.0;

    double start() const { return tau_cb - 0.5 * tau_span; }
    double end() const { return tau_cb + 0.5 * tau_span; }
};

double slant_range(const Trajectory& traj, const Vec3& p, double tau);
/// R_T(tau) + R_R(tau).
double bistatic_range(const BistaticGeometry& geom, const Vec3& p, double tau);

PcaSolution pca(const Trajectory& traj, const Vec3& p);
BistaticParams bistatic_params(const BistaticGeometry& geom, const Vec3& p);

DopplerWindow doppler_window(const BistaticGeometry& geom, const Vec3& p, double f0, const ApertureSpec& aperture);

/// Ground point (z = 0) seen by `rx` at closest approach time tau0 with slant
/// range r0, on the left (side = +1, +y for a +x track) or right of the track.
/// Throws DegenerateRange if r0 is shorter than the platform height.
Vec3 ground_point(const Trajectory& rx, double r0, double tau0, int side);

}  // namespace bisar
