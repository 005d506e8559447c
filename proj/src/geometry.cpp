#include "bisar/geometry.hpp"

#include <algorithm>

namespace bisar {

double slant_range(const Trajectory& traj, const Vec3& p, double tau) { return norm(traj.at(tau) - p); }

double bistatic_range(const BistaticGeometry& geom, const Vec3& p, double tau) {
    return slant_range(geom.tx, p, tau) + slant_range(geom.rx, p, tau);
}

PcaSolution pca(const Trajectory& traj, const Vec3& p) {
    const double v2 = dot(traj.velocity, traj.velocity);
    if (!(v2 > 0.0)) throw ZeroVelocity("platform velocity has zero magnitude");
    const double tau0 = dot(p - traj.ref_position, traj.velocity) / v2;
    return {tau0, slant_range(traj, p, tau0)};
}

BistaticParams bistatic_params(const BistaticGeometry& geom, const Vec3& p) {
    const PcaSolution t = pca(geom.tx, p);
    const PcaSolution r = pca(geom.rx, p);
    BistaticParams out;
    out.r0t = t.r0;
    out.tau0t = t.tau0;
    out.r0r = r.r0;
    out.tau0r = r.tau0;
    out.a0 = t.tau0 - r.tau0;
    out.a2 = r.r0 > 0.0 ? t.r0 / r.r0 : 0.0;
    return out;
}

namespace {

struct Interval {
    double lo;
    double hi;
};

Interval visibility(const Trajectory& traj, const Vec3& p, double value, double squint, ApertureSpec::Kind kind) {
    const PcaSolution s = pca(traj, p);
    const double v = traj.speed();
    const double dwell = kind == ApertureSpec::Kind::Dwell ? value : s.r0 * value / v;
    // forward squint sees the target before closest approach
    const double centre = s.tau0 - s.r0 * std::tan(squint) / v;
    return {centre - 0.5 * dwell, centre + 0.5 * dwell};
}

}  // namespace

DopplerWindow doppler_window(const BistaticGeometry& geom, const Vec3& p, double f0, const ApertureSpec& aperture) {
    const Interval t = visibility(geom.tx, p, aperture.tx_value, aperture.tx_squint, aperture.kind);
    const Interval r = visibility(geom.rx, p, aperture.rx_value, aperture.rx_squint, aperture.kind);
    const double lo = std::max(t.lo, r.lo);
    const double hi = std::min(t.hi, r.hi);
    if (!(hi > lo)) throw EmptyOverlap("transmitter and receiver visibility intervals do not intersect");

    DopplerWindow w;
    w.tau_cb = 0.5 * (lo + hi);
    w.tau_span = hi - lo;

    // Range rate and acceleration of R_T + R_R in closed form.
    double rate = 0.0;
    double accel = 0.0;
    for (const Trajectory* traj : {&geom.tx, &geom.rx}) {
        const Vec3 d = traj->at(w.tau_cb) - p;
        const double r = norm(d);
        const double v2 = dot(traj->velocity, traj->velocity);
        const double dr = dot(d, traj->velocity) / r;
        rate += dr;
        accel += (v2 - dr * dr) / r;
    }
    const double scale = f0 / kSpeedOfLight;
    w.fdc = -scale * rate;
    w.az_bandwidth = std::abs(scale * accel) * w.tau_span;
    return w;
}

Vec3 ground_point(const Trajectory& rx, double r0, double tau0, int side) {
    const Vec3 pos = rx.at(tau0);
    const Vec3 v = rx.velocity;
    if (!(rx.speed() > 0.0)) throw ZeroVelocity("platform velocity has zero magnitude");
    // Points p with (p - pos).v = 0, |p - pos| = r0, p.z = 0. Write
    // p - pos = a*u + b*w with u, w an orthonormal basis of the plane normal
    // to v, where w is horizontal.
    const Vec3 vhat = v * (1.0 / norm(v));
    Vec3 w = cross({0.0, 0.0, 1.0}, vhat);
    const double wn = norm(w);
    if (wn < 1e-12) throw DegenerateRange("vertical platform velocity");
    w = w * (1.0 / wn);
    const Vec3 u = cross(w, vhat);
    // pos.z + a*u.z + b*w.z = 0 with w.z = 0
    if (std::abs(u.z) < 1e-12) throw DegenerateRange("cannot reach ground plane");
    const double a = -pos.z / u.z;
    const double b2 = r0 * r0 - a * a;
    if (b2 < 0.0) throw DegenerateRange("slant range shorter than the distance to the ground plane");
    const double b = side >= 0 ? std::sqrt(b2) : -std::sqrt(b2);
    Vec3 p = pos + u * a + w * b;
    p.z = 0.0;
    return p;
}

}  // namespace bisar
