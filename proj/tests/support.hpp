// Shared helpers for the unit tests: a seeded generator of geometries and
// small scenes that simulate and focus in well under a second.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "bisar/config.hpp"
#include "bisar/geometry.hpp"
#include "bisar/irf.hpp"

namespace bisar::test {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    cplx complex() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }
    double sign() { return integer(0, 1) == 0 ? -1.0 : 1.0; }

    Vec3 vec(double lo, double hi) { return {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)}; }

    // Airborne-scale platform at height h flying roughly along +x.
    Trajectory platform(double h, double speed, double yaw_deg) {
        const double yaw = yaw_deg * kPi / 180.0;
        return {{uniform(-200.0, 200.0), uniform(-3000.0, -1500.0), h},
                {speed * std::cos(yaw), speed * std::sin(yaw), 0.0}};
    }

    // Transmitter yawed a few degrees and slid along its track so that both
    // platforms see the scene centre within a fraction of a second.
    BistaticGeometry gc_geometry() {
        const double v = uniform(80.0, 150.0);
        BistaticGeometry g{platform(uniform(2000.0, 4000.0), uniform(80.0, 150.0), uniform(-4.0, 4.0)),
                           platform(uniform(2000.0, 4000.0), v, 0.0)};
        const Vec3 centre = ground_point(g.rx, 1.4 * g.rx.ref_position.z, 0.0, 1);
        const double lag = pca(g.tx, centre).tau0 - uniform(-0.2, 0.2);
        g.tx.ref_position = g.tx.ref_position + g.tx.velocity * lag;
        return g;
    }

    BistaticGeometry ti_geometry() {
        const Vec3 vel{uniform(80.0, 150.0), 0.0, 0.0};
        return {{{uniform(-30.0, 30.0), uniform(-3000.0, -1500.0), uniform(2000.0, 4000.0)}, vel},
                {{0.0, uniform(-3000.0, -1500.0), uniform(2000.0, 4000.0)}, vel}};
    }

    BistaticGeometry tandem_geometry() {
        const Vec3 vel{uniform(80.0, 150.0), 0.0, 0.0};
        const Vec3 rx{0.0, uniform(-3000.0, -1500.0), uniform(2000.0, 4000.0)};
        return {{rx + Vec3{uniform(-30.0, 30.0), 0.0, 0.0}, vel}, {rx, vel}};
    }

private:
    std::mt19937_64 rng_;
};

// X-band airborne radar with short pulses: a few hundred range bins.
inline RadarParams small_radar() {
    RadarParams r;
    r.f0 = 9.6e9;
    r.bandwidth = 50e6;
    r.pulse_duration = 1e-6;
    r.prf = 400.0;
    r.fs = 60e6;
    return r;
}

// One or more targets at receiver coordinates, dwell of `dwell` seconds.
inline ScenarioConfig small_scenario(const BistaticGeometry& geom, std::vector<TargetSpec> targets,
                                     double dwell = 1.0, std::size_t n_azimuth = 512) {
    ScenarioConfig c;
    c.name = "test";
    c.radar = small_radar();
    c.geometry = geom;
    c.look_side = 1;
    c.aperture.tx_value = dwell;
    c.aperture.rx_value = dwell;
    c.n_azimuth = n_azimuth;
    c.targets = std::move(targets);
    return c;
}

inline TargetSpec at(double r0r, double tau0r, cplx sigma = {1.0, 0.0}) {
    TargetSpec t;
    t.r0r = r0r;
    t.tau0r = tau0r;
    t.reflectivity = sigma;
    return t;
}

}  // namespace bisar::test
