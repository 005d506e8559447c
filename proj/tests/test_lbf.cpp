#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "bisar/lbf.hpp"
#include "support.hpp"

using namespace bisar;
using bisar::test::Gen;

namespace {

constexpr double kF0 = 9.6e9;

Vec3 target_for(Gen& g, const BistaticGeometry& geom) {
    return ground_point(geom.rx, geom.rx.ref_position.z * g.uniform(1.2, 1.6), g.uniform(-2.0, 2.0), 1);
}

FreqPair random_freq(Gen& g) { return {g.uniform(-25e6, 25e6), g.uniform(-300.0, 300.0)}; }

// Root of a monotone slope by plain bisection on a wide bracket.
double bisect(const std::function<double(double)>& phi, double lo, double hi) {
    auto slope = [&](double t) { return (phi(t + 1e-6) - phi(t - 1e-6)) / 2e-6; };
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (slope(mid) > 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

// Same thing written directly against the range law, no finite difference.
double bisect_exact(const Trajectory& tr, const Vec3& p, const FreqPair& fq, double lo, double hi) {
    auto slope = [&](double t) {
        const Vec3 d = tr.at(t) - p;
        return (fq.f + kF0) / kSpeedOfLight * dot(d, tr.velocity) / norm(d) + 0.5 * fq.f_tau;
    };
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (slope(mid) > 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("split phases") {
    Gen g(41);
    for (int trial = 0; trial < 20; ++trial) {
        const BistaticGeometry geom = g.gc_geometry();
        const Vec3 p = target_for(g, geom);
        const FreqPair fq{g.uniform(-25e6, 25e6), 0.0};
        const SplitPhases ph = split_phases(geom, p, fq, kF0);
        // f_tau = 0: stationary at closest approach
        for (const Trajectory* tr : {&geom.tx, &geom.rx}) {
            const PcaSolution s = pca(*tr, p);
            const auto& phi = tr == &geom.tx ? ph.phi_t : ph.phi_r;
            const double h = 1e-3;
            CHECK(std::abs(phi(s.tau0 + h) - phi(s.tau0 - h)) < 1e-6 * std::abs(phi(s.tau0 + h) - phi(s.tau0)) + 1e-9);
        }
        const double t = g.uniform(-1.0, 1.0);
        const double kernel = kTwoPi * ((fq.f + kF0) / kSpeedOfLight * bistatic_range(geom, p, t) + fq.f_tau * t);
        CHECK(ph.phi_t(t) + ph.phi_r(t) == doctest::Approx(kernel).epsilon(1e-13));
    }
    Gen m(42);
    const BistaticGeometry geom = m.gc_geometry();
    const BistaticGeometry mono{geom.rx, geom.rx};
    const Vec3 p = target_for(m, mono);
    const SplitPhases ph = split_phases(mono, p, random_freq(m), kF0);
    for (double t : {-0.7, 0.0, 0.4}) CHECK(ph.phi_t(t) == ph.phi_r(t));
}

TEST_CASE("stationary points at zero Doppler are the closest-approach times") {
    Gen g(43);
    for (int trial = 0; trial < 20; ++trial) {
        const BistaticGeometry geom = g.gc_geometry();
        const Vec3 p = target_for(g, geom);
        const StationarySolution s = stationary_points(geom, p, {g.uniform(-25e6, 25e6), 0.0}, kF0);
        CHECK(s.tau_t == doctest::Approx(pca(geom.tx, p).tau0).epsilon(1e-9));
        CHECK(s.tau_r == doctest::Approx(pca(geom.rx, p).tau0).epsilon(1e-9));
    }
}

TEST_CASE("stationary times match an independent bisection") {
    Gen g(44);
    for (int trial = 0; trial < 50; ++trial) {
        const BistaticGeometry geom = g.gc_geometry();
        const Vec3 p = target_for(g, geom);
        const FreqPair fq = random_freq(g);
        const StationarySolution s = stationary_points(geom, p, fq, kF0);
        const double bt = bisect_exact(geom.tx, p, fq, -200.0, 200.0);
        const double br = bisect_exact(geom.rx, p, fq, -200.0, 200.0);
        CHECK(std::abs(s.tau_t - bt) < 1e-10);
        CHECK(std::abs(s.tau_r - br) < 1e-10);
        // tau_common is a weighted mean of the two
        CHECK(s.tau_common >= std::min(s.tau_t, s.tau_r) - 1e-12);
        CHECK(s.tau_common <= std::max(s.tau_t, s.tau_r) + 1e-12);
        CHECK(s.ddphi_t > 0.0);
        CHECK(s.ddphi_r > 0.0);
    }
    // finite-difference bisection on the phase functions themselves
    Gen h(45);
    const BistaticGeometry geom = h.gc_geometry();
    const Vec3 p = target_for(h, geom);
    const FreqPair fq = random_freq(h);
    const SplitPhases ph = split_phases(geom, p, fq, kF0);
    const StationarySolution s = stationary_points(geom, p, fq, kF0);
    CHECK(std::abs(bisect(ph.phi_t, -200.0, 200.0) - s.tau_t) < 1e-6);
}

TEST_CASE("tandem stationary-time difference does not depend on azimuth frequency") {
    Gen g(46);
    for (int trial = 0; trial < 20; ++trial) {
        const BistaticGeometry geom = g.tandem_geometry();
        const Vec3 p = target_for(g, geom);
        const double a0 = bistatic_params(geom, p).a0;
        for (double ft : {-300.0, -50.0, 0.0, 120.0, 300.0}) {
            const StationarySolution s = stationary_points(geom, p, {1e6, ft}, kF0);
            CHECK(std::abs((s.tau_t - s.tau_r) - a0) < 1e-9);
        }
    }
}

TEST_CASE("monostatic limit: no bistatic term and the textbook phase") {
    Gen g(47);
    for (int trial = 0; trial < 30; ++trial) {
        const Trajectory rx = g.gc_geometry().rx;
        const BistaticGeometry mono{rx, rx};
        const Vec3 p = target_for(g, mono);
        const FreqPair fq = random_freq(g);
        const LbfValue v = evaluate(mono, p, fq, kF0, nullptr);
        CHECK(v.psi2 == 0.0);
        const PcaSolution s = pca(rx, p);
        const double F = migration_factor(fq.f, fq.f_tau, kF0, rx.speed());
        const double expected = kTwoPi * (2.0 * s.r0 / kSpeedOfLight * std::sqrt(F) + fq.f_tau * s.tau0);
        CHECK(std::abs(v.psi1 - expected) < 1e-6 * std::abs(expected) + 1e-6);
    }
}

TEST_CASE("tandem bistatic term has its closed form") {
    Gen g(48);
    for (int trial = 0; trial < 30; ++trial) {
        const BistaticGeometry geom = g.tandem_geometry();
        const Vec3 p = target_for(g, geom);
        const FreqPair fq = random_freq(g);
        const BistaticParams b = bistatic_params(geom, p);
        const double v = geom.rx.speed();
        const double fc = fq.f + kF0;
        const double F = migration_factor(fq.f, fq.f_tau, kF0, v);
        const double dd = kTwoPi * v * v * std::pow(F, 1.5) / (kSpeedOfLight * b.r0r * fc * fc);
        const LbfValue val = evaluate(geom, p, fq, kF0, nullptr);
        CHECK(val.psi2 == doctest::Approx(0.25 * dd * b.a0 * b.a0).epsilon(1e-6));
        CHECK(std::abs(val.total) == doctest::Approx(std::sqrt(kTwoPi / (2.0 * dd))).epsilon(1e-6));
    }
}

TEST_CASE("window gates the spectrum") {
    Gen g(49);
    const BistaticGeometry geom = g.gc_geometry();
    const Vec3 p = target_for(g, geom);
    const FreqPair fq = random_freq(g);
    const StationarySolution s = stationary_points(geom, p, fq, kF0);
    DopplerWindow inside;
    inside.tau_cb = s.tau_common;
    inside.tau_span = 1.0;
    DopplerWindow outside = inside;
    outside.tau_cb += 5.0;
    const LbfValue a = evaluate(geom, p, fq, kF0, &inside);
    const LbfValue b = evaluate(geom, p, fq, kF0, &outside);
    CHECK(a.window == 1);
    CHECK(b.window == 0);
    CHECK(b.total == cplx{});
    CHECK(a.total == evaluate(geom, p, fq, kF0, nullptr).total);
}

TEST_CASE("grid evaluation") {
    Gen g(50);
    const BistaticGeometry geom = g.gc_geometry();
    const Vec3 p = target_for(g, geom);
    FreqAxes axes{-10e6, 1e6, 21, -200.0, 10.0, 41};
    DopplerWindow none;
    none.tau_cb = 1e4;
    none.tau_span = 1.0;
    const SpectrumGrid z = evaluate_grid(geom, p, axes, kF0, &none);
    CHECK(std::all_of(z.samples.data().begin(), z.samples.data().end(), [](cplx x) { return x == cplx{}; }));

    const SpectrumGrid full = evaluate_grid(geom, p, axes, kF0, nullptr);
    CHECK(full.zeroed_cells == 0);
    for (std::size_t i : {0u, 17u, 40u})
        for (std::size_t k : {0u, 9u, 20u})
            CHECK(full.samples(i, k) == evaluate(geom, p, {axes.f(k), axes.ft(i)}, kF0, nullptr).total);

    // azimuth frequencies beyond the platform support are counted, not thrown
    const double v = geom.rx.speed();
    FreqAxes wide{0.0, 1.0, 1, 2.0 * v * kF0 / kSpeedOfLight * 1.5, 1.0, 2};
    const SpectrumGrid w = evaluate_grid(geom, p, wide, kF0, nullptr);
    CHECK(w.zeroed_cells == 2);
}

TEST_CASE("degenerate inputs") {
    Gen g(51);
    const BistaticGeometry geom = g.gc_geometry();
    const Vec3 on_track = geom.rx.at(0.3);
    CHECK_THROWS_AS(stationary_points(geom, on_track, {0.0, 0.0}, kF0), DegenerateRange);
    const Vec3 p = target_for(g, geom);
    const double too_fast = 2.0 * std::max(geom.tx.speed(), geom.rx.speed()) * kF0 / kSpeedOfLight * 1.2;
    CHECK_THROWS_AS(stationary_points(geom, p, {0.0, too_fast}, kF0), NoStationaryPoint);
    CHECK_THROWS_AS(evaluate(geom, p, {-2.0 * kF0, 0.0}, kF0, nullptr), NoStationaryPoint);
}
