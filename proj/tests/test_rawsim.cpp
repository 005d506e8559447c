#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "bisar/fft.hpp"
#include "bisar/parallel.hpp"
#include "bisar/rawsim.hpp"
#include "support.hpp"

using namespace bisar;
using bisar::test::Gen;

namespace {

struct Setup {
    BistaticGeometry geom;
    Scene scene;
    RadarParams radar = test::small_radar();
    ApertureSpec aperture;
    std::vector<DopplerWindow> windows;
    AzimuthGrid az;
    ReceiveWindow rw;
};

Setup setup(std::uint64_t seed, std::size_t n_targets) {
    Gen g(seed);
    Setup s;
    s.geom = g.tandem_geometry();
    s.aperture.tx_value = s.aperture.rx_value = 3.0;
    for (std::size_t i = 0; i < n_targets; ++i) {
        const double r0 = s.geom.rx.ref_position.z * g.uniform(1.3, 1.5);
        s.scene.targets.push_back({ground_point(s.geom.rx, r0, g.uniform(-0.2, 0.2), 1), g.complex()});
    }
    s.windows = target_windows(s.geom, s.scene, s.radar.f0, s.aperture);
    double lo = 1e300, hi = -1e300;
    for (const auto& w : s.windows) {
        lo = std::min(lo, w.start());
        hi = std::max(hi, w.end());
    }
    s.az = {lo - 0.01, static_cast<std::size_t>((hi - lo + 0.02) * s.radar.prf) + 1};
    s.rw = auto_receive_window(s.geom, s.scene, s.radar, s.windows, s.az);
    return s;
}

RawDataGrid run(const Setup& s) { return simulate(s.geom, s.scene, s.radar, s.windows, s.az, s.rw); }

}  // namespace

TEST_CASE("baseband chirp") {
    const RadarParams r = test::small_radar();
    CHECK(baseband_chirp(r, 0.0) == cplx(1.0, 0.0));
    CHECK(baseband_chirp(r, 0.51 * r.pulse_duration) == cplx(0.0, 0.0));
    CHECK(baseband_chirp(r, -0.51 * r.pulse_duration) == cplx(0.0, 0.0));
    const double t = 0.3 * r.pulse_duration;
    CHECK(std::arg(baseband_chirp(r, t)) ==
          doctest::Approx(std::remainder(kPi * r.bandwidth / r.pulse_duration * t * t, kTwoPi)));
}

TEST_CASE("sampled chirp spectrum has a -3 dB width close to the bandwidth") {
    RadarParams r = test::small_radar();
    r.pulse_duration = 40e-6;  // time-bandwidth 2000, nearly rectangular spectrum
    const std::size_t n = 16384;
    const std::vector<cplx> h = chirp_spectrum(r, n);
    double peak = 0.0;
    for (const auto& x : h) peak = std::max(peak, std::abs(x));
    std::size_t above = 0;
    for (const auto& x : h) above += std::abs(x) >= peak / std::sqrt(2.0);
    const double width = static_cast<double>(above) * r.fs / static_cast<double>(n);
    CHECK(width == doctest::Approx(r.bandwidth).epsilon(0.03));
}

TEST_CASE("compressed echo peaks at the bistatic delay") {
    Setup s = setup(31, 1);
    // one pulse at the middle of the window
    const double tau = s.windows[0].tau_cb;
    s.az = {tau, 1};
    s.rw = auto_receive_window(s.geom, s.scene, s.radar, s.windows, s.az);
    const RawDataGrid rc = range_compress(run(s), s.radar);
    std::size_t best = 0;
    for (std::size_t n = 0; n < rc.n_range(); ++n)
        if (std::abs(rc.samples(0, n)) > std::abs(rc.samples(0, best))) best = n;
    const double td = bistatic_range(s.geom, s.scene.targets[0].position, tau) / kSpeedOfLight;
    CHECK(std::abs(rc.fast_time(best) - td) <= 1.0 / s.radar.fs);
}

TEST_CASE("superposition and scaling are exact") {
    const Setup both = setup(32, 2);
    Setup a = both, b = both;
    a.scene.targets.resize(1);
    a.windows.resize(1);
    b.scene.targets.erase(b.scene.targets.begin());
    b.windows.erase(b.windows.begin());
    const RawDataGrid sab = run(both), sa = run(a), sb = run(b);
    bool equal = true;
    for (std::size_t i = 0; i < sab.samples.size(); ++i)
        equal = equal && sab.samples.data()[i] == sa.samples.data()[i] + sb.samples.data()[i];
    CHECK(equal);

    Setup twice = a;
    twice.scene.targets[0].reflectivity *= 2.0;
    const RawDataGrid s2 = run(twice);
    bool doubled = true;
    for (std::size_t i = 0; i < s2.samples.size(); ++i)
        doubled = doubled && s2.samples.data()[i] == 2.0 * sa.samples.data()[i];
    CHECK(doubled);

    Setup zero = both;
    for (auto& t : zero.scene.targets) t.reflectivity = 0.0;
    const RawDataGrid s0 = run(zero);
    CHECK(std::all_of(s0.samples.data().begin(), s0.samples.data().end(), [](cplx x) { return x == cplx{}; }));
}

TEST_CASE("echo outside the receive window is an error") {
    Setup s = setup(33, 1);
    ReceiveWindow shorter = s.rw;
    shorter.n_range = s.rw.n_range / 2;
    CHECK_THROWS_AS(simulate(s.geom, s.scene, s.radar, s.windows, s.az, shorter), WindowOverrun);
    ReceiveWindow late = s.rw;
    late.t0 += 3.0 * s.radar.pulse_duration;
    CHECK_THROWS_AS(simulate(s.geom, s.scene, s.radar, s.windows, s.az, late), WindowOverrun);
}

TEST_CASE("azimuth phase follows the carrier delay") {
    const Setup s = setup(34, 1);
    const RawDataGrid rc = range_compress(run(s), s.radar);
    const Vec3 p = s.scene.targets[0].position;
    const cplx sigma = s.scene.targets[0].reflectivity;
    std::size_t checked = 0;
    double worst = 0.0;
    for (std::size_t m = 0; m < rc.n_azimuth(); ++m) {
        const double tau = rc.slow_time(m);
        if (tau < s.windows[0].start() || tau >= s.windows[0].end()) continue;
        const double td = bistatic_range(s.geom, p, tau) / kSpeedOfLight;
        const double x = (td - rc.t0) * rc.fs;
        const double frac = x - std::round(x);
        if (std::abs(frac) > 0.02) continue;  // gate on the sample grid
        const cplx v = rc.samples(m, static_cast<std::size_t>(std::lround(x))) / sigma;
        const double expected = -kTwoPi * s.radar.f0 * td;
        worst = std::max(worst, std::abs(std::remainder(std::arg(v) - expected, kTwoPi)));
        ++checked;
    }
    CHECK(checked > 3);
    CHECK(worst < 1e-3);
}

TEST_CASE("range compression of a single pulse") {
    RadarParams r = test::small_radar();
    const std::size_t n = 512;
    RawDataGrid raw;
    raw.samples = Grid2D<cplx>(1, n);
    raw.fs = r.fs;
    raw.prf = r.prf;
    const double delay = 200.0 / r.fs;
    const cplx amp{0.6, -0.3};
    for (std::size_t k = 0; k < n; ++k) raw.samples(0, k) = amp * baseband_chirp(r, raw.fast_time(k) - delay);
    const RawDataGrid rc = range_compress(raw, r);
    std::size_t best = 0;
    for (std::size_t k = 0; k < n; ++k)
        if (std::abs(rc.samples(0, k)) > std::abs(rc.samples(0, best))) best = k;
    CHECK(best == 200);
    CHECK(std::abs(rc.samples(0, best)) == doctest::Approx(r.pulse_duration * r.fs * std::abs(amp)).epsilon(0.01));

    // -3 dB width from a band-limited interpolation of the compressed line
    std::vector<cplx> line(rc.samples.row(0).begin(), rc.samples.row(0).end());
    fft::forward(line);
    const std::size_t up = 32, nu = n * up;
    std::vector<cplx> fine(nu);
    for (std::size_t k = 0; k < n / 2; ++k) fine[k] = line[k];
    for (std::size_t k = n / 2; k < n; ++k) fine[nu - n + k] = line[k];
    fft::inverse(fine);
    const double pk = std::abs(fine[best * up]);
    std::size_t lo = best * up, hi = best * up;
    while (std::abs(fine[lo - 1]) >= pk / std::sqrt(2.0)) --lo;
    while (std::abs(fine[hi + 1]) >= pk / std::sqrt(2.0)) ++hi;
    const double width = static_cast<double>(hi - lo + 1) / (r.fs * up);
    CHECK(width == doctest::Approx(0.886 / r.bandwidth).epsilon(0.05));

    RawDataGrid zero = raw;
    for (auto& x : zero.samples.data()) x = 0.0;
    const RawDataGrid rz = range_compress(zero, r);
    CHECK(std::all_of(rz.samples.data().begin(), rz.samples.data().end(), [](cplx x) { return x == cplx{}; }));
}

TEST_CASE("range compression is linear") {
    RadarParams r = test::small_radar();
    Gen g(35);
    RawDataGrid a, b, sum;
    a.samples = b.samples = sum.samples = Grid2D<cplx>(2, 256);
    a.fs = b.fs = sum.fs = r.fs;
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        a.samples.data()[i] = g.complex();
        b.samples.data()[i] = g.complex();
        sum.samples.data()[i] = a.samples.data()[i] + b.samples.data()[i];
    }
    const RawDataGrid ra = range_compress(a, r), rb = range_compress(b, r), rs = range_compress(sum, r);
    double err = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < rs.samples.size(); ++i) {
        err = std::max(err, std::abs(rs.samples.data()[i] - ra.samples.data()[i] - rb.samples.data()[i]));
        ref = std::max(ref, std::abs(rs.samples.data()[i]));
    }
    CHECK(err < 1e-12 * ref);
}

TEST_CASE("simulation is bit-identical for any worker count") {
    const Setup s = setup(36, 3);
    set_thread_count(1);
    const RawDataGrid one = run(s);
    set_thread_count(5);
    const RawDataGrid five = run(s);
    set_thread_count(0);
    CHECK(one.samples == five.samples);
}

TEST_CASE("radar parameter validation") {
    RadarParams r = test::small_radar();
    CHECK_NOTHROW(r.validate());
    r.fs = r.bandwidth / 2;
    CHECK_THROWS_AS(r.validate(), ConfigError);
    r = test::small_radar();
    r.prf = 0;
    CHECK_THROWS_AS(r.validate(), ConfigError);
    r = test::small_radar();
    r.pulse_duration = 0.5 / r.bandwidth;
    CHECK_THROWS_AS(r.validate(), ConfigError);
}
