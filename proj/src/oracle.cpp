#include "bisar/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bisar/fft.hpp"
#include "bisar/lbf.hpp"
#include "bisar/parallel.hpp"

namespace bisar {

namespace {

// d/dtau and d2/dtau2 of R_T + R_R.
std::pair<double, double> range_derivatives(const BistaticGeometry& geom, const Vec3& p, double tau) {
    double rate = 0.0, accel = 0.0;
    for (const Trajectory* t : {&geom.tx, &geom.rx}) {
        const Vec3 d = t->at(tau) - p;
        const double r = norm(d);
        const double rr = dot(d, t->velocity) / r;
        rate += rr;
        accel += (dot(t->velocity, t->velocity) - rr * rr) / r;
    }
    return {rate, accel};
}

}  // namespace

FreqAxes validation_axes(const BistaticGeometry& geom, const Vec3& p, const RadarParams& radar,
                         const DopplerWindow& window, std::size_t nf, std::size_t nft) {
    const double scale = radar.f0 / kSpeedOfLight;
    const double fa = -scale * range_derivatives(geom, p, window.start()).first;
    const double fb = -scale * range_derivatives(geom, p, window.end()).first;
    FreqAxes a;
    a.nf = nf;
    a.f_start = -0.5 * radar.bandwidth;
    a.df = nf > 1 ? radar.bandwidth / static_cast<double>(nf - 1) : 1.0;
    a.nft = nft;
    a.ft_start = std::min(fa, fb);
    a.dft = nft > 1 ? std::abs(fb - fa) / static_cast<double>(nft - 1) : 1.0;
    return a;
}

SpectrumGrid numeric_spectrum(const BistaticGeometry& geom, const Vec3& p, const RadarParams& radar,
                              const DopplerWindow& window, const FreqAxes& axes, double oversample) {
    SpectrumGrid out;
    out.axes = axes;
    out.samples = Grid2D<cplx>(axes.nft, axes.nf);
    if (!(window.tau_span > 0.0)) return out;

    const double step_ref = std::max(radar.prf, window.az_bandwidth);
    const auto n = static_cast<std::size_t>(std::ceil(window.tau_span * oversample * step_ref));
    const double dtau = window.tau_span / static_cast<double>(n);
    std::vector<double> tau(n), delay(n);
    for (std::size_t i = 0; i < n; ++i) {
        tau[i] = window.start() + (static_cast<double>(i) + 0.5) * dtau;
        delay[i] = bistatic_range(geom, p, tau[i]) / kSpeedOfLight;
    }

    parallel_for(0, axes.nft, [&](std::size_t i) {
        const double ft = axes.ft(i);
        for (std::size_t k = 0; k < axes.nf; ++k) {
            const double fc = axes.f(k) + radar.f0;
            cplx acc{0.0, 0.0};
            for (std::size_t m = 0; m < n; ++m) {
                // Reduce the cycle count before the trig call.
                const double cycles = fc * delay[m] + ft * tau[m];
                acc += std::polar(1.0, -kTwoPi * (cycles - std::floor(cycles)));
            }
            out.samples(i, k) = acc * dtau;
        }
    });
    return out;
}

OracleReport compare_lbf(const BistaticGeometry& geom, const Vec3& p, const RadarParams& radar,
                         const DopplerWindow& window, const FreqAxes& axes, double fresnel_guard) {
    const SpectrumGrid num = numeric_spectrum(geom, p, radar, window, axes);
    const SpectrumGrid ana = evaluate_grid(geom, p, axes, radar.f0, &window);

    const double ka = std::abs(radar.f0 / kSpeedOfLight * range_derivatives(geom, p, window.tau_cb).second);
    const double guard = fresnel_guard / std::sqrt(ka);

    double peak = 0.0;
    for (const auto& v : num.samples.data()) peak = std::max(peak, std::abs(v));
    const double floor = peak * std::pow(10.0, -3.0 / 20.0);

    OracleReport rep;
    rep.error_map = Grid2D<double>(axes.nft, axes.nf, std::numeric_limits<double>::quiet_NaN());
    double sum2 = 0.0;
    for (std::size_t i = 0; i < axes.nft; ++i) {
        for (std::size_t k = 0; k < axes.nf; ++k) {
            const cplx n = num.samples(i, k);
            const cplx l = ana.samples(i, k);
            if (std::abs(n) < floor || std::abs(l) == 0.0) continue;
            const StationarySolution s = stationary_points(geom, p, {axes.f(k), axes.ft(i)}, radar.f0);
            if (s.tau_common < window.start() + guard || s.tau_common > window.end() - guard) continue;
            const double e = std::arg(n * std::conj(l));
            rep.error_map(i, k) = e;
            sum2 += e * e;
            rep.max_phase_error = std::max(rep.max_phase_error, std::abs(e));
            rep.max_magnitude_error = std::max(rep.max_magnitude_error, std::abs(std::abs(n) / std::abs(l) - 1.0));
            ++rep.support_cells;
        }
    }
    const auto total = static_cast<double>(axes.nft * axes.nf);
    rep.support_fraction = total > 0 ? static_cast<double>(rep.support_cells) / total : 0.0;
    rep.rms_phase_error =
        rep.support_cells > 0 ? std::sqrt(sum2 / static_cast<double>(rep.support_cells))
                              : std::numeric_limits<double>::quiet_NaN();
    return rep;
}

FocusedImage backproject(const RawDataGrid& compressed, const BistaticGeometry& geom, const RadarParams& radar,
                         const ImageGrid& grid, int look_side) {
    constexpr std::size_t up = 8;
    const std::size_t nr = compressed.n_range();
    const std::size_t naz = compressed.n_azimuth();
    const std::size_t nu = nr * up;

    // Band-limited 8x interpolation of every range line.
    Grid2D<cplx> fine(naz, nu);
    parallel_for(0, naz, [&](std::size_t m) {
        std::vector<cplx> line(compressed.samples.row(m).begin(), compressed.samples.row(m).end());
        fft::forward(line);
        auto out = fine.row(m);
        const std::size_t half = nr / 2;
        for (std::size_t k = 0; k < half; ++k) out[k] = line[k] * static_cast<double>(up);
        for (std::size_t k = half; k < nr; ++k) out[nu - nr + k] = line[k] * static_cast<double>(up);
        fft::inverse(out);
    });

    const double fs_fine = compressed.fs * static_cast<double>(up);
    FocusedImage img;
    img.grid = grid;
    img.samples = Grid2D<cplx>(grid.n_az, grid.n_r);
    img.v_rx = geom.rx.speed();
    img.processor = "backprojection";

    parallel_for(0, grid.n_az, [&](std::size_t row) {
        for (std::size_t col = 0; col < grid.n_r; ++col) {
            const Vec3 p = ground_point(geom.rx, grid.range(static_cast<double>(col)),
                                        grid.tau(static_cast<double>(row)), look_side);
            cplx acc{0.0, 0.0};
            for (std::size_t m = 0; m < naz; ++m) {
                const double td = bistatic_range(geom, p, compressed.slow_time(m)) / kSpeedOfLight;
                const double x = (td - compressed.t0) * fs_fine;
                if (x < 0.0 || x >= static_cast<double>(nu - 1)) continue;
                const auto i0 = static_cast<std::size_t>(x);
                const double w = x - static_cast<double>(i0);
                const cplx s = (1.0 - w) * fine(m, i0) + w * fine(m, i0 + 1);
                const double cycles = radar.f0 * td;
                acc += s * std::polar(1.0, kTwoPi * (cycles - std::floor(cycles)));
            }
            img.samples(row, col) = acc;
        }
    });
    return img;
}

BistaticGeometry with_a0(const BistaticGeometry& g, const Vec3& p, double a0) {
    BistaticGeometry out = g;
    out.tx.ref_position = g.tx.ref_position - g.tx.velocity * (a0 - bistatic_params(g, p).a0);
    return out;
}

BistaticGeometry with_a2(const BistaticGeometry& g, const Vec3& p, double a2) {
    BistaticGeometry out = g;
    const BistaticParams b = bistatic_params(g, p);
    const Vec3 q = g.tx.at(b.tau0t);
    const Vec3 moved = p + (q - p) * (a2 * b.r0r / b.r0t);
    out.tx.ref_position = moved - g.tx.velocity * b.tau0t;
    return out;
}

BistaticGeometry sweep_geometry(const BistaticGeometry& g, const Vec3& p, const std::string& param, double value) {
    if (param == "a0") return with_a0(with_a2(g, p, 1.0), p, value);
    if (param == "a2") return with_a2(with_a0(g, p, 0.0), p, value);
    throw ConfigError("sweep parameter must be 'a0' or 'a2', got '" + param + "'");
}

}  // namespace bisar
