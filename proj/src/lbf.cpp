#include "bisar/lbf.hpp"

#include <cmath>

#include "bisar/parallel.hpp"

namespace bisar {

namespace {

// Range rate of one platform, d R_X / d tau.
double range_rate(const Trajectory& traj, const Vec3& p, double tau) {
    const Vec3 d = traj.at(tau) - p;
    return dot(d, traj.velocity) / norm(d);
}

double phase_slope(const Trajectory& traj, const Vec3& p, const FreqPair& fq, double f0, double tau) {
    return (fq.f + f0) / kSpeedOfLight * range_rate(traj, p, tau) + 0.5 * fq.f_tau;
}

double second_derivative(const Trajectory& traj, const Vec3& p, double fc, double tau) {
    const Vec3 d = traj.at(tau) - p;
    const double r = norm(d);
    const double rr = dot(d, traj.velocity) / r;
    return kTwoPi * fc / kSpeedOfLight * (dot(traj.velocity, traj.velocity) - rr * rr) / r;
}

}  // namespace

SplitPhases split_phases(const BistaticGeometry& geom, const Vec3& p, const FreqPair& fq, double f0) {
    if (pca(geom.tx, p).r0 <= 0.0 || pca(geom.rx, p).r0 <= 0.0)
        throw DegenerateRange("target lies on a flight line");
    auto make = [p, fq, f0](const Trajectory& traj) {
        return [traj, p, fq, f0](double tau) {
            return kTwoPi * ((fq.f + f0) / kSpeedOfLight * slant_range(traj, p, tau) + 0.5 * fq.f_tau * tau);
        };
    };
    return {make(geom.tx), make(geom.rx)};
}

double platform_stationary_time(const Trajectory& traj, const Vec3& p, const FreqPair& fq, double f0) {
    const PcaSolution s = pca(traj, p);
    if (!(s.r0 > 0.0)) throw DegenerateRange("target lies on a flight line");
    const double v = traj.speed();
    const double fc = fq.f + f0;
    const double F = migration_factor(fq.f, fq.f_tau, f0, v);
    if (!(fc > 0.0) || !(F > 0.0)) throw NoStationaryPoint("Doppler frequency outside the platform support");
    const double guess = s.tau0 - s.r0 * (kSpeedOfLight * fq.f_tau / 2.0) / (v * v * std::sqrt(F));

    // The slope is monotone increasing in tau; bracket around the guess and
    // bisect if the closed form is not already a root.
    const double scale = fc / kSpeedOfLight * v;
    auto g = [&](double tau) { return phase_slope(traj, p, fq, f0, tau); };
    const double g0 = g(guess);
    if (std::abs(g0) <= 1e-13 * scale) return guess;

    double step = 1e-9 * std::max(1.0, s.r0 / v);
    double lo = guess;
    double hi = guess;
    if (g0 > 0.0) {
        while (g(lo) > 0.0) {
            lo -= step;
            step *= 2.0;
        }
    } else {
        while (g(hi) < 0.0) {
            hi += step;
            step *= 2.0;
        }
    }
    for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

StationarySolution stationary_points(const BistaticGeometry& geom, const Vec3& p, const FreqPair& fq, double f0) {
    StationarySolution s;
    s.tau_t = platform_stationary_time(geom.tx, p, fq, f0);
    s.tau_r = platform_stationary_time(geom.rx, p, fq, f0);
    const double fc = fq.f + f0;
    s.ddphi_t = second_derivative(geom.tx, p, fc, s.tau_t);
    s.ddphi_r = second_derivative(geom.rx, p, fc, s.tau_r);
    s.tau_common = (s.ddphi_t * s.tau_t + s.ddphi_r * s.tau_r) / (s.ddphi_t + s.ddphi_r);
    return s;
}

LbfValue evaluate(const BistaticGeometry& geom, const Vec3& p, const FreqPair& fq, double f0,
                  const DopplerWindow* window) {
    const StationarySolution s = stationary_points(geom, p, fq, f0);
    const SplitPhases ph = split_phases(geom, p, fq, f0);
    LbfValue out;
    out.psi1 = ph.phi_t(s.tau_t) + ph.phi_r(s.tau_r);
    const double dt = s.tau_t - s.tau_r;
    const double sum = s.ddphi_t + s.ddphi_r;
    out.psi2 = s.ddphi_t * s.ddphi_r / (2.0 * sum) * dt * dt;
    out.amplitude = std::sqrt(kTwoPi) / std::sqrt(sum) * std::polar(1.0, -0.25 * kPi);
    out.window = window == nullptr || (s.tau_common >= window->start() && s.tau_common < window->end()) ? 1 : 0;
    out.total = static_cast<double>(out.window) * out.amplitude * std::polar(1.0, -(out.psi1 + out.psi2));
    return out;
}

SpectrumGrid evaluate_grid(const BistaticGeometry& geom, const Vec3& p, const FreqAxes& axes, double f0,
                           const DopplerWindow* window) {
    SpectrumGrid out;
    out.axes = axes;
    out.samples = Grid2D<cplx>(axes.nft, axes.nf);
    std::vector<std::size_t> failed(axes.nft, 0);
    parallel_for(0, axes.nft, [&](std::size_t i) {
        for (std::size_t k = 0; k < axes.nf; ++k) {
            try {
                out.samples(i, k) = evaluate(geom, p, {axes.f(k), axes.ft(i)}, f0, window).total;
            } catch (const NoStationaryPoint&) {
                ++failed[i];
            }
        }
    });
    for (auto n : failed) out.zeroed_cells += n;
    return out;
}

}  // namespace bisar
