// Analytic bistatic point-target spectrum from two individual stationary
// points merged at a common bistatic stationary point.
#pragma once

#include <functional>

#include "bisar/geometry.hpp"
#include "bisar/spectrum.hpp"

namespace bisar {

struct FreqPair {
    double f = 0.0;
    double f_tau = 0.0;
};

struct StationarySolution {
    double tau_t = 0.0;
    double tau_r = 0.0;
    double tau_common = 0.0;
    double ddphi_t = 0.0;
    double ddphi_r = 0.0;
};

struct LbfValue {
    double psi1 = 0.0;
    double psi2 = 0.0;
    cplx amplitude;
    int window = 0;
    cplx total;
};

struct SplitPhases {
    std::function<double(double)> phi_t;
    std::function<double(double)> phi_r;
};

/// phi_X(tau) = 2 pi [ (f + f0)/c R_X(tau) + f_tau/2 tau ].
SplitPhases split_phases(const BistaticGeometry& geom, const Vec3& p, const FreqPair& fq, double f0);

/// Closed-form stationary time of one platform's phase, refined by a
/// safeguarded Newton/bisection iteration.
double platform_stationary_time(const Trajectory& traj, const Vec3& p, const FreqPair& fq, double f0);

StationarySolution stationary_points(const BistaticGeometry& geom, const Vec3& p, const FreqPair& fq, double f0);

/// window == nullptr means an unbounded window.
LbfValue evaluate(const BistaticGeometry& geom, const Vec3& p, const FreqPair& fq, double f0,
                  const DopplerWindow* window);

/// Element-wise evaluate on the grid; cells without a stationary point are
/// zero and counted in zeroed_cells.
SpectrumGrid evaluate_grid(const BistaticGeometry& geom, const Vec3& p, const FreqAxes& axes, double f0,
                           const DopplerWindow* window);

/// (f + f0)^2 - (c f_tau / (2 v))^2.
inline double migration_factor(double f, double f_tau, double f0, double v) {
    const double d = kSpeedOfLight * f_tau / (2.0 * v);
    return (f + f0) * (f + f0) - d * d;
}

}  // namespace bisar
