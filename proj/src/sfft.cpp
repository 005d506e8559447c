#include "bisar/sfft.hpp"

#include <cmath>

#include "bisar/fft.hpp"
#include "bisar/parallel.hpp"

namespace bisar {

namespace {

// exp(j pi a q^2 / n). For a == 1 the argument is reduced exactly.
cplx chirp(double a, double q, double n) {
    double q2 = q * q;
    if (a == 1.0) q2 = std::fmod(q2, 2.0 * n);
    return std::polar(1.0, kPi * a * q2 / n);
}

}  // namespace

namespace {

// Chirp table, transformed kernel and output modulation for one (n, scale,
// shift). Columns of a 2-D transform share all three, so the last one is kept
// per thread.
struct BluesteinPlan {
    std::size_t n = 0;
    double scale = 0.0, shift = 0.0;
    std::size_t len = 0;
    std::vector<cplx> chirp, kernel, post;
};

const BluesteinPlan& bluestein_plan(std::size_t n, double a, double shift) {
    thread_local BluesteinPlan p;
    if (p.n == n && p.scale == a && p.shift == shift && !p.chirp.empty()) return p;
    const auto nd = static_cast<double>(n);
    p.n = n;
    p.scale = a;
    p.shift = shift;
    p.len = fft::next_pow2(2 * n - 1);
    p.chirp.resize(n);
    for (std::size_t q = 0; q < n; ++q) p.chirp[q] = chirp(a, static_cast<double>(q), nd);
    p.kernel.assign(p.len, cplx{});
    p.kernel[0] = 1.0;
    for (std::size_t d = 1; d < n; ++d) {
        const cplx c = std::conj(p.chirp[d]);
        p.kernel[d] = c;
        p.kernel[p.len - d] = c;
    }
    fft::forward(p.kernel);
    p.post.resize(n);
    for (std::size_t m = 0; m < n; ++m) {
        const double md = static_cast<double>(m);
        p.post[m] = p.chirp[m] * std::polar(1.0, kTwoPi * std::fmod(shift * md, nd) / nd);
    }
    return p;
}

}  // namespace

std::vector<cplx> scaled_idft(std::span<const cplx> v, const ScaledAxis& axis) {
    if (!(axis.scale > 0.0)) throw InvalidScale("scale must be positive, got " + std::to_string(axis.scale));
    const std::size_t n = v.size();
    if (n == 0) return {};
    const BluesteinPlan& p = bluestein_plan(n, axis.scale, axis.shift);

    std::vector<cplx> x(p.len);
    for (std::size_t k = 0; k < n; ++k) x[k] = v[k] * p.chirp[k];
    fft::forward(x);
    for (std::size_t i = 0; i < p.len; ++i) x[i] *= p.kernel[i];
    fft::inverse(x);

    std::vector<cplx> w(n);
    for (std::size_t m = 0; m < n; ++m) w[m] = x[m] * p.post[m];
    return w;
}

std::vector<cplx> linear_kernel_idft(std::span<const cplx> v, const LinearKernel& k) {
    const std::size_t n = v.size();
    const auto nd = static_cast<double>(n);
    const double a = k.A * k.df * k.dx * nd;
    const double s = (k.A * k.f_start + k.B) * k.dx * nd;
    std::vector<cplx> pre(n);
    for (std::size_t i = 0; i < n; ++i)
        pre[i] = v[i] * std::polar(1.0, kTwoPi * k.A * static_cast<double>(i) * k.df * k.x0);
    std::vector<cplx> w;
    if (a > 0.0) {
        w = scaled_idft(pre, {a, s});
    } else {
        // Mirror the input so the effective scale is positive.
        std::vector<cplx> rev(pre.rbegin(), pre.rend());
        // exp(j2pi(a k + s) m/n) with k = n-1-k'  ->  (-a) k' + (a (n-1) + s)
        w = scaled_idft(rev, {-a, a * (nd - 1.0) + s});
    }
    const cplx post = std::polar(1.0, kTwoPi * (k.A * k.f_start + k.B) * k.x0);
    for (auto& x : w) x *= post;
    return w;
}

Grid2D<cplx> scaled_idft_2d(const Grid2D<cplx>& grid, const std::function<ScaledAxis(std::size_t)>& row_axis,
                            double az_scale, const std::function<double(std::size_t)>& col_shift) {
    Grid2D<cplx> tmp(grid.rows(), grid.cols());
    parallel_for(0, grid.rows(), [&](std::size_t r) {
        auto out = scaled_idft(grid.row(r), row_axis(r));
        std::copy(out.begin(), out.end(), tmp.row(r).begin());
    });
    Grid2D<cplx> result(grid.rows(), grid.cols());
    parallel_for(0, grid.cols(), [&](std::size_t c) {
        std::vector<cplx> col(grid.rows());
        for (std::size_t r = 0; r < grid.rows(); ++r) col[r] = tmp(r, c);
        auto out = scaled_idft(col, {az_scale, col_shift(c)});
        for (std::size_t r = 0; r < grid.rows(); ++r) result(r, c) = out[r];
    });
    return result;
}

}  // namespace bisar
