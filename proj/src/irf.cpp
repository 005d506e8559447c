#include "bisar/irf.hpp"

#include <algorithm>
#include <cmath>

#include "bisar/fft.hpp"

namespace bisar {

namespace {

// Index after which zeros are inserted: the centre of the lowest-energy
// stretch of the periodic spectrum.
std::size_t spectral_gap(const std::vector<double>& energy) {
    const std::size_t n = energy.size();
    const std::size_t w = std::max<std::size_t>(1, n / 16);
    std::size_t best = n / 2;
    double best_e = -1.0;
    for (std::size_t k = 0; k < n; ++k) {
        double e = 0.0;
        for (std::size_t j = 0; j <= 2 * w; ++j) e += energy[(k + n + j - w) % n];
        if (best_e < 0.0 || e < best_e) {
            best_e = e;
            best = k;
        }
    }
    return best;
}

// Zero-padded spectrum along one axis: bins 0..gap keep their index, the
// rest move to the end.
std::size_t padded_index(std::size_t k, std::size_t gap, std::size_t n, std::size_t nu) {
    return k <= gap ? k : nu - n + k;
}

double parabola(double y0, double y1, double y2) {
    const double d = y0 - 2.0 * y1 + y2;
    if (d >= 0.0) return 0.0;
    return std::clamp(0.5 * (y0 - y2) / d, -0.5, 0.5);
}

struct CutMetrics {
    double width = 0.0;  // upsampled cells
    double pslr = kPslrFloor;
};

// cut[c] is the peak; the cut is periodic.
CutMetrics analyse_cut(const std::vector<double>& cut, std::size_t c) {
    const std::size_t n = cut.size();
    const double peak = cut[c];
    const double level = peak / std::sqrt(2.0);
    auto at = [&](long i) { return cut[static_cast<std::size_t>((i % static_cast<long>(n) + n) % n)]; };

    auto crossing = [&](int dir) {
        long i = static_cast<long>(c);
        for (std::size_t s = 0; s < n / 2; ++s, i += dir) {
            const double a = at(i);
            const double b = at(i + dir);
            if (b < level) {
                const double frac = (a - level) / (a - b);
                return static_cast<double>(i - static_cast<long>(c)) + dir * frac;
            }
        }
        return static_cast<double>(dir) * static_cast<double>(n / 2);
    };
    CutMetrics m;
    m.width = crossing(1) - crossing(-1);

    auto first_min = [&](int dir) {
        long i = static_cast<long>(c);
        for (std::size_t s = 0; s < n / 2; ++s, i += dir)
            if (at(i + dir) > at(i)) return i;
        return i;
    };
    const long hi = first_min(1);
    const long lo = first_min(-1);
    double side = 0.0;
    for (long i = hi + 1; i < lo + static_cast<long>(n); ++i) side = std::max(side, at(i));
    if (side > 0.0 && peak > 0.0) m.pslr = std::max(kPslrFloor, 20.0 * std::log10(side / peak));
    return m;
}

}  // namespace

IrfMetrics extract_irf(const FocusedImage& img, const ImagePoint& approx, const std::optional<ImagePoint>& truth,
                       const IrfOptions& opt) {
    const ImageGrid& g = img.grid;
    const auto rows = static_cast<long>(img.samples.rows());
    const auto cols = static_cast<long>(img.samples.cols());
    const long r0 = std::lround((approx.tau - g.tau_start) / g.dtau);
    const long c0 = std::lround((approx.range - g.r_start) / g.dr);
    if (r0 < 0 || r0 >= rows || c0 < 0 || c0 >= cols) throw NoPeakFound("approximate position outside the image");

    const long s = opt.search;
    long pr = -1, pc = -1;
    double best = 0.0;
    for (long r = std::max(0L, r0 - s); r <= std::min(rows - 1, r0 + s); ++r) {
        for (long c = std::max(0L, c0 - s); c <= std::min(cols - 1, c0 + s); ++c) {
            const double m = std::abs(img.samples(r, c));
            if (m > best) {
                best = m;
                pr = r;
                pc = c;
            }
        }
    }
    if (pr < 0 || !(best > 0.0)) throw NoPeakFound("no non-zero sample in the search window");
    for (long dr = -1; dr <= 1; ++dr) {
        for (long dc = -1; dc <= 1; ++dc) {
            const long r = pr + dr, c = pc + dc;
            if (r < 0 || r >= rows || c < 0 || c >= cols) continue;
            if (std::abs(img.samples(r, c)) > best) throw NoPeakFound("search window maximum is not a local maximum");
        }
    }

    const auto P = static_cast<std::size_t>(opt.patch);
    const auto U = static_cast<std::size_t>(opt.upsample);
    const std::size_t PU = P * U;
    const long pr0 = pr - static_cast<long>(P / 2);
    const long pc0 = pc - static_cast<long>(P / 2);
    Grid2D<cplx> patch(P, P);
    for (std::size_t i = 0; i < P; ++i) {
        for (std::size_t j = 0; j < P; ++j) {
            const long r = pr0 + static_cast<long>(i), c = pc0 + static_cast<long>(j);
            if (r >= 0 && r < rows && c >= 0 && c < cols) patch(i, j) = img.samples(r, c);
        }
    }
    fft::forward_rows(patch);
    fft::forward_cols(patch);
    std::vector<double> e_az(P, 0.0), e_r(P, 0.0);
    for (std::size_t i = 0; i < P; ++i) {
        for (std::size_t j = 0; j < P; ++j) {
            const double e = std::norm(patch(i, j));
            e_az[i] += e;
            e_r[j] += e;
        }
    }
    const std::size_t gap_az = spectral_gap(e_az);
    const std::size_t gap_r = spectral_gap(e_r);
    Grid2D<cplx> up(PU, PU);
    for (std::size_t i = 0; i < P; ++i)
        for (std::size_t j = 0; j < P; ++j)
            up(padded_index(i, gap_az, P, PU), padded_index(j, gap_r, P, PU)) = patch(i, j);
    fft::inverse_cols(up);
    fft::inverse_rows(up);

    Grid2D<double> mag(PU, PU);
    const double gain = static_cast<double>(U * U);
    std::size_t ur = 0, uc = 0;
    double peak = 0.0;
    for (std::size_t i = 0; i < PU; ++i) {
        for (std::size_t j = 0; j < PU; ++j) {
            mag(i, j) = std::abs(up(i, j)) * gain;
            if (mag(i, j) > peak) {
                peak = mag(i, j);
                ur = i;
                uc = j;
            }
        }
    }
    auto lm = [&](std::size_t i, std::size_t j) { return std::log(std::max(mag(i % PU, j % PU), 1e-300)); };
    const double dr_sub = parabola(lm(ur + PU - 1, uc), lm(ur, uc), lm(ur + 1, uc));
    const double dc_sub = parabola(lm(ur, uc + PU - 1), lm(ur, uc), lm(ur, uc + 1));

    IrfMetrics out;
    out.peak_mag = peak;
    out.peak_row = static_cast<double>(pr0) + (static_cast<double>(ur) + dr_sub) / static_cast<double>(U);
    out.peak_col = static_cast<double>(pc0) + (static_cast<double>(uc) + dc_sub) / static_cast<double>(U);
    out.peak = {g.range(out.peak_col), g.tau(out.peak_row)};
    out.peak_az_m = out.peak.tau * img.v_rx;

    std::vector<double> range_cut(PU), az_cut(PU);
    for (std::size_t j = 0; j < PU; ++j) range_cut[j] = mag(ur, j);
    for (std::size_t i = 0; i < PU; ++i) az_cut[i] = mag(i, uc);
    const CutMetrics mr = analyse_cut(range_cut, uc);
    const CutMetrics ma = analyse_cut(az_cut, ur);
    out.res_range_3db = mr.width / static_cast<double>(U) * g.dr;
    out.res_az_3db = ma.width / static_cast<double>(U) * g.dtau * img.v_rx;
    out.pslr_range = mr.pslr;
    out.pslr_az = ma.pslr;
    if (truth) {
        out.err_range = out.peak.range - truth->range;
        out.err_az = (out.peak.tau - truth->tau) * img.v_rx;
    }
    return out;
}

ImagePoint global_peak(const FocusedImage& img) {
    const auto& g = img.grid;
    std::size_t best = 0;
    double mag = -1.0;
    for (std::size_t i = 0; i < img.samples.size(); ++i) {
        const double m = std::norm(img.samples.data()[i]);
        if (m > mag) {
            mag = m;
            best = i;
        }
    }
    if (!(mag > 0.0)) throw NoPeakFound("image is identically zero");
    const std::size_t cols = img.samples.cols();
    return {g.range(static_cast<double>(best % cols)), g.tau(static_cast<double>(best / cols))};
}

Separation pairwise_distance(const FocusedImage& img, const ImagePoint& a, const ImagePoint& b,
                             const IrfOptions& opt) {
    const IrfMetrics ma = extract_irf(img, a, std::nullopt, opt);
    const IrfMetrics mb = extract_irf(img, b, std::nullopt, opt);
    return {mb.peak.range - ma.peak.range, (mb.peak.tau - ma.peak.tau) * img.v_rx};
}

}  // namespace bisar
