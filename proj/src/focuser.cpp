#include "bisar/focuser.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>

#include "bisar/fft.hpp"
#include "bisar/lbf.hpp"
#include "bisar/parallel.hpp"
#include "bisar/sfft.hpp"

namespace bisar {

namespace {

long long ceil_index(double x) { return static_cast<long long>(std::ceil(x - 1e-9)); }

std::size_t wrap(long long q, std::size_t n) {
    const auto nn = static_cast<long long>(n);
    return static_cast<std::size_t>(((q % nn) + nn) % nn);
}

struct AxisMap {
    long long q_range;  // fft index of the first range-frequency column
    long long q_az;     // fft index of the first azimuth-frequency row
};

AxisMap axis_map(const FreqAxes& a) {
    return {std::llround(a.f_start / a.df), std::llround(a.ft_start / a.dft)};
}

}  // namespace

SpectrumGrid to_spectrum(const RawDataGrid& raw, double fdc) {
    const std::size_t naz = raw.n_azimuth();
    const std::size_t nr = raw.n_range();
    Grid2D<cplx> d = raw.samples;
    fft::forward_rows(d);
    fft::forward_cols(d);

    SpectrumGrid out;
    out.t0 = raw.t0;
    out.tau_start = raw.tau_start;
    out.axes.nf = nr;
    out.axes.df = raw.fs / static_cast<double>(nr);
    out.axes.f_start = (static_cast<double>((nr + 1) / 2) - static_cast<double>(nr)) * out.axes.df;
    out.axes.nft = naz;
    out.axes.dft = raw.prf / static_cast<double>(naz);
    out.axes.ft_start = static_cast<double>(ceil_index((fdc - 0.5 * raw.prf) / out.axes.dft)) * out.axes.dft;

    const AxisMap map = axis_map(out.axes);
    out.samples = Grid2D<cplx>(naz, nr);
    parallel_for(0, naz, [&](std::size_t i) {
        const std::size_t src_row = wrap(map.q_az + static_cast<long long>(i), naz);
        const double ft = out.axes.ft(i);
        const cplx row_phase = std::polar(1.0, -kTwoPi * ft * raw.tau_start);
        for (std::size_t k = 0; k < nr; ++k) {
            const std::size_t src_col = wrap(map.q_range + static_cast<long long>(k), nr);
            out.samples(i, k) = d(src_row, src_col) * row_phase * std::polar(1.0, -kTwoPi * out.axes.f(k) * raw.t0);
        }
    });
    return out;
}

RawDataGrid from_spectrum(const SpectrumGrid& spec) {
    const std::size_t naz = spec.axes.nft;
    const std::size_t nr = spec.axes.nf;
    const AxisMap map = axis_map(spec.axes);
    Grid2D<cplx> d(naz, nr);
    parallel_for(0, naz, [&](std::size_t i) {
        const std::size_t dst_row = wrap(map.q_az + static_cast<long long>(i), naz);
        const cplx row_phase = std::polar(1.0, kTwoPi * spec.axes.ft(i) * spec.tau_start);
        for (std::size_t k = 0; k < nr; ++k) {
            const std::size_t dst_col = wrap(map.q_range + static_cast<long long>(k), nr);
            d(dst_row, dst_col) =
                spec.samples(i, k) * row_phase * std::polar(1.0, kTwoPi * spec.axes.f(k) * spec.t0);
        }
    });
    fft::inverse_cols(d);
    fft::inverse_rows(d);
    RawDataGrid raw;
    raw.samples = std::move(d);
    raw.t0 = spec.t0;
    raw.tau_start = spec.tau_start;
    raw.fs = spec.axes.df * static_cast<double>(nr);
    raw.prf = spec.axes.dft * static_cast<double>(naz);
    return raw;
}

void compress_spectrum(SpectrumGrid& spec, const RadarParams& radar) {
    const std::size_t nr = spec.axes.nf;
    const std::vector<cplx> chirp = chirp_spectrum(radar, nr);
    const AxisMap map = axis_map(spec.axes);
    std::vector<cplx> filter(nr);
    for (std::size_t k = 0; k < nr; ++k) {
        const bool in_band = std::abs(spec.axes.f(k)) <= 0.5 * radar.bandwidth;
        filter[k] = in_band ? std::conj(chirp[wrap(map.q_range + static_cast<long long>(k), nr)]) : cplx{};
    }
    parallel_for(0, spec.axes.nft, [&](std::size_t i) {
        auto row = spec.samples.row(i);
        for (std::size_t k = 0; k < nr; ++k) row[k] *= filter[k];
    });
}

// ---------------------------------------------------------------------------
// Block models

namespace {

double range_cell(const RadarParams& radar) { return kSpeedOfLight / (2.0 * radar.fs); }

}  // namespace

GcModel::GcModel(const BistaticGeometry& geom, const RadarParams& radar, double r_lo, double r_hi, double tau_lo,
                 double tau_hi, int look_side)
    : f0_(radar.f0), vt_(geom.tx.speed()), vr_(geom.rx.speed()) {
    r_center = 0.5 * (r_lo + r_hi);
    tau_center = 0.5 * (tau_lo + tau_hi);
    // small floor: a wide ghost grid around a small block biases the plane through the curvature
    const double hr = std::max(0.5 * (r_hi - r_lo), 8.0 * range_cell(radar));
    const double ht = std::max(0.5 * (tau_hi - tau_lo), 8.0 / radar.prf);

    constexpr int n = 5;
    Eigen::MatrixXd A(n * n, 3);
    Eigen::VectorXd yr(n * n), yt(n * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double u = -1.0 + 0.5 * i;
            const double w = -1.0 + 0.5 * j;
            Ghost g{};
            g.r = u * hr;
            g.t = w * ht;
            const Vec3 p = ground_point(geom.rx, r_center + g.r, tau_center + g.t, look_side);
            const PcaSolution st = pca(geom.tx, p);
            const PcaSolution sr = pca(geom.rx, p);
            g.r0t = st.r0;
            g.tau0t = st.tau0;
            g.r0r = sr.r0;
            g.tau0r = sr.tau0;
            const int row = i * n + j;
            A(row, 0) = u;
            A(row, 1) = w;
            A(row, 2) = 1.0;
            yr(row) = g.r0t;
            yt(row) = g.tau0t;
            ghosts_.push_back(g);
        }
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    reg_.condition = sv(0) / sv(sv.size() - 1);
    if (!std::isfinite(reg_.condition) || reg_.condition > 1e8)
        throw RegressionIllConditioned("ghost regression condition number " + std::to_string(reg_.condition));

    const Eigen::Vector3d cr = svd.solve(yr);
    const Eigen::Vector3d ct = svd.solve(yt);
    reg_.alpha_r = cr(0) / hr;
    reg_.delta_r = cr(1) / ht;
    reg_.beta_r = cr(2);
    reg_.gamma_tau = ct(0) / hr;
    reg_.alpha_tau = ct(1) / ht;
    reg_.beta_tau = ct(2);
    reg_.residual_r = std::sqrt((A * cr - yr).squaredNorm() / (n * n));
    reg_.residual_tau = std::sqrt((A * ct - yt).squaredNorm() / (n * n));

    // Plane fit operator (A^T A)^-1 A^T in physical units.
    const Eigen::MatrixXd P = (A.transpose() * A).inverse() * A.transpose();
    pinv_.resize(3 * n * n);
    for (int g = 0; g < n * n; ++g) {
        pinv_[g] = P(0, g) / hr;
        pinv_[n * n + g] = P(1, g) / ht;
        pinv_[2 * n * n + g] = P(2, g);
    }
}

std::optional<PhaseTerms> GcModel::terms(double f, double f_tau) const {
    const double fc = f + f0_;
    const double Ft = migration_factor(f, f_tau, f0_, vt_);
    const double Fr = migration_factor(f, f_tau, f0_, vr_);
    if (!(fc > 0.0) || !(Ft > 0.0) || !(Fr > 0.0)) return std::nullopt;
    const double st = std::sqrt(Ft);
    const double sr = std::sqrt(Fr);

    // psi2 per ghost with the range-independent factors hoisted:
    // phi'' = C / r0, stationary time = tau0 - r0 D.
    const double c = kSpeedOfLight;
    const double ct = kTwoPi * vt_ * vt_ * Ft * st / (c * fc * fc);
    const double cr = kTwoPi * vr_ * vr_ * Fr * sr / (c * fc * fc);
    const double dt = (c * f_tau / 2.0) / (vt_ * vt_ * st);
    const double dr = (c * f_tau / 2.0) / (vr_ * vr_ * sr);
    const double cc = 0.5 * ct * cr;

    const std::size_t n = ghosts_.size();
    double gr = 0.0, gt = 0.0, p2 = 0.0;
    for (std::size_t g = 0; g < n; ++g) {
        const Ghost& h = ghosts_[g];
        const double d = (h.tau0t - h.r0t * dt) - (h.tau0r - h.r0r * dr);
        const double v = cc * d * d / (ct * h.r0r + cr * h.r0t);
        gr += pinv_[g] * v;
        gt += pinv_[n + g] * v;
        p2 += pinv_[2 * n + g] * v;
    }
    const double k = kTwoPi / kSpeedOfLight;
    PhaseTerms out;
    out.phase0 = k * (reg_.beta_r * st + r_center * sr) + kPi * f_tau * (reg_.beta_tau + tau_center) + p2;
    out.kr = k * (reg_.alpha_r * st + sr) + kPi * f_tau * reg_.gamma_tau + gr;
    out.kt = k * reg_.delta_r * st + kPi * f_tau * (1.0 + reg_.alpha_tau) + gt;
    return out;
}

TiModel::TiModel(const BistaticGeometry& geom, const RadarParams& radar, double r_lo, double r_hi, double tau_c,
                 int look_side)
    : f0_(radar.f0), v_(geom.rx.speed()) {
    r_center = 0.5 * (r_lo + r_hi);
    tau_center = tau_c;
    const double h = std::max(0.5 * (r_hi - r_lo), 50.0 * range_cell(radar));
    constexpr int n = 5;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    a0_ = sum_ = diff_ = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = (-1.0 + 0.5 * i) * h;
        const Vec3 p = ground_point(geom.rx, r_center + r, tau_c, look_side);
        const BistaticParams b = bistatic_params(geom, p);
        sx += r;
        sy += b.r0t;
        sxx += r * r;
        sxy += r * b.r0t;
        a0_ += b.a0 / n;
        sum_ += (b.r0t + b.r0r) / n;
        diff_ += (b.r0t - b.r0r) / n;
    }
    alpha_ = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    beta_ = (sy - alpha_ * sx) / n;
}

std::optional<PhaseTerms> TiModel::terms(double f, double f_tau) const {
    const double fc = f + f0_;
    const double F = migration_factor(f, f_tau, f0_, v_);
    if (!(fc > 0.0) || !(F > 0.0)) return std::nullopt;
    const double s = std::sqrt(F);
    const double c = kSpeedOfLight;
    const double shift = a0_ - f_tau * c * diff_ / (2.0 * v_ * v_ * s);
    const double bistatic = kPi * v_ * v_ * F * s / (c * fc * fc * sum_) * shift * shift;
    const double k = kTwoPi / c;
    PhaseTerms out;
    out.phase0 = k * (beta_ + r_center) * s + kPi * f_tau * (2.0 * tau_center + a0_) + bistatic;
    out.kr = k * (1.0 + alpha_) * s;
    out.kt = kTwoPi * f_tau;
    return out;
}

TandemModel::TandemModel(const BistaticGeometry& geom, const RadarParams& radar, double r_min, double tau_c,
                         int look_side)
    : f0_(radar.f0), v_(geom.rx.speed()) {
    r_center = r_min;
    tau_center = tau_c;
    const Vec3 p = ground_point(geom.rx, r_min, tau_c, look_side);
    a0_ = bistatic_params(geom, p).a0;
    d_ = v_ * a0_;
}

std::optional<PhaseTerms> TandemModel::terms(double f, double f_tau) const {
    const double fc = f + f0_;
    const double F = migration_factor(f, f_tau, f0_, v_);
    if (!(fc > 0.0) || !(F > 0.0)) return std::nullopt;
    const double s = std::sqrt(F);
    const double k = 4.0 * kPi / kSpeedOfLight;
    const double rm = r_center;
    PhaseTerms out;
    out.phase0 = k * s * (rm + d_ * d_ / (8.0 * rm)) + kTwoPi * f_tau * (tau_center + 0.5 * a0_);
    out.kr = k * s * (1.0 - d_ * d_ / (8.0 * rm * rm));
    out.kt = kTwoPi * f_tau;
    return out;
}

// ---------------------------------------------------------------------------
// Engine

ImageGrid output_grid(const SpectrumGrid& spec, const ProcessingRegion& region) {
    ImageGrid g;
    g.n_r = spec.axes.nf;
    g.n_az = spec.axes.nft;
    g.dr = kSpeedOfLight / (2.0 * spec.axes.df * static_cast<double>(g.n_r));
    g.dtau = 1.0 / (spec.axes.dft * static_cast<double>(g.n_az));
    g.r_start = region.r_center() - static_cast<double>(g.n_r / 2) * g.dr;
    g.tau_start = region.tau_center() - static_cast<double>(g.n_az / 2) * g.dtau;
    return g;
}

namespace {

struct Split {
    std::size_t lo, hi;
    double e_lo, e_hi;
};

std::vector<Split> split_axis(std::size_t n, double start, double step, double lo, double hi, std::size_t parts) {
    if (parts == 0) throw ConfigError("block count must be at least 1");
    if (parts > 1 && !(hi > lo)) throw ConfigError("cannot split a zero-extent region into several blocks");
    std::vector<double> edges(parts + 1);
    for (std::size_t j = 0; j <= parts; ++j)
        edges[j] = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(parts);
    std::vector<Split> out(parts);
    std::size_t idx = 0;
    for (std::size_t j = 0; j < parts; ++j) {
        out[j].lo = idx;
        if (j + 1 == parts) {
            idx = n;
        } else {
            while (idx < n && start + static_cast<double>(idx) * step < edges[j + 1]) ++idx;
        }
        out[j].hi = idx;
        out[j].e_lo = edges[j];
        out[j].e_hi = edges[j + 1];
    }
    return out;
}

}  // namespace

std::vector<BlockTile> tile_blocks(const ImageGrid& grid, const ProcessingRegion& region, const BlockSpec& spec) {
    const auto rs = split_axis(grid.n_r, grid.r_start, grid.dr, region.r_min, region.r_max, spec.range_blocks);
    const auto as = split_axis(grid.n_az, grid.tau_start, grid.dtau, region.tau_min, region.tau_max,
                               spec.azimuth_blocks);
    std::vector<BlockTile> out;
    for (const auto& a : as) {
        if (a.hi - a.lo < 8)
            throw BlockTooNarrow("azimuth block has " + std::to_string(a.hi - a.lo) + " lines, need at least 8");
        for (const auto& r : rs) {
            if (r.hi - r.lo < 8)
                throw BlockTooNarrow("range block has " + std::to_string(r.hi - r.lo) + " bins, need at least 8");
            out.push_back({a.lo, a.hi, r.lo, r.hi, r.e_lo, r.e_hi, a.e_lo, a.e_hi});
        }
    }
    return out;
}

FocusedImage focus_blocks(const SpectrumGrid& compressed, const ImageGrid& grid, const std::vector<Block>& blocks,
                          double f_center, bool stage1_only) {
    const FreqAxes& ax = compressed.axes;
    const std::size_t naz = ax.nft;
    const std::size_t nr = ax.nf;
    const double prf = ax.dft * static_cast<double>(naz);

    FocusedImage image;
    image.grid = grid;
    image.samples = Grid2D<cplx>(grid.n_az, grid.n_r);
    std::atomic<std::size_t> zeroed{0};

    for (const Block& block : blocks) {
        const BlockModel& m = *block.model;
        Grid2D<cplx> x(naz, nr);
        std::vector<double> ar(naz, 0.0), br(naz, 0.0);
        std::vector<char> row_ok(naz, 1);

        parallel_for(0, naz, [&](std::size_t i) {
            const double ft = ax.ft(i);
            const auto lo = m.terms(-ax.df, ft);
            const auto mid = m.terms(0.0, ft);
            const auto hi = m.terms(ax.df, ft);
            if (!lo || !mid || !hi) {
                row_ok[i] = 0;
                zeroed += nr;
                return;
            }
            ar[i] = (hi->kr - lo->kr) / (2.0 * ax.df) / kTwoPi;
            br[i] = mid->kr / kTwoPi;
            std::size_t bad = 0;
            for (std::size_t k = 0; k < nr; ++k) {
                const auto t = m.terms(ax.f(k), ft);
                if (!t) {
                    ++bad;
                    continue;
                }
                x(i, k) = compressed.samples(i, k) * std::polar(1.0, t->phase0);
            }
            zeroed += bad;
        });

        // Azimuth wavenumber kt ~ 2 pi (a_az f_tau + b_az(f)).
        const auto kt_lo = m.terms(0.0, f_center - ax.dft);
        const auto kt_hi = m.terms(0.0, f_center + ax.dft);
        const auto kt_c = m.terms(0.0, f_center);
        if (!kt_lo || !kt_hi || !kt_c) throw NoStationaryPoint("Doppler centre outside the spectral support");
        const double a_az = (kt_hi->kt - kt_lo->kt) / (2.0 * ax.dft) / kTwoPi;
        const double b0 = kt_c->kt / kTwoPi - a_az * f_center;
        if (!(a_az > 0.0)) throw InvalidScale("non-positive azimuth scale");

        if (!stage1_only) {
            // Range-frequency dependent azimuth shift, applied as a
            // modulation in azimuth time per range-frequency column.
            std::vector<double> shift(nr, 0.0);
            bool any = false;
            for (std::size_t k = 0; k < nr; ++k) {
                const auto t = m.terms(ax.f(k), f_center);
                if (!t) continue;
                shift[k] = (t->kt / kTwoPi - a_az * f_center - b0) / a_az;
                any = any || std::abs(shift[k]) > 1e-9 * ax.dft;
            }
            if (any) {
                parallel_for(0, nr, [&](std::size_t k) {
                    std::vector<cplx> col(naz);
                    for (std::size_t i = 0; i < naz; ++i) col[i] = x(i, k);
                    fft::inverse(col);
                    for (std::size_t i = 0; i < naz; ++i) {
                        const double mc = i < naz / 2 ? static_cast<double>(i)
                                                      : static_cast<double>(i) - static_cast<double>(naz);
                        col[i] *= std::polar(1.0, kTwoPi * shift[k] * mc / prf);
                    }
                    fft::forward(col);
                    for (std::size_t i = 0; i < naz; ++i) x(i, k) = col[i];
                });
            }
        }

        parallel_for(0, naz, [&](std::size_t i) {
            if (!row_ok[i]) return;
            LinearKernel kern{ar[i], br[i], ax.f_start, ax.df, grid.r_start - m.r_center, grid.dr};
            auto out = linear_kernel_idft(x.row(i), kern);
            std::copy(out.begin(), out.end(), x.row(i).begin());
        });

        const double az_scale = stage1_only ? 1.0 : a_az;
        parallel_for(block.col_lo, block.col_hi, [&](std::size_t k) {
            std::vector<cplx> col(naz);
            for (std::size_t i = 0; i < naz; ++i) col[i] = x(i, k);
            LinearKernel kern{az_scale, b0, ax.ft_start, ax.dft, grid.tau_start - m.tau_center, grid.dtau};
            auto out = linear_kernel_idft(col, kern);
            for (std::size_t i = block.row_lo; i < block.row_hi; ++i) image.samples(i, k) = out[i];
        });
    }
    image.zeroed_cells = zeroed.load() / std::max<std::size_t>(blocks.size(), 1);
    return image;
}

// ---------------------------------------------------------------------------
// Processors

void check_tandem(const BistaticGeometry& geom) {
    const Vec3 vt = geom.tx.velocity;
    const Vec3 vr = geom.rx.velocity;
    const double v = norm(vr);
    if (!(v > 0.0) || !(norm(vt) > 0.0)) throw ZeroVelocity("platform velocity has zero magnitude");
    if (norm(vt - vr) > 1e-9 * v) throw TandemAssumptionViolated("transmitter and receiver velocities differ");
    const Vec3 base = geom.tx.ref_position - geom.rx.ref_position;
    const double b = norm(base);
    if (b > 0.0 && norm(cross(base, vr)) > 1e-6 * b * v)
        throw TandemAssumptionViolated("baseline is not along the common track");
}

void check_ti(const BistaticGeometry& geom) {
    const Vec3 vt = geom.tx.velocity;
    const Vec3 vr = geom.rx.velocity;
    const double v = norm(vr);
    if (!(v > 0.0) || !(norm(vt) > 0.0)) throw ZeroVelocity("platform velocity has zero magnitude");
    if (norm(vt - vr) > 1e-9 * v) throw TIAssumptionViolated("velocity vectors are not equal");
}

namespace {

struct Prepared {
    SpectrumGrid spec;
    ImageGrid grid;
};

Prepared prepare(const RawDataGrid& raw, const RadarParams& radar, const FocusOptions& opt) {
    Prepared p;
    p.spec = to_spectrum(raw, opt.fdc);
    compress_spectrum(p.spec, radar);
    p.grid = output_grid(p.spec, opt.region);
    return p;
}

FocusedImage finish(FocusedImage img, const BistaticGeometry& geom, const char* name) {
    img.v_rx = geom.rx.speed();
    img.processor = name;
    return img;
}

FocusedImage focus_with_gc_models(const RawDataGrid& raw, const BistaticGeometry& model_geom,
                                  const BistaticGeometry& geom, const RadarParams& radar, const FocusOptions& opt,
                                  const char* name) {
    Prepared p = prepare(raw, radar, opt);
    std::vector<Block> blocks;
    for (const BlockTile& t : tile_blocks(p.grid, opt.region, opt.blocks)) {
        auto model = std::make_unique<GcModel>(model_geom, radar, t.r_lo, t.r_hi, t.tau_lo, t.tau_hi, opt.look_side);
        blocks.push_back({t.row_lo, t.row_hi, t.col_lo, t.col_hi, std::move(model)});
    }
    return finish(focus_blocks(p.spec, p.grid, blocks, opt.fdc, opt.stage1_only), geom, name);
}

}  // namespace

FocusedImage focus_tandem(const RawDataGrid& raw, const BistaticGeometry& geom, const RadarParams& radar,
                          const FocusOptions& opt) {
    if (!opt.force) check_tandem(geom);
    Prepared p = prepare(raw, radar, opt);
    std::vector<Block> blocks;
    blocks.push_back({0, p.grid.n_az, 0, p.grid.n_r,
                      std::make_unique<TandemModel>(geom, radar, opt.region.r_min, opt.region.tau_center(),
                                                    opt.look_side)});
    return finish(focus_blocks(p.spec, p.grid, blocks, opt.fdc, false), geom, "tandem");
}

FocusedImage focus_ti(const RawDataGrid& raw, const BistaticGeometry& geom, const RadarParams& radar,
                      const FocusOptions& opt) {
    if (!opt.force) check_ti(geom);
    Prepared p = prepare(raw, radar, opt);
    BlockSpec spec{opt.blocks.range_blocks, 1};
    std::vector<Block> blocks;
    for (const BlockTile& t : tile_blocks(p.grid, opt.region, spec)) {
        auto model = std::make_unique<TiModel>(geom, radar, t.r_lo, t.r_hi, opt.region.tau_center(), opt.look_side);
        blocks.push_back({t.row_lo, t.row_hi, t.col_lo, t.col_hi, std::move(model)});
    }
    return finish(focus_blocks(p.spec, p.grid, blocks, opt.fdc, false), geom, "ti");
}

FocusedImage focus_gc(const RawDataGrid& raw, const BistaticGeometry& geom, const RadarParams& radar,
                      const FocusOptions& opt) {
    return focus_with_gc_models(raw, geom, geom, radar, opt, opt.stage1_only ? "gc-stage1" : "gc");
}

FocusedImage focus_monostatic_mismatch(const RawDataGrid& raw, const BistaticGeometry& geom,
                                       const RadarParams& radar, const FocusOptions& opt) {
    const BistaticGeometry mono{geom.rx, geom.rx};
    FocusOptions o = opt;
    o.stage1_only = false;
    return focus_with_gc_models(raw, mono, geom, radar, o, "mono");
}

}  // namespace bisar
