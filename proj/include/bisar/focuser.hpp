// Frequency-domain focusing: Tandem, translationally invariant (TI),
// general case (GC) and a receiver-only monostatic processor, all built on a
// blockwise scaled-inverse-transform engine.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bisar/geometry.hpp"
#include "bisar/rawsim.hpp"
#include "bisar/spectrum.hpp"

namespace bisar {

/// Output sampling in receiver coordinates (R0R, tau0R).
struct ImageGrid {
    double r_start = 0.0;
    double dr = 1.0;
    std::size_t n_r = 0;
    double tau_start = 0.0;
    double dtau = 1.0;
    std::size_t n_az = 0;

    double range(double col) const { return r_start + col * dr; }
    double tau(double row) const { return tau_start + row * dtau; }
};

struct FocusedImage {
    Grid2D<cplx> samples;  // [azimuth][range]
    ImageGrid grid;
    double v_rx = 1.0;  // converts azimuth time to meters
    std::string processor;
    std::size_t zeroed_cells = 0;
};

/// Scene extent in receiver coordinates. The focused image is centred on it.
struct ProcessingRegion {
    double r_min = 0.0;
    double r_max = 0.0;
    double tau_min = 0.0;
    double tau_max = 0.0;

    double r_center() const { return 0.5 * (r_min + r_max); }
    double tau_center() const { return 0.5 * (tau_min + tau_max); }
};

struct BlockSpec {
    std::size_t range_blocks = 1;
    std::size_t azimuth_blocks = 1;
};

struct FocusOptions {
    ProcessingRegion region;
    BlockSpec blocks;
    double fdc = 0.0;     // Doppler centroid the azimuth axis is unwrapped about
    int look_side = 1;    // receiver look side for ground_point
    bool stage1_only = false;
    bool force = false;   // skip the geometry-class checks
};

SpectrumGrid to_spectrum(const RawDataGrid& raw, double fdc);
RawDataGrid from_spectrum(const SpectrumGrid& spec);

/// Multiplies by the conjugate chirp spectrum and zeroes |f| > bandwidth/2.
void compress_spectrum(SpectrumGrid& spec, const RadarParams& radar);

/// Spectral phase of a target at (Rc + r, tc + t) linearised in (r, t):
/// Phi = phase0 + kr*r + kt*t.
struct PhaseTerms {
    double phase0 = 0.0;
    double kr = 0.0;  // rad/m
    double kt = 0.0;  // rad/s
};

class BlockModel {
public:
    virtual ~BlockModel() = default;
    /// Empty outside the spectral support.
    virtual std::optional<PhaseTerms> terms(double f, double f_tau) const = 0;
    double r_center = 0.0;
    double tau_center = 0.0;
};

/// Linear regressions of the transmitter closest-approach parameters over a
/// block, in offsets from the block centre (r = R0R - Rc, t = tau0R - tc):
///   R0T = alpha_r r + delta_r t + beta_r,  tau0T = gamma_tau r + alpha_tau t + beta_tau.
struct BlockRegression {
    double alpha_r = 0.0;
    double delta_r = 0.0;
    double beta_r = 0.0;
    double gamma_tau = 0.0;
    double alpha_tau = 0.0;
    double beta_tau = 0.0;
    double residual_r = 0.0;    // RMS, meters
    double residual_tau = 0.0;  // RMS, seconds
    double condition = 0.0;
};

/// General-case model: regressions over a 5x5 ghost grid, bistatic phase
/// plane-fitted over the same ghosts.
class GcModel final : public BlockModel {
public:
    GcModel(const BistaticGeometry& geom, const RadarParams& radar, double r_lo, double r_hi, double tau_lo,
            double tau_hi, int look_side);
    std::optional<PhaseTerms> terms(double f, double f_tau) const override;
    const BlockRegression& regression() const { return reg_; }

private:
    struct Ghost {
        double r, t, r0t, tau0t, r0r, tau0r;
    };
    double f0_, vt_, vr_;
    BlockRegression reg_;
    std::vector<Ghost> ghosts_;
    std::vector<double> pinv_;  // 3 x n_ghosts, rows: d/dr, d/dt, intercept
};

/// Translationally invariant model for one range block.
class TiModel final : public BlockModel {
public:
    TiModel(const BistaticGeometry& geom, const RadarParams& radar, double r_lo, double r_hi, double tau_c,
            int look_side);
    std::optional<PhaseTerms> terms(double f, double f_tau) const override;

private:
    double f0_, v_, alpha_, beta_, a0_, sum_, diff_;
};

/// Tandem model referenced to the minimum range of the scene.
class TandemModel final : public BlockModel {
public:
    TandemModel(const BistaticGeometry& geom, const RadarParams& radar, double r_min, double tau_c, int look_side);
    std::optional<PhaseTerms> terms(double f, double f_tau) const override;
    double a0() const { return a0_; }
    double baseline() const { return d_; }

private:
    double f0_, v_, a0_, d_;
};

struct Block {
    std::size_t row_lo, row_hi;  // output azimuth rows [lo, hi)
    std::size_t col_lo, col_hi;  // output range columns [lo, hi)
    std::unique_ptr<BlockModel> model;
};

/// Output grid of the frequency-domain processors for a spectrum and region.
ImageGrid output_grid(const SpectrumGrid& spec, const ProcessingRegion& region);

/// Runs every block over the whole compressed spectrum and stitches the
/// cropped results. f_center is the Doppler frequency about which the azimuth
/// wavenumber is linearised.
FocusedImage focus_blocks(const SpectrumGrid& compressed, const ImageGrid& grid, const std::vector<Block>& blocks,
                          double f_center, bool stage1_only);

/// Tiles the output grid into range x azimuth blocks over the region extent;
/// edge blocks extend to the image border. Cells belong to the block of their
/// lower edge.
struct BlockTile {
    std::size_t row_lo, row_hi, col_lo, col_hi;
    double r_lo, r_hi, tau_lo, tau_hi;
};
std::vector<BlockTile> tile_blocks(const ImageGrid& grid, const ProcessingRegion& region, const BlockSpec& spec);

/// Throws TandemAssumptionViolated / TIAssumptionViolated.
void check_tandem(const BistaticGeometry& geom);
void check_ti(const BistaticGeometry& geom);

FocusedImage focus_tandem(const RawDataGrid& raw, const BistaticGeometry& geom, const RadarParams& radar,
                          const FocusOptions& opt);
FocusedImage focus_ti(const RawDataGrid& raw, const BistaticGeometry& geom, const RadarParams& radar,
                      const FocusOptions& opt);
FocusedImage focus_gc(const RawDataGrid& raw, const BistaticGeometry& geom, const RadarParams& radar,
                      const FocusOptions& opt);
FocusedImage focus_monostatic_mismatch(const RawDataGrid& raw, const BistaticGeometry& geom,
                                       const RadarParams& radar, const FocusOptions& opt);

}  // namespace bisar
