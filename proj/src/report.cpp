#include "bisar/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

namespace bisar {

using nlohmann::json;

json irf_to_json(const IrfMetrics& m) {
    return {{"peak_range_m", m.peak.range},
            {"peak_tau_s", m.peak.tau},
            {"peak_azimuth_m", m.peak_az_m},
            {"peak_magnitude", m.peak_mag},
            {"resolution_range_3db_m", m.res_range_3db},
            {"resolution_azimuth_3db_m", m.res_az_3db},
            {"pslr_range_db", m.pslr_range},
            {"pslr_azimuth_db", m.pslr_az},
            {"error_range_m", m.err_range},
            {"error_azimuth_m", m.err_az}};
}

json oracle_to_json(const OracleReport& r) {
    return {{"rms_phase_error_rad", r.rms_phase_error},
            {"max_phase_error_rad", r.max_phase_error},
            {"max_magnitude_error", r.max_magnitude_error},
            {"support_fraction", r.support_fraction},
            {"support_cells", r.support_cells}};
}

json analyze_image(const FocusedImage& img, const std::vector<ImagePoint>& truth) {
    json targets = json::array();
    std::vector<std::optional<IrfMetrics>> found;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        json e = {{"index", i}, {"truth_range_m", truth[i].range}, {"truth_tau_s", truth[i].tau}};
        try {
            const IrfMetrics m = extract_irf(img, truth[i], truth[i]);
            e["irf"] = irf_to_json(m);
            found.emplace_back(m);
        } catch (const Error& err) {
            e["error"] = err.what();
            found.emplace_back(std::nullopt);
        }
        targets.push_back(e);
    }
    json seps = json::array();
    for (std::size_t j = 1; j < found.size(); ++j) {
        if (!found[0] || !found[j]) continue;
        seps.push_back({{"from", 0},
                        {"to", j},
                        {"range_m", found[j]->peak.range - found[0]->peak.range},
                        {"azimuth_m", found[j]->peak_az_m - found[0]->peak_az_m}});
    }
    json brightest;
    try {
        brightest = irf_to_json(extract_irf(img, global_peak(img), std::nullopt));
    } catch (const Error& err) {
        brightest = {{"error", err.what()}};
    }
    return {{"processor", img.processor},
            {"brightest", brightest},
            {"zeroed_cells", img.zeroed_cells},
            {"targets", targets},
            {"separations_from_first", seps}};
}

void write_pgm(const std::string& path, const FocusedImage& img, const std::vector<ImagePoint>& markers,
               double dynamic_range_db, std::size_t margin) {
    const ImageGrid& g = img.grid;
    const auto rows = static_cast<long>(img.samples.rows());
    const auto cols = static_cast<long>(img.samples.cols());
    long r_lo = 0, r_hi = rows, c_lo = 0, c_hi = cols;
    // Markers outside the image are dropped; with none left the whole image is shown.
    std::vector<std::pair<long, long>> px;
    for (const auto& m : markers) {
        const long r = std::lround((m.tau - g.tau_start) / g.dtau);
        const long c = std::lround((m.range - g.r_start) / g.dr);
        if (r >= 0 && r < rows && c >= 0 && c < cols) px.emplace_back(r, c);
    }
    if (!px.empty()) {
        r_lo = c_lo = std::numeric_limits<long>::max();
        r_hi = c_hi = std::numeric_limits<long>::min();
        const auto mg = static_cast<long>(margin);
        for (auto [r, c] : px) {
            r_lo = std::min(r_lo, r - mg);
            r_hi = std::max(r_hi, r + mg + 1);
            c_lo = std::min(c_lo, c - mg);
            c_hi = std::max(c_hi, c + mg + 1);
        }
        r_lo = std::max(r_lo, 0L);
        c_lo = std::max(c_lo, 0L);
        r_hi = std::min(r_hi, rows);
        c_hi = std::min(c_hi, cols);
    }

    double peak = 0.0;
    for (long r = r_lo; r < r_hi; ++r)
        for (long c = c_lo; c < c_hi; ++c) peak = std::max(peak, std::abs(img.samples(r, c)));

    const long h = r_hi - r_lo, w = c_hi - c_lo;
    std::vector<unsigned char> pix(static_cast<std::size_t>(h * w), 0);
    for (long r = 0; r < h; ++r) {
        for (long c = 0; c < w; ++c) {
            const double m = std::abs(img.samples(r + r_lo, c + c_lo));
            if (!(peak > 0.0) || !(m > 0.0)) continue;
            const double db = 20.0 * std::log10(m / peak);
            const double v = std::clamp(1.0 + db / dynamic_range_db, 0.0, 1.0);
            pix[static_cast<std::size_t>(r * w + c)] = static_cast<unsigned char>(std::lround(255.0 * v));
        }
    }
    constexpr long box = 6;
    for (auto [r, c] : px) {
        for (long d = -box; d <= box; ++d) {
            for (auto [y, x] : {std::pair{r - box, c + d}, {r + box, c + d}, {r + d, c - box}, {r + d, c + box}}) {
                if (y >= r_lo && y < r_hi && x >= c_lo && x < c_hi)
                    pix[static_cast<std::size_t>((y - r_lo) * w + (x - c_lo))] = 255;
            }
        }
    }

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << "P5\n" << w << ' ' << h << "\n255\n";
    out.write(reinterpret_cast<const char*>(pix.data()), static_cast<std::streamsize>(pix.size()));
}

}  // namespace bisar
