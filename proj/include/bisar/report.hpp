// Structured-text reports and grayscale plots.
#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "bisar/irf.hpp"
#include "bisar/oracle.hpp"

namespace bisar {

nlohmann::json irf_to_json(const IrfMetrics& m);
nlohmann::json oracle_to_json(const OracleReport& r);

/// IRF metrics of every declared target plus the separation of every target
/// from the first one. Targets whose peak cannot be found carry an "error".
nlohmann::json analyze_image(const FocusedImage& img, const std::vector<ImagePoint>& truth);

/// 8-bit PGM of the magnitude in dB (top `dynamic_range_db` mapped to 0..255),
/// cropped to the markers plus a margin, each marker framed by a square.
void write_pgm(const std::string& path, const FocusedImage& img, const std::vector<ImagePoint>& markers,
               double dynamic_range_db = 40.0, std::size_t margin = 48);

}  // namespace bisar
