// Binary grids: little-endian interleaved complex float32, row-major, with a
// JSON sidecar header. Files are addressed by a common prefix.
#pragma once

#include <string>

#include "json.hpp"

#include "bisar/focuser.hpp"
#include "bisar/rawsim.hpp"

namespace bisar::io {

/// Strips a trailing ".json" or ".cf32".
std::string prefix_of(const std::string& path);

void write_cf32(const std::string& path, const Grid2D<cplx>& grid);
Grid2D<cplx> read_cf32(const std::string& path, std::size_t rows, std::size_t cols);

void write_json(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json(const std::string& path);

struct RawFile {
    RawDataGrid raw;
    nlohmann::json header;
};

/// header is merged with the axis metadata written by this function.
void save_raw(const std::string& prefix, const RawDataGrid& raw, nlohmann::json header);
RawFile load_raw(const std::string& prefix);

struct ImageFile {
    FocusedImage image;
    nlohmann::json header;
};

void save_image(const std::string& prefix, const FocusedImage& img, nlohmann::json header);
ImageFile load_image(const std::string& prefix);

}  // namespace bisar::io
