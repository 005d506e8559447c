#include "bisar/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace bisar::io {

using nlohmann::json;

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::uint32_t to_le(std::uint32_t v) {
    if constexpr (std::endian::native == std::endian::big) return __builtin_bswap32(v);
    return v;
}

template <typename T>
T field(const json& j, const char* key, const std::string& path) {
    if (!j.contains(key)) throw IoError(path + ": header lacks '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw IoError(path + ": header field '" + key + "' has the wrong type");
    }
}

}  // namespace

std::string prefix_of(const std::string& path) {
    for (const char* ext : {".json", ".cf32"})
        if (ends_with(path, ext)) return path.substr(0, path.size() - std::strlen(ext));
    return path;
}

void write_cf32(const std::string& path, const Grid2D<cplx>& grid) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    std::vector<std::uint32_t> buf(2 * grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const float re = static_cast<float>(grid.data()[i].real());
        const float im = static_cast<float>(grid.data()[i].imag());
        buf[2 * i] = to_le(std::bit_cast<std::uint32_t>(re));
        buf[2 * i + 1] = to_le(std::bit_cast<std::uint32_t>(im));
    }
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size() * 4));
    if (!out) throw IoError("short write to '" + path + "'");
}

Grid2D<cplx> read_cf32(const std::string& path, std::size_t rows, std::size_t cols) {
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in) throw IoError("cannot open '" + path + "'");
    const auto bytes = static_cast<std::size_t>(in.tellg());
    if (bytes != rows * cols * 8)
        throw IoError("'" + path + "' holds " + std::to_string(bytes) + " bytes, header implies " +
                      std::to_string(rows * cols * 8));
    in.seekg(0);
    std::vector<std::uint32_t> buf(2 * rows * cols);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(bytes));
    Grid2D<cplx> g(rows, cols);
    for (std::size_t i = 0; i < rows * cols; ++i) {
        g.data()[i] = {std::bit_cast<float>(to_le(buf[2 * i])), std::bit_cast<float>(to_le(buf[2 * i + 1]))};
    }
    return g;
}

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str(), nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw IoError(path + ": " + e.what());
    }
}

void save_raw(const std::string& prefix, const RawDataGrid& raw, json header) {
    header["format"] = "cf32-le";
    header["kind"] = "raw";
    header["n_azimuth"] = raw.n_azimuth();
    header["n_range"] = raw.n_range();
    header["t0"] = raw.t0;
    header["tau_start"] = raw.tau_start;
    header["fs"] = raw.fs;
    header["prf"] = raw.prf;
    write_cf32(prefix + ".cf32", raw.samples);
    write_json(prefix + ".json", header);
}

RawFile load_raw(const std::string& prefix) {
    const std::string hp = prefix + ".json";
    RawFile f;
    f.header = read_json(hp);
    if (field<std::string>(f.header, "kind", hp) != "raw") throw IoError(hp + ": not a raw-data header");
    const auto rows = field<std::size_t>(f.header, "n_azimuth", hp);
    const auto cols = field<std::size_t>(f.header, "n_range", hp);
    f.raw.samples = read_cf32(prefix + ".cf32", rows, cols);
    f.raw.t0 = field<double>(f.header, "t0", hp);
    f.raw.tau_start = field<double>(f.header, "tau_start", hp);
    f.raw.fs = field<double>(f.header, "fs", hp);
    f.raw.prf = field<double>(f.header, "prf", hp);
    return f;
}

void save_image(const std::string& prefix, const FocusedImage& img, json header) {
    header["format"] = "cf32-le";
    header["kind"] = "image";
    header["n_azimuth"] = img.grid.n_az;
    header["n_range"] = img.grid.n_r;
    header["r_start"] = img.grid.r_start;
    header["dr"] = img.grid.dr;
    header["tau_start"] = img.grid.tau_start;
    header["dtau"] = img.grid.dtau;
    header["v_rx"] = img.v_rx;
    header["processor"] = img.processor;
    header["zeroed_cells"] = img.zeroed_cells;
    write_cf32(prefix + ".cf32", img.samples);
    write_json(prefix + ".json", header);
}

ImageFile load_image(const std::string& prefix) {
    const std::string hp = prefix + ".json";
    ImageFile f;
    f.header = read_json(hp);
    if (field<std::string>(f.header, "kind", hp) != "image") throw IoError(hp + ": not an image header");
    ImageGrid& g = f.image.grid;
    g.n_az = field<std::size_t>(f.header, "n_azimuth", hp);
    g.n_r = field<std::size_t>(f.header, "n_range", hp);
    g.r_start = field<double>(f.header, "r_start", hp);
    g.dr = field<double>(f.header, "dr", hp);
    g.tau_start = field<double>(f.header, "tau_start", hp);
    g.dtau = field<double>(f.header, "dtau", hp);
    f.image.v_rx = field<double>(f.header, "v_rx", hp);
    f.image.processor = field<std::string>(f.header, "processor", hp);
    f.image.zeroed_cells = field<std::size_t>(f.header, "zeroed_cells", hp);
    f.image.samples = read_cf32(prefix + ".cf32", g.n_az, g.n_r);
    return f;
}

}  // namespace bisar::io
