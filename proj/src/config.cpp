#include "bisar/config.hpp"

#include <fstream>
#include <sstream>

namespace bisar {

using nlohmann::json;

namespace {

const json& require(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) throw ConfigError("missing key '" + path + key + "'");
    return j.at(key);
}

double number(const json& j, const std::string& key, const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_number()) throw ConfigError("'" + path + key + "' must be a number");
    return v.get<double>();
}

double number_or(const json& j, const std::string& key, const std::string& path, double fallback) {
    return j.contains(key) ? number(j, key, path) : fallback;
}

std::size_t count(const json& j, const std::string& key, const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_number_integer() || v.get<long long>() <= 0)
        throw ConfigError("'" + path + key + "' must be a positive integer");
    return v.get<std::size_t>();
}

Vec3 vec3(const json& j, const std::string& key, const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() || !v[2].is_number())
        throw ConfigError("'" + path + key + "' must be an array of three numbers");
    return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

json vec3_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Trajectory trajectory(const json& j, const std::string& path) {
    Trajectory t{vec3(j, "position", path), vec3(j, "velocity", path)};
    if (!(t.speed() > 0.0)) throw ConfigError("'" + path + "velocity' must be non-zero");
    return t;
}

}  // namespace

json radar_to_json(const RadarParams& r) {
    return {{"f0", r.f0},   {"bandwidth", r.bandwidth}, {"pulse_duration", r.pulse_duration},
            {"prf", r.prf}, {"fs", r.fs},               {"chirp_sign", r.chirp_sign}};
}

json trajectory_to_json(const Trajectory& t) {
    return {{"position", vec3_json(t.ref_position)}, {"velocity", vec3_json(t.velocity)}};
}

ScenarioConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("top level must be an object");
    ScenarioConfig c;
    c.name = j.value("name", std::string{});

    const json& r = require(j, "radar", "");
    c.radar.f0 = number(r, "f0", "radar.");
    c.radar.bandwidth = number(r, "bandwidth", "radar.");
    c.radar.pulse_duration = number(r, "pulse_duration", "radar.");
    c.radar.prf = number(r, "prf", "radar.");
    c.radar.fs = number(r, "fs", "radar.");
    c.radar.chirp_sign = static_cast<int>(number_or(r, "chirp_sign", "radar.", 1.0));
    c.radar.validate();

    c.geometry.tx = trajectory(require(j, "transmitter", ""), "transmitter.");
    c.geometry.rx = trajectory(require(j, "receiver", ""), "receiver.");
    c.look_side = static_cast<int>(number_or(j, "look_side", "", 1.0));
    if (c.look_side != 1 && c.look_side != -1) throw ConfigError("'look_side' must be +1 or -1");

    const json& a = require(j, "aperture", "");
    const std::string kind = a.value("kind", std::string{"dwell"});
    if (kind == "dwell") {
        c.aperture.kind = ApertureSpec::Kind::Dwell;
    } else if (kind == "beamwidth") {
        c.aperture.kind = ApertureSpec::Kind::Beamwidth;
    } else {
        throw ConfigError("'aperture.kind' must be \"dwell\" or \"beamwidth\"");
    }
    c.aperture.tx_value = number(a, "tx", "aperture.");
    c.aperture.rx_value = number(a, "rx", "aperture.");
    c.aperture.tx_squint = number_or(a, "tx_squint_rad", "aperture.", 0.0);
    c.aperture.rx_squint = number_or(a, "rx_squint_rad", "aperture.", 0.0);
    if (!(c.aperture.tx_value > 0.0) || !(c.aperture.rx_value > 0.0))
        throw ConfigError("aperture values must be positive");

    const json& az = require(j, "azimuth", "");
    c.n_azimuth = count(az, "n_azimuth", "azimuth.");
    if (az.contains("tau_start")) c.tau_start = number(az, "tau_start", "azimuth.");
    if (j.contains("range") && j.at("range").contains("n_range"))
        c.n_range = count(j.at("range"), "n_range", "range.");

    const json& scene = require(j, "scene", "");
    const json& targets = require(scene, "targets", "scene.");
    if (!targets.is_array() || targets.empty()) throw ConfigError("'scene.targets' must be a non-empty array");
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const json& t = targets[i];
        const std::string path = "scene.targets[" + std::to_string(i) + "].";
        TargetSpec spec;
        if (t.contains("position")) {
            spec.position = vec3(t, "position", path);
        } else {
            spec.r0r = number(t, "r0r", path);
            spec.tau0r = number(t, "tau0r", path);
        }
        if (t.contains("reflectivity")) {
            const json& v = t.at("reflectivity");
            if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
                throw ConfigError("'" + path + "reflectivity' must be [re, im]");
            spec.reflectivity = {v[0].get<double>(), v[1].get<double>()};
        } else {
            spec.reflectivity = {number_or(t, "amplitude", path, 1.0), 0.0};
        }
        c.targets.push_back(spec);
    }

    if (j.contains("processing")) {
        const json& p = j.at("processing");
        c.mode = p.value("mode", std::string{"gc"});
        if (p.contains("blocks")) {
            const json& b = p.at("blocks");
            if (!b.is_array() || b.size() != 2 || !b[0].is_number_integer() || !b[1].is_number_integer() ||
                b[0].get<long long>() < 1 || b[1].get<long long>() < 1)
                throw ConfigError("'processing.blocks' must be [range_blocks, azimuth_blocks]");
            c.blocks = {b[0].get<std::size_t>(), b[1].get<std::size_t>()};
        }
        c.stage1_only = p.value("stage1_only", false);
        if (p.contains("fdc")) c.fdc = number(p, "fdc", "processing.");
        if (p.contains("region")) {
            const json& g = p.at("region");
            c.region = ProcessingRegion{number(g, "r_min", "processing.region."), number(g, "r_max", "processing.region."),
                                        number(g, "tau_min", "processing.region."),
                                        number(g, "tau_max", "processing.region.")};
        }
    }

    if (j.contains("validation") && j.at("validation").contains("sweep")) {
        const json& s = j.at("validation").at("sweep");
        SweepSpec sw;
        sw.parameter = s.value("parameter", std::string{});
        if (sw.parameter != "a0" && sw.parameter != "a2")
            throw ConfigError("'validation.sweep.parameter' must be \"a0\" or \"a2\"");
        const json& v = require(s, "values", "validation.sweep.");
        if (!v.is_array()) throw ConfigError("'validation.sweep.values' must be an array");
        for (const auto& x : v) {
            if (!x.is_number()) throw ConfigError("'validation.sweep.values' must hold numbers");
            sw.values.push_back(x.get<double>());
        }
        c.sweep = sw;
    }
    return c;
}

json config_to_json(const ScenarioConfig& c) {
    json j;
    j["name"] = c.name;
    j["radar"] = radar_to_json(c.radar);
    j["transmitter"] = trajectory_to_json(c.geometry.tx);
    j["receiver"] = trajectory_to_json(c.geometry.rx);
    j["look_side"] = c.look_side;
    j["aperture"] = {{"kind", c.aperture.kind == ApertureSpec::Kind::Dwell ? "dwell" : "beamwidth"},
                     {"tx", c.aperture.tx_value},
                     {"rx", c.aperture.rx_value},
                     {"tx_squint_rad", c.aperture.tx_squint},
                     {"rx_squint_rad", c.aperture.rx_squint}};
    j["azimuth"] = {{"n_azimuth", c.n_azimuth}};
    if (c.tau_start) j["azimuth"]["tau_start"] = *c.tau_start;
    if (c.n_range) j["range"] = {{"n_range", *c.n_range}};
    json targets = json::array();
    for (const auto& t : c.targets) {
        json e;
        if (t.position) {
            e["position"] = vec3_json(*t.position);
        } else {
            e["r0r"] = t.r0r;
            e["tau0r"] = t.tau0r;
        }
        e["reflectivity"] = json::array({t.reflectivity.real(), t.reflectivity.imag()});
        targets.push_back(e);
    }
    j["scene"] = {{"targets", targets}};
    json p = {{"mode", c.mode},
              {"blocks", json::array({c.blocks.range_blocks, c.blocks.azimuth_blocks})},
              {"stage1_only", c.stage1_only}};
    if (c.fdc) p["fdc"] = *c.fdc;
    if (c.region)
        p["region"] = {{"r_min", c.region->r_min},
                       {"r_max", c.region->r_max},
                       {"tau_min", c.region->tau_min},
                       {"tau_max", c.region->tau_max}};
    j["processing"] = p;
    if (c.sweep) j["validation"] = {{"sweep", {{"parameter", c.sweep->parameter}, {"values", c.sweep->values}}}};
    return j;
}

ScenarioConfig parse_config(const std::string& text, bool desk) {
    json j;
    try {
        j = json::parse(text, nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw ConfigError(e.what());
    }
    if (desk) {
        if (!j.contains("desk")) throw ConfigError("scenario has no 'desk' variant");
        j.merge_patch(j.at("desk"));
    }
    try {
        return config_from_json(j);
    } catch (const json::exception& e) {
        throw ConfigError(e.what());
    }
}

ScenarioConfig load_config(const std::string& path, bool desk) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), desk);
}

Scene build_scene(const ScenarioConfig& cfg) {
    Scene s;
    for (const auto& t : cfg.targets) {
        const Vec3 p = t.position ? *t.position : ground_point(cfg.geometry.rx, t.r0r, t.tau0r, cfg.look_side);
        s.targets.push_back({p, t.reflectivity});
    }
    return s;
}

std::vector<ImagePoint> truth_points(const ScenarioConfig& cfg) {
    std::vector<ImagePoint> out;
    for (const auto& t : build_scene(cfg).targets) {
        const PcaSolution s = pca(cfg.geometry.rx, t.position);
        out.push_back({s.r0, s.tau0});
    }
    return out;
}

ProcessingRegion processing_region(const ScenarioConfig& cfg) {
    if (cfg.region) return *cfg.region;
    const auto pts = truth_points(cfg);
    ProcessingRegion r{pts[0].range, pts[0].range, pts[0].tau, pts[0].tau};
    for (const auto& p : pts) {
        r.r_min = std::min(r.r_min, p.range);
        r.r_max = std::max(r.r_max, p.range);
        r.tau_min = std::min(r.tau_min, p.tau);
        r.tau_max = std::max(r.tau_max, p.tau);
    }
    return r;
}

double doppler_centroid(const ScenarioConfig& cfg) {
    if (cfg.fdc) return *cfg.fdc;
    const auto windows = target_windows(cfg.geometry, build_scene(cfg), cfg.radar.f0, cfg.aperture);
    double sum = 0.0;
    for (const auto& w : windows) sum += w.fdc;
    return sum / static_cast<double>(windows.size());
}

AzimuthGrid azimuth_grid(const ScenarioConfig& cfg) {
    AzimuthGrid g;
    g.n_azimuth = cfg.n_azimuth;
    if (cfg.tau_start) {
        g.tau_start = *cfg.tau_start;
    } else {
        const auto windows = target_windows(cfg.geometry, build_scene(cfg), cfg.radar.f0, cfg.aperture);
        double lo = windows[0].start(), hi = windows[0].end();
        for (const auto& w : windows) {
            lo = std::min(lo, w.start());
            hi = std::max(hi, w.end());
        }
        g.tau_start = 0.5 * (lo + hi) - 0.5 * static_cast<double>(cfg.n_azimuth) / cfg.radar.prf;
    }
    return g;
}

FocusOptions focus_options(const ScenarioConfig& cfg) {
    FocusOptions o;
    o.region = processing_region(cfg);
    o.blocks = cfg.blocks;
    o.fdc = doppler_centroid(cfg);
    o.look_side = cfg.look_side;
    o.stage1_only = cfg.stage1_only;
    return o;
}

RawDataGrid simulate_scenario(const ScenarioConfig& cfg) {
    const Scene scene = build_scene(cfg);
    const auto windows = target_windows(cfg.geometry, scene, cfg.radar.f0, cfg.aperture);
    const AzimuthGrid az = azimuth_grid(cfg);
    ReceiveWindow rw = auto_receive_window(cfg.geometry, scene, cfg.radar, windows, az);
    if (cfg.n_range) {
        const double centre = rw.t0 + 0.5 * static_cast<double>(rw.n_range) / cfg.radar.fs;
        rw.n_range = *cfg.n_range;
        rw.t0 = centre - 0.5 * static_cast<double>(rw.n_range) / cfg.radar.fs;
    }
    return simulate(cfg.geometry, scene, cfg.radar, windows, az, rw);
}

}  // namespace bisar
