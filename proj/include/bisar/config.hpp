// Scenario configuration: JSON with comments, optional "desk" override.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "bisar/focuser.hpp"
#include "bisar/geometry.hpp"
#include "bisar/irf.hpp"
#include "bisar/rawsim.hpp"

namespace bisar {

struct TargetSpec {
    // Either an explicit ground position or receiver coordinates.
    std::optional<Vec3> position;
    double r0r = 0.0;
    double tau0r = 0.0;
    cplx reflectivity{1.0, 0.0};
};

struct SweepSpec {
    std::string parameter;  // "a0" or "a2"
    std::vector<double> values;
};

struct ScenarioConfig {
    std::string name;
    RadarParams radar;
    BistaticGeometry geometry;
    int look_side = 1;
    ApertureSpec aperture;
    std::size_t n_azimuth = 0;
    std::optional<double> tau_start;
    std::optional<std::size_t> n_range;
    std::vector<TargetSpec> targets;

    std::string mode = "gc";
    BlockSpec blocks;
    bool stage1_only = false;
    std::optional<double> fdc;
    std::optional<ProcessingRegion> region;

    std::optional<SweepSpec> sweep;
};

/// Parses JSON text (comments allowed). With desk = true the top-level
/// "desk" object is merge-patched over the document first. Throws ConfigError
/// with the offending key path or the parser's line and column.
ScenarioConfig parse_config(const std::string& text, bool desk = false);
ScenarioConfig load_config(const std::string& path, bool desk = false);

ScenarioConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ScenarioConfig& cfg);

nlohmann::json radar_to_json(const RadarParams& r);
nlohmann::json trajectory_to_json(const Trajectory& t);

/// Ground positions of all targets.
Scene build_scene(const ScenarioConfig& cfg);
/// True receiver coordinates (R0R, tau0R) of every target.
std::vector<ImagePoint> truth_points(const ScenarioConfig& cfg);
/// Configured region, else the bounding box of the targets.
ProcessingRegion processing_region(const ScenarioConfig& cfg);
/// Configured Doppler centroid, else the geometric centroid at the region centre.
double doppler_centroid(const ScenarioConfig& cfg);
AzimuthGrid azimuth_grid(const ScenarioConfig& cfg);
FocusOptions focus_options(const ScenarioConfig& cfg);

RawDataGrid simulate_scenario(const ScenarioConfig& cfg);

}  // namespace bisar
