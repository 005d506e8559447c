// bisar: simulate, focus, validate-lbf, analyze and plot bistatic SAR scenes.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "bisar/config.hpp"
#include "bisar/focuser.hpp"
#include "bisar/io.hpp"
#include "bisar/lbf.hpp"
#include "bisar/oracle.hpp"
#include "bisar/parallel.hpp"
#include "bisar/report.hpp"

using namespace bisar;
using nlohmann::json;

namespace {

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::Config: return 2;
        case ErrorKind::Assumption: return 3;
        case ErrorKind::NumericSupport: return 4;
        case ErrorKind::Io: return 5;
    }
    return 1;
}

BlockSpec parse_blocks(const std::string& s) {
    const auto x = s.find('x');
    try {
        if (x == std::string::npos) throw std::invalid_argument(s);
        const long r = std::stol(s.substr(0, x));
        const long a = std::stol(s.substr(x + 1));
        if (r < 1 || a < 1) throw std::invalid_argument(s);
        return {static_cast<std::size_t>(r), static_cast<std::size_t>(a)};
    } catch (const std::logic_error&) {
        throw ConfigError("--blocks expects RxA with positive integers, got '" + s + "'");
    }
}

ScenarioConfig scenario_of(const json& header, const std::string& path) {
    if (!header.contains("scenario")) throw IoError(path + ": header carries no scenario");
    return config_from_json(header.at("scenario"));
}

// Back-projection grid: region plus a margin, on the frequency-domain
// processors' sample spacing.
ImageGrid backprojection_grid(const ScenarioConfig& cfg, const ProcessingRegion& region) {
    constexpr double margin = 16.0;
    ImageGrid g;
    g.dr = kSpeedOfLight / (2.0 * cfg.radar.fs);
    g.dtau = 1.0 / cfg.radar.prf;
    g.r_start = region.r_min - margin * g.dr;
    g.tau_start = region.tau_min - margin * g.dtau;
    g.n_r = static_cast<std::size_t>(std::ceil((region.r_max - region.r_min) / g.dr + 2.0 * margin)) + 1;
    g.n_az = static_cast<std::size_t>(std::ceil((region.tau_max - region.tau_min) / g.dtau + 2.0 * margin)) + 1;
    return g;
}

int cmd_simulate(const std::string& config, bool desk, const std::string& out) {
    const ScenarioConfig cfg = load_config(config, desk);
    const RawDataGrid raw = simulate_scenario(cfg);
    json header = {{"scenario", config_to_json(cfg)},
                   {"radar", radar_to_json(cfg.radar)},
                   {"transmitter", trajectory_to_json(cfg.geometry.tx)},
                   {"receiver", trajectory_to_json(cfg.geometry.rx)}};
    io::save_raw(io::prefix_of(out), raw, header);
    std::cout << "wrote " << raw.n_azimuth() << " x " << raw.n_range() << " raw samples to " << io::prefix_of(out)
              << ".cf32\n";
    return 0;
}

int cmd_focus(const std::string& in, std::optional<std::string> mode, std::optional<std::string> blocks,
              bool stage1_only, bool force, const std::string& out) {
    const std::string src = io::prefix_of(in);
    const io::RawFile file = io::load_raw(src);
    ScenarioConfig cfg = scenario_of(file.header, src + ".json");
    if (mode) cfg.mode = *mode;
    if (blocks) cfg.blocks = parse_blocks(*blocks);
    if (stage1_only) cfg.stage1_only = true;
    FocusOptions opt = focus_options(cfg);
    opt.force = force;

    FocusedImage img;
    if (cfg.mode == "tandem") {
        img = focus_tandem(file.raw, cfg.geometry, cfg.radar, opt);
    } else if (cfg.mode == "ti") {
        img = focus_ti(file.raw, cfg.geometry, cfg.radar, opt);
    } else if (cfg.mode == "gc") {
        img = focus_gc(file.raw, cfg.geometry, cfg.radar, opt);
    } else if (cfg.mode == "mono") {
        img = focus_monostatic_mismatch(file.raw, cfg.geometry, cfg.radar, opt);
    } else if (cfg.mode == "backprojection") {
        const RawDataGrid rc = range_compress(file.raw, cfg.radar);
        img = backproject(rc, cfg.geometry, cfg.radar, backprojection_grid(cfg, opt.region), cfg.look_side);
    } else {
        throw ConfigError("unknown mode '" + cfg.mode + "' (tandem|ti|gc|mono|backprojection)");
    }

    const std::string dst = io::prefix_of(out);
    io::save_image(dst, img, {{"scenario", config_to_json(cfg)}, {"source", src}});
    // report on the stored float32 samples so a later `analyze` agrees exactly
    json report = analyze_image(io::load_image(dst).image, truth_points(cfg));
    report["image"] = dst;
    io::write_json(dst + ".report.json", report);
    std::cout << "focused with " << img.processor << " into " << dst << ".cf32; report " << dst << ".report.json\n";
    return 0;
}

int cmd_validate(const std::string& config, bool desk, const std::string& out) {
    const ScenarioConfig cfg = load_config(config, desk);
    const Vec3 p = build_scene(cfg).targets.front().position;
    auto run = [&](const BistaticGeometry& g) {
        const DopplerWindow w = doppler_window(g, p, cfg.radar.f0, cfg.aperture);
        const OracleReport r = compare_lbf(g, p, cfg.radar, w, validation_axes(g, p, cfg.radar, w));
        const BistaticParams b = bistatic_params(g, p);
        json j = oracle_to_json(r);
        j["a0_s"] = b.a0;
        j["a2"] = b.a2;
        return std::pair{j, r.rms_phase_error};
    };
    json report;
    report["scenario"] = cfg.name;
    report["target"] = run(cfg.geometry).first;
    std::cout << "rms phase error " << report["target"]["rms_phase_error_rad"].get<double>() << " rad\n";
    if (cfg.sweep) {
        if (cfg.sweep->values.empty()) throw ConfigError("'validation.sweep.values' is empty");
        json rows = json::array();
        std::vector<double> errs;
        for (double v : cfg.sweep->values) {
            auto [j, e] = run(sweep_geometry(cfg.geometry, p, cfg.sweep->parameter, v));
            j["value"] = v;
            rows.push_back(j);
            errs.push_back(e);
        }
        bool monotone = true;
        for (std::size_t i = 1; i < errs.size(); ++i) monotone = monotone && errs[i] > errs[i - 1];
        report["sweep"] = {{"parameter", cfg.sweep->parameter}, {"rows", rows}, {"monotone", monotone ? "PASS" : "FAIL"}};
        std::cout << "sweep over " << cfg.sweep->parameter << ": monotone " << (monotone ? "PASS" : "FAIL") << "\n";
    }
    io::write_json(out, report);
    return 0;
}

int cmd_analyze(const std::string& in, const std::string& out) {
    const std::string src = io::prefix_of(in);
    const io::ImageFile f = io::load_image(src);
    const ScenarioConfig cfg = scenario_of(f.header, src + ".json");
    json report = analyze_image(f.image, truth_points(cfg));
    report["image"] = src;
    io::write_json(out, report);
    return 0;
}

int cmd_plot(const std::string& in, const std::string& out) {
    std::string src = io::prefix_of(in);
    if (in.size() > 12 && in.substr(in.size() - 12) == ".report.json") {
        const json r = io::read_json(in);
        if (!r.contains("image") || !r.at("image").is_string()) throw IoError(in + ": report names no image");
        src = r.at("image").get<std::string>();
    }
    const io::ImageFile f = io::load_image(src);
    const ScenarioConfig cfg = scenario_of(f.header, src + ".json");
    write_pgm(out, f.image, truth_points(cfg));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bistatic SAR point-target simulator and focusing processor"};
    app.require_subcommand(1);
    unsigned threads = 0;
    app.add_option("--threads", threads, "Worker cap (0 = hardware concurrency)");

    std::string config, in, out;
    bool desk = false, stage1 = false, force = false;
    std::optional<std::string> mode, blocks;

    auto* sim = app.add_subcommand("simulate", "Simulate raw data for a scenario");
    sim->add_option("--config", config, "Scenario file")->required();
    sim->add_flag("--desk", desk, "Apply the desk-scale override");
    sim->add_option("--out", out, "Output prefix")->required();

    auto* foc = app.add_subcommand("focus", "Focus a raw-data file");
    foc->add_option("input", in, "Raw-data prefix")->required();
    foc->add_option("--mode", mode, "tandem|ti|gc|mono|backprojection");
    foc->add_option("--blocks", blocks, "Range x azimuth blocks, e.g. 4x1");
    foc->add_flag("--stage1-only", stage1, "GC: skip the azimuth scaling and shift compensation");
    foc->add_flag("--force", force, "Skip geometry-class checks");
    foc->add_option("--out", out, "Output prefix")->required();

    auto* val = app.add_subcommand("validate-lbf", "Compare the analytic spectrum with quadrature");
    val->add_option("--config", config, "Scenario file")->required();
    val->add_flag("--desk", desk, "Apply the desk-scale override");
    val->add_option("--out", out, "Report path")->required();

    auto* ana = app.add_subcommand("analyze", "Impulse-response report of a focused image");
    ana->add_option("input", in, "Image prefix")->required();
    ana->add_option("--out", out, "Report path")->required();

    auto* plt = app.add_subcommand("plot", "Write an annotated PGM of a focused image");
    plt->add_option("input", in, "Image prefix or report path")->required();
    plt->add_option("--out", out, "PGM path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    set_thread_count(threads);
    try {
        if (*sim) return cmd_simulate(config, desk, out);
        if (*foc) return cmd_focus(in, mode, blocks, stage1, force, out);
        if (*val) return cmd_validate(config, desk, out);
        if (*ana) return cmd_analyze(in, out);
        if (*plt) return cmd_plot(in, out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
