#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "bisar/config.hpp"
#include "bisar/io.hpp"
#include "support.hpp"

using namespace bisar;
using bisar::test::Gen;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kScenarios{BISAR_SCENARIOS};

fs::path workdir() {
    static const fs::path dir = [] {
        const fs::path d = fs::temp_directory_path() / "bisar-cli-test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string path(const std::string& name) { return (workdir() / name).string(); }

int cli(const std::string& args) {
    const std::string cmd = std::string("\"") + BISAR_CLI + "\" " + args + " >/dev/null 2>&1";
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write(const std::string& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

// Small general-case scene that simulates and focuses in a fraction of a second.
json small_config(std::uint64_t seed = 101) {
    Gen g(seed);
    const BistaticGeometry geom = g.gc_geometry();
    const double r0 = 1.4 * geom.rx.ref_position.z;
    ScenarioConfig cfg = test::small_scenario(geom, {test::at(r0, 0.0), test::at(r0 + 40.0, 0.2, {0.5, 0.5})});
    cfg.name = "cli-small";
    json j = config_to_json(cfg);
    j["validation"] = {{"sweep", {{"parameter", "a2"}, {"values", {1.0, 2.0, 3.0}}}}};
    j["desk"] = {{"azimuth", {{"n_azimuth", 256}}}};
    return j;
}

std::string small_config_file(const std::string& name = "small.json", json j = small_config()) {
    const std::string p = path(name);
    write(p, j.dump(2));
    return p;
}

}  // namespace

TEST_CASE("config round trip is a fixed point") {
    for (const auto& entry : fs::directory_iterator(kScenarios)) {
        if (entry.path().extension() != ".json") continue;
        for (bool desk : {false, true}) {
            const std::string text = slurp(entry.path().string());
            if (desk && !json::parse(text, nullptr, true, true).contains("desk")) continue;
            const ScenarioConfig c = parse_config(text, desk);
            const json once = config_to_json(c);
            const json twice = config_to_json(config_from_json(once));
            INFO(entry.path().filename().string());
            CHECK(once == twice);
        }
    }
}

TEST_CASE("config errors name the offending key or line") {
    json j = small_config();
    j["radar"].erase("prf");
    try {
        config_from_json(j);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("radar.prf") != std::string::npos);
    }
    j = small_config();
    j["scene"]["targets"][1]["r0r"] = "far";
    try {
        config_from_json(j);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("scene.targets[1].r0r") != std::string::npos);
    }
    try {
        parse_config("{\n  \"name\": \"x\",\n  \"radar\": {,\n}");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    j = small_config();
    j["scene"]["targets"] = json::array();
    CHECK_THROWS_AS(config_from_json(j), ConfigError);
    j = small_config();
    j["radar"]["fs"] = 1e6;  // below the bandwidth
    CHECK_THROWS_AS(config_from_json(j), ConfigError);
    j = small_config();
    j["processing"]["blocks"] = {0, 1};
    CHECK_THROWS_AS(config_from_json(j), ConfigError);
    // comments are allowed
    CHECK_NOTHROW(parse_config("// scene\n" + small_config().dump()));
}

TEST_CASE("desk override is merged over the document") {
    const ScenarioConfig full = load_config((kScenarios / "spaceborne_gc.json").string());
    const ScenarioConfig desk = load_config((kScenarios / "spaceborne_gc.json").string(), true);
    CHECK(full.n_azimuth == 2048);
    CHECK(desk.n_azimuth == 1024);
    CHECK(desk.aperture.tx_value == doctest::Approx(0.11));
    CHECK(desk.targets.size() == full.targets.size());
    CHECK_THROWS_AS(parse_config(R"({"name": "x"})", true), ConfigError);
    CHECK_THROWS_AS(load_config(path("missing.json")), IoError);
}

TEST_CASE("binary grids round trip") {
    Gen g(102);
    RawDataGrid raw;
    raw.samples = Grid2D<cplx>(5, 7);
    for (auto& x : raw.samples.data()) x = g.complex();
    raw.fs = 24e6;
    raw.prf = 1800.0;
    raw.t0 = 1.23e-3;
    raw.tau_start = -0.4;
    const std::string p = path("grid");
    io::save_raw(p, raw, {{"note", "x"}});
    const io::RawFile f = io::load_raw(p);
    bool exact = true;
    for (std::size_t i = 0; i < raw.samples.size(); ++i) {
        const auto a = std::complex<float>(raw.samples.data()[i]);
        exact = exact && std::complex<float>(f.raw.samples.data()[i]) == a &&
                f.raw.samples.data()[i] == cplx(a.real(), a.imag());
    }
    CHECK(exact);
    CHECK(f.raw.t0 == raw.t0);
    CHECK(f.raw.tau_start == raw.tau_start);
    CHECK(f.raw.prf == raw.prf);
    CHECK(f.header.at("note") == "x");
    // writing what was read reproduces the file byte for byte
    io::save_raw(path("grid2"), f.raw, {{"note", "x"}});
    CHECK(slurp(p + ".cf32") == slurp(path("grid2.cf32")));

    CHECK(io::prefix_of("a/b.cf32") == "a/b");
    CHECK(io::prefix_of("a/b.json") == "a/b");
    CHECK(io::prefix_of("a/b") == "a/b");

    write(path("bad.json"), "{ not json");
    write(path("bad.cf32"), "");
    CHECK_THROWS_AS(io::load_raw(path("bad")), IoError);
    const std::string bytes = slurp(p + ".cf32");
    fs::copy_file(p + ".json", path("short.json"), fs::copy_options::overwrite_existing);
    write(path("short.cf32"), bytes.substr(0, bytes.size() - 8));
    CHECK_THROWS_AS(io::load_raw(path("short")), IoError);
    CHECK_THROWS_AS(io::load_raw(path("absent")), IoError);
}

TEST_CASE("command line exit codes") {
    const std::string cfg = small_config_file();
    CHECK(cli("") == 1);
    CHECK(cli("frobnicate") == 1);
    CHECK(cli("simulate --out " + path("x")) == 1);

    json broken = small_config();
    broken["radar"].erase("f0");
    CHECK(cli("simulate --config " + small_config_file("broken.json", broken) + " --out " + path("x")) == 2);
    CHECK(cli("simulate --config " + cfg + " --out " + path("raw")) == 0);
    CHECK(cli("focus " + path("raw") + " --blocks 3by3 --out " + path("img")) == 2);
    CHECK(cli("focus " + path("raw") + " --mode nonsense --out " + path("img")) == 2);
    CHECK(cli("focus " + path("raw") + " --mode tandem --out " + path("img")) == 3);
    CHECK(cli("focus " + path("raw") + " --mode tandem --force --out " + path("img")) == 0);

    // transmitter far ahead of the receiver: the two beams never overlap
    json apart = small_config();
    apart["transmitter"]["position"][0] = apart["transmitter"]["position"][0].get<double>() + 5000.0;
    CHECK(cli("simulate --config " + small_config_file("apart.json", apart) + " --out " + path("y")) == 4);

    CHECK(cli("focus " + path("nowhere") + " --out " + path("img")) == 5);
    fs::copy_file(path("raw.cf32"), path("corrupt.cf32"), fs::copy_options::overwrite_existing);
    write(path("corrupt.json"), "{\"kind\": \"raw\", \"n_azimuth\": 3");
    CHECK(cli("focus " + path("corrupt") + " --out " + path("img")) == 5);
    CHECK(cli("plot " + path("nowhere.report.json") + " --out " + path("p.pgm")) == 5);
}

TEST_CASE("simulate header echoes the scenario") {
    REQUIRE(cli("simulate --config " + (kScenarios / "tandem.json").string() + " --desk --out " +
                path("tandem")) == 0);
    const json h = io::read_json(path("tandem.json"));
    CHECK(h.at("radar").at("prf").get<double>() == 2500.0);
    CHECK(h.at("radar").at("f0").get<double>() == 5.16e9);
    CHECK(h.contains("transmitter"));
    CHECK(h.contains("receiver"));
    CHECK(h.at("scenario").at("name") == "spaceborne-tandem");
    fs::remove(path("tandem.cf32"));
}

TEST_CASE("outputs are byte-identical across runs and worker counts") {
    const std::string cfg = small_config_file("det.json");
    for (const std::string threads : {"1", "3"}) {
        const std::string t = "--threads " + threads + " ";
        for (const std::string run : {"a", "b"}) {
            const std::string tag = threads + run;
            REQUIRE(cli(t + "simulate --config " + cfg + " --out " + path("d" + tag)) == 0);
            REQUIRE(cli(t + "focus " + path("d" + tag) + " --blocks 2x2 --out " + path("f" + tag)) == 0);
            REQUIRE(cli(t + "plot " + path("f" + tag) + " --out " + path("p" + tag + ".pgm")) == 0);
        }
    }
    for (const std::string tag : {"1b", "3a", "3b"}) {
        CHECK(slurp(path("d1a.cf32")) == slurp(path("d" + tag + ".cf32")));
        CHECK(slurp(path("f1a.cf32")) == slurp(path("f" + tag + ".cf32")));
        CHECK(slurp(path("p1a.pgm")) == slurp(path("p" + tag + ".pgm")));
    }
}

TEST_CASE("focus, analyze and plot outputs") {
    const std::string cfg = small_config_file("flow.json");
    REQUIRE(cli("simulate --config " + cfg + " --out " + path("flow")) == 0);
    REQUIRE(cli("focus " + path("flow.cf32") + " --out " + path("flowimg")) == 0);
    const json r = io::read_json(path("flowimg.report.json"));
    REQUIRE(r.contains("targets"));
    REQUIRE(r.at("targets").size() == 2);
    for (const auto& t : r.at("targets")) CHECK_FALSE(t.contains("error"));
    CHECK(r.contains("brightest"));

    REQUIRE(cli("analyze " + path("flowimg") + " --out " + path("again.json")) == 0);
    const json a = io::read_json(path("again.json"));
    CHECK(a.at("targets") == r.at("targets"));

    REQUIRE(cli("plot " + path("flowimg.report.json") + " --out " + path("flow.pgm")) == 0);
    const std::string pgm = slurp(path("flow.pgm"));
    CHECK(pgm.rfind("P5", 0) == 0);

    // back-projection runs through the same front end
    REQUIRE(cli("focus " + path("flow") + " --mode backprojection --out " + path("bp")) == 0);
    const json b = io::read_json(path("bp.report.json"));
    for (const auto& t : b.at("targets")) CHECK_FALSE(t.contains("error"));
}

TEST_CASE("plot of a lone bright cell") {
    FocusedImage img;
    img.grid = {1000.0, 2.5, 64, -0.1, 0.0025, 64};
    img.samples = Grid2D<cplx>(64, 64);
    img.samples(20, 30) = 1.0;
    json cfg = small_config();
    io::save_image(path("impulse"), img, {{"scenario", cfg}});
    REQUIRE(cli("plot " + path("impulse") + " --out " + path("impulse.pgm")) == 0);
    const std::string pgm = slurp(path("impulse.pgm"));
    CHECK(pgm.rfind("P5", 0) == 0);
    REQUIRE(cli("analyze " + path("impulse") + " --out " + path("impulse.report.json")) == 0);
}

TEST_CASE("validate-lbf sweep") {
    const std::string cfg = small_config_file("sweep.json");
    REQUIRE(cli("validate-lbf --config " + cfg + " --desk --out " + path("lbf.json")) == 0);
    const json r = io::read_json(path("lbf.json"));
    CHECK(r.at("target").contains("rms_phase_error_rad"));
    CHECK(r.at("sweep").at("rows").size() == 3);

    json empty = small_config();
    empty["validation"]["sweep"]["values"] = json::array();
    CHECK(cli("validate-lbf --config " + small_config_file("empty.json", empty) + " --out " + path("e.json")) == 2);
}
