#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "antboost/config.hpp"
#include "antboost/report.hpp"

using namespace antboost;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

} // namespace

TEST_CASE("defaults resolve without a config file") {
    const RunConfig config = load_run_config(std::nullopt, CliOverrides{});
    CHECK(config.master_seed == 20260810);
    CHECK(config.acar.sites == 4);
    CHECK(config.noise.levels.size() == 5);
}

TEST_CASE("flag overrides beat file values") {
    TempDir dir("antboost_cfg_test");
    write_text(dir.path / "c.json", R"({"master_seed": 5, "experiments": {"noise": {"replicates": 50}}})");
    CliOverrides o;
    o.replicates = 10;
    const RunConfig config = load_run_config((dir.path / "c.json").string(), o);
    CHECK(config.master_seed == 5);
    CHECK(config.noise.replicates == 10);
}

TEST_CASE("unknown keys are hard errors that name the key") {
    TempDir dir("antboost_cfg_unknown");
    write_text(dir.path / "c.json", R"({"acar": {"evaporaton": 0.1}})");
    try {
        load_run_config((dir.path / "c.json").string(), CliOverrides{});
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("evaporaton") != std::string::npos);
    }
}

TEST_CASE("type mismatches name the key") {
    TempDir dir("antboost_cfg_type");
    write_text(dir.path / "c.json", R"({"acar": {"waves": "thirty"}})");
    try {
        load_run_config((dir.path / "c.json").string(), CliOverrides{});
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("waves") != std::string::npos);
    }
}

TEST_CASE("missing config file and bad formats are config errors") {
    CHECK_THROWS_AS(load_run_config(std::string("/nonexistent/nope.json"), CliOverrides{}),
                    ConfigError);
    CliOverrides o;
    o.formats = std::vector<std::string>{"xml"};
    CHECK_THROWS_AS(load_run_config(std::nullopt, o), ConfigError);
}

TEST_CASE("repo default config file matches the built-in defaults") {
    // configs/default.json is the frozen calibration record; parsing it
    // must not change anything.
    const fs::path repo_config = fs::path(__FILE__).parent_path().parent_path() / "configs" /
                                 "default.json";
    REQUIRE(fs::exists(repo_config));
    const RunConfig from_file = load_run_config(repo_config.string(), CliOverrides{});
    const RunConfig built_in = load_run_config(std::nullopt, CliOverrides{});
    CHECK(resolved_config_text(from_file) == resolved_config_text(built_in));
}

TEST_CASE("single-cell summary emits header plus one row, and JSON round-trips") {
    TempDir dir("antboost_emit_test");
    SummaryTable table;
    table.experiment = "demo";
    table.cell_columns = {"metric"};
    SummaryRow row;
    row.cell = {std::string("x")};
    row.mean = 0.123456789123;
    row.sd = 0.01;
    row.stderr_ = 0.001;
    row.n = 100;
    table.rows.push_back(row);

    Emitter emitter(dir.path.string(), {"csv", "json"}, 42);
    emitter.summary(table);

    const std::string csv = slurp((dir.path / "demo_42.csv").string());
    CHECK(csv == "metric,mean,sd,stderr,n\nx,0.123457,0.01,0.001,100\n");

    const auto parsed = nlohmann::json::parse(slurp((dir.path / "demo_42.json").string()));
    CHECK(parsed["rows"][0]["mean"].get<double>() == 0.123456789123);
    CHECK(parsed["rows"][0]["n"].get<std::size_t>() == 100);
}

TEST_CASE("trace emission writes long format and a sidecar dictionary") {
    TempDir dir("antboost_trace_test");
    TraceSet traces;
    traces.name = "demo_curves";
    traces.description = "step = wave index";
    traces.rows = {{0.0, "tau_site_0", 1.0}, {1.0, "tau_site_0", 0.9}};
    Emitter emitter(dir.path.string(), {"csv"}, 7);
    emitter.traces(traces);
    emitter.finish();
    const std::string csv = slurp((dir.path / "demo_curves_7.csv").string());
    CHECK(csv == "step,series,value\n0,tau_site_0,1\n1,tau_site_0,0.9\n");
    const std::string readme = slurp((dir.path / "README.txt").string());
    CHECK(readme.find("demo_curves_7.csv") != std::string::npos);
    CHECK(readme.find("step = wave index") != std::string::npos);
}

TEST_CASE("running a command twice produces byte-identical files") {
    TempDir dir_a("antboost_run_a");
    TempDir dir_b("antboost_run_b");
    RunConfig config = load_run_config(std::nullopt, CliOverrides{});
    config.master_seed = 2025;
    config.weak_learnability.gammas = {0.3};
    config.weak_learnability.waves = {5, 10};
    config.weak_learnability.replicates = 8;
    config.threads = 0;

    config.out_dir = dir_a.path.string();
    const auto paths_a = run_command("weak-learnability", config);
    config.out_dir = dir_b.path.string();
    const auto paths_b = run_command("weak-learnability", config);

    REQUIRE(paths_a.size() == paths_b.size());
    for (std::size_t i = 0; i < paths_a.size(); ++i) {
        // The config echo records the output directory, which differs by
        // construction here; everything else must match byte for byte.
        if (paths_a[i].find("resolved_config") != std::string::npos) continue;
        CHECK(slurp(paths_a[i]) == slurp(paths_b[i]));
    }
}

TEST_CASE("iso-check emission contains the flagged rho issue") {
    TempDir dir("antboost_iso_emit");
    RunConfig config = load_run_config(std::nullopt, CliOverrides{});
    config.master_seed = 99;
    config.out_dir = dir.path.string();
    config.iso_check.mc_samples = 200;
    config.iso_check.rounds = 2;
    const auto paths = run_command("iso-check", config);
    std::string json_path;
    for (const auto& p : paths) {
        if (p.find("iso_check") != std::string::npos && p.ends_with(".json")) json_path = p;
    }
    REQUIRE(!json_path.empty());
    const auto parsed = nlohmann::json::parse(slurp(json_path));
    CHECK(parsed["rounds"][0]["rho_flagged"].get<bool>());
    bool note_found = false;
    for (const auto& note : parsed["notes"]) {
        if (note.get<std::string>().find("outside the evaporation domain") != std::string::npos) {
            note_found = true;
        }
    }
    CHECK(note_found);
}
