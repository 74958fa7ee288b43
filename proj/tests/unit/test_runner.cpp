#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "frostlab/runner/runner.hpp"

using namespace frostlab::runner;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("frostlab_test_runner_" + name);
    fs::remove_all(p);
    return p;
}

// Example configs are named <scenario>[_variant].ini.
Scenario scenario_of(const fs::path& file) {
    const std::string stem = file.stem().string();
    return parse_scenario(stem.substr(0, stem.find('_'))).value();
}

std::string error_of(const std::string& text, Scenario sc = Scenario::decay) {
    try {
        load_config(text, "cfg.ini", sc);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("config errors carry line numbers") {
    CHECK(error_of("[run\nseed = 1\n") == "cfg.ini:1: unterminated section header");
    CHECK(error_of("[run]\nseed = 1\nfoo = 2\n") == "cfg.ini:3: unknown key 'foo' in [run]");
    CHECK(error_of("[nope]\n") == "cfg.ini:1: unknown section [nope]");
    CHECK(error_of("[run]\nseed\n") == "cfg.ini:2: expected key = value");
    CHECK(error_of("[run]\nseed = 1\nseed = 2\n") == "cfg.ini:3: duplicate key 'seed'");
    CHECK(error_of("[run]\ns = 1.5\n") == "cfg.ini:2: s must lie in (0,1)");
    CHECK(error_of("[run]\nalpha = abc\n") == "cfg.ini:2: alpha must be a number");
    CHECK(error_of("# c\n\n[measure]\nratio = 0.6\n") == "cfg.ini:4: ratio must lie in (0,1/2)");
    CHECK(error_of("[run]\nscenario = energy\n") == "cfg.ini:2: config is for scenario 'energy', not 'decay'");
    CHECK(error_of("[furstenberg]\nmotion_shift = 1 2 3\n", Scenario::furstenberg) ==
          "cfg.ini:2: motion_shift needs two numbers");

    const ConfigError e("x.ini", 7, "bad");
    CHECK(e.line() == 7);
    CHECK(e.message() == "bad");
}

TEST_CASE("config values") {
    const ExperimentConfig c = load_config("[run]\nR_list = 64 128 256\nseed = 9\n[measure]\nratio = 1/4\ndepth = 6\n",
                                           "cfg.ini", Scenario::decay);
    CHECK(c.R_list == std::vector<double>{64, 128, 256});
    CHECK(c.seed == 9);
    CHECK(c.measure.ratio == 0.25);
    CHECK(*c.s == doctest::Approx(0.5));
    CHECK(measure_dimension(c.measure) == doctest::Approx(0.5));

    Overrides ov;
    ov.seed = 4;
    ov.alpha = 0.1;
    ov.output_dir = "elsewhere";
    const ExperimentConfig o = load_config("[run]\nseed = 9\n", "cfg.ini", Scenario::furstenberg, ov);
    CHECK(o.seed == 4);
    CHECK(o.alpha == 0.1);
    CHECK(o.output_dir == "elsewhere");

    CHECK(fnv1a("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
}

TEST_CASE("every shipped example parses") {
    for (const auto& entry : fs::directory_iterator(FROSTLAB_EXAMPLES_DIR)) {
        CAPTURE(entry.path().string());
        CHECK_NOTHROW(load_config(slurp(entry.path()), entry.path().string(), scenario_of(entry.path())));
    }
}

TEST_CASE("csv formatting round-trips") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 12345678.9})
        CHECK(std::stod(format_real(v)) == v);
    CsvTable t("t.csv", {"a", "b"});
    t.add({1LL, std::string("x")});
    t.add({0.5, 2LL});
    CHECK(t.rows() == 2);
    CHECK(t.str() == "a,b\n1,x\n0.5,2\n");
}

TEST_CASE("invalid s exits 1 and still writes a manifest") {
    const fs::path dir = scratch("bad_s");
    fs::create_directories(dir);
    const fs::path cfg = dir / "bad.ini";
    std::ofstream(cfg) << "[run]\ns = 1.5\n";
    const std::string out = (dir / "out").string();
    std::vector<std::string> args{"frostlab", "decay", "--config", cfg.string(), "--out", out};
    std::vector<char*> argv;
    for (std::string& a : args) argv.push_back(a.data());
    CHECK(main_entry(static_cast<int>(argv.size()), argv.data()) == kExitError);
    const auto m = nlohmann::json::parse(slurp(fs::path(out) / "manifest.json"));
    CHECK(m["status"] == "error");
    CHECK(m["stage"] == "config");
    CHECK(m["exit_code"] == kExitError);
    CHECK(m["error"].get<std::string>().find("s must lie in (0,1)") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("furstenberg scenario") {
    ExperimentConfig cfg =
        load_config(slurp(fs::path(FROSTLAB_EXAMPLES_DIR) / "furstenberg.ini"), "furstenberg.ini", Scenario::furstenberg);
    const ScenarioOutput out = run_scenario(cfg);
    CHECK(out.violations.empty());
    CHECK(out.result["verdict"]["is_furstenberg"] == true);
    CHECK(out.result["invariant"] == true);

    cfg.furstenberg.example = "single_line";
    const ScenarioOutput single = run_scenario(cfg);
    CHECK(single.result["verdict"]["is_furstenberg"] == false);
    // The config still expects true, so a violation is reported.
    CHECK_FALSE(single.violations.empty());
}

TEST_CASE("repeated runs write identical CSVs") {
    for (const char* name : {"furstenberg.ini", "decay_small.ini"}) {
        CAPTURE(name);
        std::vector<fs::path> dirs;
        for (int k = 0; k < 2; ++k) {
            Overrides ov;
            dirs.push_back(scratch(std::string(name) + std::to_string(k)));
            ov.output_dir = dirs.back().string();
            const ExperimentConfig cfg =
                load_config(slurp(fs::path(FROSTLAB_EXAMPLES_DIR) / name), name, scenario_of(name), ov);
            const RunStatus st = run(cfg);
            CHECK(st.exit_code == kExitPass);
            CHECK(st.stage == "done");
            CHECK(fs::exists(dirs.back() / "manifest.json"));
            CHECK(fs::exists(dirs.back() / "report.json"));
        }
        std::size_t csvs = 0;
        for (const auto& e : fs::directory_iterator(dirs[0])) {
            if (e.path().extension() != ".csv") continue;
            ++csvs;
            CHECK(slurp(e.path()) == slurp(dirs[1] / e.path().filename()));
        }
        CHECK(csvs >= 1);
        for (const fs::path& d : dirs) fs::remove_all(d);
    }
}
