#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "frostlab/common.hpp"
#include "frostlab/runner/runner.hpp"

#ifndef FROSTLAB_VERSION
#define FROSTLAB_VERSION "unknown"
#endif

namespace frostlab::runner {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string utc_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json base_manifest(const std::string& scenario) {
    return {{"schema", 1},
            {"tool", "frostlab"},
            {"version", FROSTLAB_VERSION},
            {"compiler", __VERSION__},
            {"scenario", scenario},
            {"started_utc", utc_now()}};
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw Error("cannot write " + p.string());
    f << text;
    if (!f) throw Error("cannot write " + p.string());
}

void write_manifest(const fs::path& dir, const json& m) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    std::ofstream f(dir / "manifest.json", std::ios::binary);
    if (f) f << m.dump(2) << '\n';
}

}  // namespace

void write_failure_manifest(const std::string& dir, const std::string& scenario,
                            const std::string& stage, const std::string& error) {
    json m = base_manifest(scenario);
    m["stage"] = stage;
    m["status"] = "error";
    m["exit_code"] = kExitError;
    m["error"] = error;
    m["files"] = json::array();
    write_manifest(dir, m);
}

RunStatus run(const ExperimentConfig& cfg) {
    RunStatus st;
    const auto t0 = std::chrono::steady_clock::now();
    json m = base_manifest(to_string(cfg.scenario));
    m["config_source"] = cfg.source;
    m["config_hash"] = hex64(fnv1a(cfg.canonical));
    m["seed"] = cfg.seed;
    const fs::path dir(cfg.output_dir);
    try {
        st.stage = "compute";
        ScenarioOutput out = run_scenario(cfg);

        st.stage = "write";
        fs::create_directories(dir);
        const bool passed = out.violations.empty();
        json report{{"schema", 1},
                    {"scenario", to_string(cfg.scenario)},
                    {"config_hash", m["config_hash"]},
                    {"seed", cfg.seed},
                    {"s", *cfg.s},
                    {"alpha", cfg.alpha},
                    {"passed", passed},
                    {"violations", out.violations},
                    {"result", out.result}};
        write_text(dir / "report.json", report.dump(2) + "\n");
        st.files.push_back("report.json");
        for (const CsvTable& t : out.tables) {
            write_text(dir / t.name(), t.str());
            st.files.push_back(t.name());
        }
        st.exit_code = passed ? kExitPass : kExitViolation;
        st.stage = "done";
        m["status"] = passed ? "pass" : "violation";
    } catch (const std::exception& e) {
        st.exit_code = kExitError;
        st.error = e.what();
        m["status"] = "error";
        m["error"] = st.error;
    }
    m["stage"] = st.stage;
    m["exit_code"] = st.exit_code;
    m["files"] = st.files;
    m["wall_time_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(dir, m);
    return st;
}

int main_entry(int argc, char** argv) {
    CLI::App app{"frostlab: numerical experiments on Fourier decay of fractal measures on curves"};
    app.require_subcommand(1, 1);
    std::string config_path, out_dir;
    double alpha = 0.0;
    std::uint64_t seed = 0;
    std::vector<std::pair<Scenario, CLI::App*>> subs;
    for (Scenario sc : {Scenario::decay, Scenario::energy, Scenario::decouple, Scenario::incidence,
                        Scenario::furstenberg, Scenario::pipeline}) {
        CLI::App* sub = app.add_subcommand(to_string(sc), "run the " + to_string(sc) + " scenario");
        sub->add_option("--config", config_path, "INI config file")->required();
        sub->add_option("--out", out_dir, "output directory (overrides the config)");
        sub->add_option("--alpha", alpha, "heavy-square exponent alpha (overrides the config)");
        sub->add_option("--seed", seed, "random seed (overrides the config)");
        subs.emplace_back(sc, sub);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitPass : kExitError;
    }

    Scenario scenario = Scenario::decay;
    CLI::App* chosen = nullptr;
    for (auto& [sc, sub] : subs)
        if (sub->parsed()) {
            scenario = sc;
            chosen = sub;
        }
    Overrides ov;
    if (chosen->count("--out")) ov.output_dir = out_dir;
    if (chosen->count("--alpha")) ov.alpha = alpha;
    if (chosen->count("--seed")) ov.seed = seed;

    ExperimentConfig cfg;
    try {
        std::ifstream in(config_path, std::ios::binary);
        if (!in) throw ConfigError(config_path, 0, "cannot open config file");
        std::stringstream buf;
        buf << in.rdbuf();
        cfg = load_config(buf.str(), config_path, scenario, ov);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        write_failure_manifest(ov.output_dir.value_or("out"), to_string(scenario), "config", e.what());
        return kExitError;
    }

    const RunStatus st = run(cfg);
    if (st.exit_code == kExitError) {
        std::cerr << "error (" << st.stage << "): " << st.error << '\n';
    } else {
        std::cout << to_string(scenario) << ": " << (st.exit_code == kExitPass ? "pass" : "bound violation")
                  << " -> " << cfg.output_dir << '\n';
    }
    return st.exit_code;
}

}  // namespace frostlab::runner
