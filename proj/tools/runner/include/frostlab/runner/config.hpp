#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace frostlab::runner {

/// Invalid configuration. what() reads "<source>:<line>: <message>", or
/// "<source>: <message>" when no single line is to blame.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& source, int line, const std::string& message);
    int line() const { return line_; }
    const std::string& message() const { return message_; }

private:
    int line_;
    std::string message_;
};

enum class Scenario { decay, energy, decouple, incidence, furstenberg, pipeline };
std::string to_string(Scenario s);
std::optional<Scenario> parse_scenario(const std::string& name);

struct MeasureConfig {
    std::string kind = "cantor";  // cantor | ap | random
    double ratio = 1.0 / 3.0;
    int depth = 10;
    double mass = 1.0;
    int num_intervals = 32;
    double interval_length = 1.0 / 1024;
};

struct CurveConfig {
    std::string kind = "parabola";  // parabola | custom | flat
    std::vector<double> coefficients;
    int grid_points = 1001;
};

struct DecayConfig {
    double slack = 0.15;
    double spacing_scale = 1.0;
    bool control = true;         // also run the flat curve
    double min_separation = 0.2; // flat exponent - curved exponent
};

struct EnergyConfig {
    std::optional<double> r;     // default: the measure's resolution
    double envelope = 8.0;       // Ec_k <= envelope * mass^(2k) * r^s
    bool compare_random = true;
    std::vector<int> ladder;     // Cantor depths for the discrete gain scan
    double regularity_C = 8.0;
};

struct DecoupleConfig {
    std::string ensemble = "unit";      // unit | random_signs | measure
    std::string domain = "period_cell"; // ball | period_cell | box
    double box_factor = 4.0;
    bool control = true;
    double eps_max = 0.2;
    double control_min = 0.25;
};

struct IncidenceConfig {
    double constant = 16.0;
};

struct FurstenbergConfig {
    std::string example = "grid";  // grid | single_line | undersized | cantor
    double delta = 1.0 / 32;
    std::optional<double> s;       // default 1, or 1 - s_measure for cantor
    double t = 1.0;
    double C = 2.0;
    std::string expect = "none";   // true | false | none
    double motion_angle = 0.0;
    double motion_shift_x = 0.0, motion_shift_y = 0.0;
};

struct ExperimentConfig {
    Scenario scenario = Scenario::decay;
    MeasureConfig measure;
    CurveConfig curve;
    std::vector<double> R_list;
    std::optional<double> s;  // default: dimension of the measure
    double alpha = 0.02;
    std::uint64_t seed = 1;
    std::string output_dir = "out";
    DecayConfig decay;
    EnergyConfig energy;
    DecoupleConfig decouple;
    IncidenceConfig incidence;
    FurstenbergConfig furstenberg;

    std::string source = "config";
    std::string canonical;  // normalized key = value listing, hashed into the manifest
};

struct Overrides {
    std::optional<std::string> output_dir;
    std::optional<double> alpha;
    std::optional<std::uint64_t> seed;
};

/// Parses and validates. The scenario comes from the subcommand; a
/// [run] scenario key, if present, must agree with it.
ExperimentConfig load_config(const std::string& text, const std::string& source, Scenario scenario,
                             const Overrides& overrides = {});

/// Dimension implied by the measure settings.
double measure_dimension(const MeasureConfig& m);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& bytes);

}  // namespace frostlab::runner
