#include "frostlab/runner/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <type_traits>
#include <map>
#include <set>
#include <sstream>

#include "frostlab/runner/ini.hpp"

namespace frostlab::runner {

ConfigError::ConfigError(const std::string& source, int line, const std::string& message)
    : std::runtime_error(line > 0 ? source + ":" + std::to_string(line) + ": " + message
                                  : source + ": " + message),
      line_(line),
      message_(message) {}

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::decay: return "decay";
        case Scenario::energy: return "energy";
        case Scenario::decouple: return "decouple";
        case Scenario::incidence: return "incidence";
        case Scenario::furstenberg: return "furstenberg";
        case Scenario::pipeline: return "pipeline";
    }
    return "unknown";
}

std::optional<Scenario> parse_scenario(const std::string& name) {
    for (Scenario s : {Scenario::decay, Scenario::energy, Scenario::decouple, Scenario::incidence,
                       Scenario::furstenberg, Scenario::pipeline})
        if (to_string(s) == name) return s;
    return std::nullopt;
}

double measure_dimension(const MeasureConfig& m) {
    if (m.kind == "cantor") return std::log(2.0) / std::log(1.0 / m.ratio);
    // N intervals of length r inside a support of length 2.
    return std::log(static_cast<double>(m.num_intervals)) / std::log(2.0 / m.interval_length);
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

namespace {

class Reader {
public:
    Reader(const Ini& ini, std::string source) : ini_(ini), source_(std::move(source)) {}

    [[noreturn]] void fail(int line, const std::string& msg) const { throw ConfigError(source_, line, msg); }

    void allow(const std::string& section, std::set<std::string> keys) { known_[section] = std::move(keys); }

    void check_unknown() const {
        for (const auto& [sec, entries] : ini_.sections()) {
            const auto k = known_.find(sec);
            if (k == known_.end()) {
                const int line = sec.empty() ? entries.begin()->second.line : ini_.section_line(sec);
                fail(line, sec.empty() ? "key outside any section" : "unknown section [" + sec + "]");
            }
            for (const auto& [key, e] : entries)
                if (!k->second.count(key)) fail(e.line, "unknown key '" + key + "' in [" + sec + "]");
        }
    }

    const IniEntry* get(const std::string& sec, const std::string& key) {
        const IniEntry* e = ini_.find(sec, key);
        if (e) canonical_[sec + "." + key] = e->value;
        return e;
    }

    void real(const std::string& sec, const std::string& key, double& out) {
        if (const IniEntry* e = get(sec, key)) out = parse_real(*e, key);
    }
    void real(const std::string& sec, const std::string& key, std::optional<double>& out) {
        if (const IniEntry* e = get(sec, key)) out = parse_real(*e, key);
    }
    void integer(const std::string& sec, const std::string& key, int& out) {
        if (const IniEntry* e = get(sec, key)) {
            const double v = parse_real(*e, key);
            if (v != std::floor(v) || std::fabs(v) > 1e9) fail(e->line, key + " must be an integer");
            out = static_cast<int>(v);
        }
    }
    void u64(const std::string& sec, const std::string& key, std::uint64_t& out) {
        if (const IniEntry* e = get(sec, key)) out = parse_u64(e->value, e->line, key);
    }
    void boolean(const std::string& sec, const std::string& key, bool& out) {
        if (const IniEntry* e = get(sec, key)) {
            if (e->value == "true" || e->value == "1" || e->value == "yes") out = true;
            else if (e->value == "false" || e->value == "0" || e->value == "no") out = false;
            else fail(e->line, key + " must be true or false");
        }
    }
    void text(const std::string& sec, const std::string& key, std::string& out,
              std::initializer_list<const char*> choices = {}) {
        if (const IniEntry* e = get(sec, key)) {
            if (choices.size()) {
                bool ok = false;
                std::string list;
                for (const char* c : choices) {
                    ok = ok || e->value == c;
                    list += (list.empty() ? "" : ", ") + std::string(c);
                }
                if (!ok) fail(e->line, key + " must be one of: " + list);
            }
            out = e->value;
        }
    }
    template <class T>
    void list(const std::string& sec, const std::string& key, std::vector<T>& out) {
        if (const IniEntry* e = get(sec, key)) {
            out.clear();
            std::istringstream in(e->value);
            std::string tok;
            while (in >> tok) {
                const double v = parse_real({tok, e->line}, key);
                if constexpr (std::is_integral_v<T>) {
                    if (v != std::floor(v)) fail(e->line, key + " entries must be integers");
                }
                out.push_back(static_cast<T>(v));
            }
            if (out.empty()) fail(e->line, key + " must not be empty");
        }
    }

    int line_of(const std::string& sec, const std::string& key) const {
        const IniEntry* e = ini_.find(sec, key);
        return e ? e->line : 0;
    }

    const std::map<std::string, std::string>& canonical() const { return canonical_; }
    std::map<std::string, std::string>& canonical() { return canonical_; }

private:
    double parse_real(const IniEntry& e, const std::string& key) const {
        const std::string& v = e.value;
        char* end = nullptr;
        errno = 0;
        double x = 0.0;
        // "p/q" fractions are accepted for exact ratios such as 1/3.
        if (const auto slash = v.find('/'); slash != std::string::npos) {
            const double a = std::strtod(v.substr(0, slash).c_str(), &end);
            const bool ok_a = *end == '\0';
            const double b = std::strtod(v.substr(slash + 1).c_str(), &end);
            if (!ok_a || *end != '\0' || b == 0.0 || v.empty()) fail(e.line, key + " must be a number");
            x = a / b;
        } else {
            x = std::strtod(v.c_str(), &end);
            if (v.empty() || *end != '\0' || errno == ERANGE) fail(e.line, key + " must be a number");
        }
        if (!std::isfinite(x)) fail(e.line, key + " must be finite");
        return x;
    }
    std::uint64_t parse_u64(const std::string& v, int line, const std::string& key) const {
        char* end = nullptr;
        errno = 0;
        const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
        if (v.empty() || v[0] == '-' || *end != '\0' || errno == ERANGE)
            fail(line, key + " must be a non-negative integer");
        return x;
    }

    const Ini& ini_;
    std::string source_;
    std::map<std::string, std::set<std::string>> known_;
    std::map<std::string, std::string> canonical_;
};

bool is_fourth_power(double R) {
    const double q = std::round(std::pow(R, 0.25));
    return q >= 1.0 && q * q * q * q == R;
}

std::string fmt_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

ExperimentConfig load_config(const std::string& text, const std::string& source, Scenario scenario,
                             const Overrides& overrides) {
    const Ini ini = Ini::parse(text, source);
    Reader rd(ini, source);
    rd.allow("run", {"scenario", "seed", "alpha", "s", "output_dir", "R_list"});
    rd.allow("measure", {"kind", "ratio", "depth", "mass", "num_intervals", "interval_length"});
    rd.allow("curve", {"kind", "coefficients", "grid_points"});
    rd.allow("decay", {"slack", "spacing_scale", "control", "min_separation"});
    rd.allow("energy", {"r", "envelope", "compare_random", "ladder", "regularity_C"});
    rd.allow("decouple", {"ensemble", "domain", "box_factor", "control", "eps_max", "control_min"});
    rd.allow("incidence", {"constant"});
    rd.allow("furstenberg", {"example", "delta", "s", "t", "C", "expect", "motion_angle", "motion_shift"});
    rd.check_unknown();

    ExperimentConfig c;
    c.scenario = scenario;
    c.source = source;
    if (const IniEntry* e = rd.get("run", "scenario")) {
        const auto sc = parse_scenario(e->value);
        if (!sc) rd.fail(e->line, "unknown scenario '" + e->value + "'");
        if (*sc != scenario)
            rd.fail(e->line, "config is for scenario '" + e->value + "', not '" + to_string(scenario) + "'");
    }
    rd.u64("run", "seed", c.seed);
    rd.real("run", "alpha", c.alpha);
    rd.real("run", "s", c.s);
    rd.text("run", "output_dir", c.output_dir);
    rd.list("run", "R_list", c.R_list);

    auto& m = c.measure;
    rd.text("measure", "kind", m.kind, {"cantor", "ap"});
    rd.real("measure", "ratio", m.ratio);
    rd.integer("measure", "depth", m.depth);
    rd.real("measure", "mass", m.mass);
    rd.integer("measure", "num_intervals", m.num_intervals);
    rd.real("measure", "interval_length", m.interval_length);

    rd.text("curve", "kind", c.curve.kind, {"parabola", "custom", "flat"});
    rd.list("curve", "coefficients", c.curve.coefficients);
    rd.integer("curve", "grid_points", c.curve.grid_points);

    rd.real("decay", "slack", c.decay.slack);
    rd.real("decay", "spacing_scale", c.decay.spacing_scale);
    rd.boolean("decay", "control", c.decay.control);
    rd.real("decay", "min_separation", c.decay.min_separation);

    rd.real("energy", "r", c.energy.r);
    rd.real("energy", "envelope", c.energy.envelope);
    rd.boolean("energy", "compare_random", c.energy.compare_random);
    rd.list("energy", "ladder", c.energy.ladder);
    rd.real("energy", "regularity_C", c.energy.regularity_C);

    rd.text("decouple", "ensemble", c.decouple.ensemble, {"unit", "random_signs", "measure"});
    rd.text("decouple", "domain", c.decouple.domain, {"ball", "period_cell", "box"});
    rd.real("decouple", "box_factor", c.decouple.box_factor);
    rd.boolean("decouple", "control", c.decouple.control);
    rd.real("decouple", "eps_max", c.decouple.eps_max);
    rd.real("decouple", "control_min", c.decouple.control_min);

    rd.real("incidence", "constant", c.incidence.constant);

    auto& f = c.furstenberg;
    rd.text("furstenberg", "example", f.example, {"grid", "single_line", "undersized", "cantor"});
    rd.real("furstenberg", "delta", f.delta);
    rd.real("furstenberg", "s", f.s);
    rd.real("furstenberg", "t", f.t);
    rd.real("furstenberg", "C", f.C);
    rd.text("furstenberg", "expect", f.expect, {"true", "false", "none"});
    rd.real("furstenberg", "motion_angle", f.motion_angle);
    {
        std::vector<double> shift;
        rd.list("furstenberg", "motion_shift", shift);
        if (!shift.empty()) {
            if (shift.size() != 2) rd.fail(rd.line_of("furstenberg", "motion_shift"), "motion_shift needs two numbers");
            f.motion_shift_x = shift[0];
            f.motion_shift_y = shift[1];
        }
    }

    if (overrides.output_dir) c.output_dir = *overrides.output_dir;
    if (overrides.alpha) c.alpha = *overrides.alpha;
    if (overrides.seed) c.seed = *overrides.seed;

    // Validation.
    const int mline = ini.section_line("measure");
    if (m.kind == "cantor") {
        if (!(m.ratio > 0.0 && m.ratio < 0.5)) rd.fail(rd.line_of("measure", "ratio"), "ratio must lie in (0,1/2)");
        if (m.depth < 1 || m.depth > 20) rd.fail(rd.line_of("measure", "depth"), "depth must lie in [1,20]");
    } else {
        if (m.num_intervals < 2) rd.fail(rd.line_of("measure", "num_intervals"), "num_intervals must be at least 2");
        if (!(m.interval_length > 0.0) || m.num_intervals * m.interval_length > 2.0)
            rd.fail(rd.line_of("measure", "interval_length"), "interval_length must be positive and fit in [-1,1]");
    }
    if (!(m.mass > 0.0)) rd.fail(rd.line_of("measure", "mass"), "mass must be positive");

    const double s = c.s.value_or(measure_dimension(m));
    if (!(s > 0.0 && s < 1.0)) rd.fail(c.s ? rd.line_of("run", "s") : mline, "s must lie in (0,1)");
    c.s = s;
    if (!(c.alpha > 0.0 && c.alpha < 0.5)) {
        if (overrides.alpha) throw ConfigError("command line", 0, "alpha must lie in (0,1/2)");
        rd.fail(rd.line_of("run", "alpha"), "alpha must lie in (0,1/2)");
    }

    if (c.curve.kind == "custom" && c.curve.coefficients.empty())
        rd.fail(ini.section_line("curve"), "custom curve needs coefficients");
    if (c.curve.grid_points < 3) rd.fail(rd.line_of("curve", "grid_points"), "grid_points must be at least 3");

    const bool needs_R = scenario != Scenario::energy &&
                         !(scenario == Scenario::furstenberg && f.example != "cantor");
    const int rline = rd.line_of("run", "R_list");
    if (needs_R && c.R_list.empty()) rd.fail(ini.section_line("run"), "R_list is required");
    const bool caps = scenario == Scenario::decouple || scenario == Scenario::incidence ||
                      scenario == Scenario::pipeline || scenario == Scenario::furstenberg;
    for (double R : c.R_list) {
        if (scenario == Scenario::decay && R < 16) rd.fail(rline, "R must be at least 16");
        if (caps && !is_fourth_power(R)) rd.fail(rline, "R must be the fourth power of an integer, got " + fmt_real(R));
        if (caps && R < 256) rd.fail(rline, "R must be at least 256 for cap scenarios");
    }
    if (scenario == Scenario::decay && c.R_list.size() < 3) rd.fail(rline, "decay needs at least 3 values of R");
    if (scenario == Scenario::decouple && c.R_list.size() < 2) rd.fail(rline, "decouple needs at least 2 values of R");
    if (scenario == Scenario::energy) {
        const double r = c.energy.r.value_or(1.0);
        if (!(r > 0.0)) rd.fail(rd.line_of("energy", "r"), "r must be positive");
        for (int d : c.energy.ladder)
            if (d < 1 || d > 9) rd.fail(rd.line_of("energy", "ladder"), "ladder depths must lie in [1,9]");
        if (c.energy.ladder.size() == 1) rd.fail(rd.line_of("energy", "ladder"), "ladder needs at least 2 depths");
    }
    if (scenario == Scenario::furstenberg) {
        if (!(f.delta > 0.0 && f.delta < 1.0)) rd.fail(rd.line_of("furstenberg", "delta"), "delta must lie in (0,1)");
        if (f.s && !(*f.s > 0.0 && *f.s <= 1.0)) rd.fail(rd.line_of("furstenberg", "s"), "s must lie in (0,1]");
        if (!(f.t > 0.0 && f.t <= 2.0)) rd.fail(rd.line_of("furstenberg", "t"), "t must lie in (0,2]");
        if (!(f.C >= 1.0)) rd.fail(rd.line_of("furstenberg", "C"), "C must be at least 1");
    }

    // Canonical form: every effective setting, one per line, in key order.
    auto& canon = rd.canonical();
    canon["run.scenario"] = to_string(scenario);
    canon["run.seed"] = std::to_string(c.seed);
    canon["run.alpha"] = fmt_real(c.alpha);
    canon["run.s"] = fmt_real(s);
    canon.erase("run.output_dir");
    for (const auto& [k, v] : canon) c.canonical += k + " = " + v + "\n";
    return c;
}

}  // namespace frostlab::runner
