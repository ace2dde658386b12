#include "heatlab/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace heatlab {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

[[noreturn]] void fail(int line, const std::string& key,
                       const std::string& reason) {
    throw ConfigError("config error at line " + std::to_string(line) +
                      (key.empty() ? "" : ", key '" + key + "'") + ": " + reason);
}

struct Entry {
    std::string value;
    int line = 0;
};

using SectionMap = std::map<std::string, std::map<std::string, Entry>>;

double parse_double(const Entry& e, const std::string& key) {
    char* end = nullptr;
    const double v = std::strtod(e.value.c_str(), &end);
    if (end == e.value.c_str() || *end != '\0') {
        fail(e.line, key, "expected a number, got '" + e.value + "'");
    }
    return v;
}

int parse_int(const Entry& e, const std::string& key) {
    const double v = parse_double(e, key);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) fail(e.line, key, "expected an integer");
    return i;
}

std::vector<double> parse_list(const Entry& e, const std::string& key) {
    std::vector<double> out;
    std::istringstream ss(e.value);
    std::string token;
    while (std::getline(ss, token, ',')) {
        token = trim(token);
        if (token.empty()) fail(e.line, key, "empty list element");
        char* end = nullptr;
        const double v = std::strtod(token.c_str(), &end);
        if (end == token.c_str() || *end != '\0') {
            fail(e.line, key, "expected a number, got '" + token + "'");
        }
        out.push_back(v);
    }
    if (out.empty()) fail(e.line, key, "empty list");
    return out;
}

} // namespace

const std::vector<std::string>& known_scenarios() {
    static const std::vector<std::string> names = {
        "uhke",   "ondiag",          "meyer",  "offdiag-trunc",
        "h-inequality", "weighted-estimate", "decay",  "linfty-l2",
        "li-yau", "mixed",           "coercivity", "all"};
    return names;
}

ExperimentConfig parse_config_text(const std::string& text) {
    SectionMap sections;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "", "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) fail(line_no, "", "empty section name");
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos) {
            fail(line_no, "", "expected 'key = value', got '" + line + "'");
        }
        if (section.empty()) fail(line_no, "", "key outside any [section]");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(line_no, "", "empty key");
        if (sections[section].count(key) != 0) {
            fail(line_no, key, "duplicate key in section [" + section + "]");
        }
        sections[section][key] = {value, line_no};
    }

    ExperimentConfig cfg;
    // Walk every entry, rejecting unknown sections/keys by name and line.
    for (const auto& [sec, entries] : sections) {
        for (const auto& [key, entry] : entries) {
            const std::string where = sec + "." + key;
            if (sec == "run") {
                if (key == "scenario") cfg.scenario = entry.value;
                else if (key == "out") cfg.out_dir = entry.value;
                else if (key == "seed") cfg.seed = static_cast<unsigned>(parse_int(entry, where));
                else fail(entry.line, where, "unknown key");
            } else if (sec == "kernel") {
                if (key == "preset") cfg.preset = entry.value;
                else if (key == "alpha") cfg.alpha = parse_double(entry, where);
                else if (key == "Lambda") cfg.Lambda = parse_double(entry, where);
                else if (key == "lambda") cfg.lambda_lower = parse_double(entry, where);
                else if (key == "cone_aperture") cfg.cone_aperture = parse_double(entry, where);
                else if (key == "oscillation_period") cfg.oscillation_period = parse_double(entry, where);
                else if (key == "phi") cfg.phi_kind = entry.value;
                else if (key == "alpha1") cfg.alpha1 = parse_double(entry, where);
                else if (key == "alpha2") cfg.alpha2 = parse_double(entry, where);
                else fail(entry.line, where, "unknown key");
            } else if (sec == "lattice") {
                if (key == "d") cfg.d = parse_int(entry, where);
                else if (key == "h") cfg.h = parse_double(entry, where);
                else if (key == "L") cfg.L = parse_double(entry, where);
                else fail(entry.line, where, "unknown key");
            } else if (sec == "schedule") {
                if (key == "eta") cfg.eta = parse_double(entry, where);
                else if (key == "s") cfg.s = parse_double(entry, where);
                else if (key == "steps") cfg.steps = parse_int(entry, where);
                else fail(entry.line, where, "unknown key");
            } else if (sec == "params") {
                if (key == "rho") cfg.rho = parse_double(entry, where);
                else if (key == "nu") {
                    if (entry.value == "search") cfg.nu = 0.0;
                    else cfg.nu = parse_double(entry, where);
                } else if (key == "C") cfg.C = parse_double(entry, where);
                else if (key == "sigma") cfg.sigma = parse_double(entry, where);
                else if (key == "wrap_tolerance") cfg.wrap_tolerance = parse_double(entry, where);
                else if (key == "ball_radius") cfg.ball_radius = parse_double(entry, where);
                else if (key == "rho_sweep") cfg.rho_sweep = parse_list(entry, where);
                else if (key == "dt_sweep") cfg.dt_sweep = parse_list(entry, where);
                else if (key == "sigma_sweep") cfg.sigma_sweep = parse_list(entry, where);
                else fail(entry.line, where, "unknown key");
            } else {
                fail(entry.line, where, "unknown section [" + sec + "]");
            }
        }
    }

    // Cross-field validation with the offending line when available.
    auto line_of = [&](const std::string& sec, const std::string& key) {
        auto sit = sections.find(sec);
        if (sit == sections.end()) return 0;
        auto kit = sit->second.find(key);
        return kit == sit->second.end() ? 0 : kit->second.line;
    };
    if (cfg.scenario.empty()) fail(0, "run.scenario", "missing required key");
    const auto& names = known_scenarios();
    if (std::find(names.begin(), names.end(), cfg.scenario) == names.end()) {
        fail(line_of("run", "scenario"), "run.scenario",
             "unknown scenario '" + cfg.scenario + "'");
    }
    if (cfg.alpha <= 0.0 || cfg.alpha >= 2.0) {
        fail(line_of("kernel", "alpha"), "kernel.alpha", "alpha out of (0,2)");
    }
    if (cfg.Lambda <= 0.0) {
        fail(line_of("kernel", "Lambda"), "kernel.Lambda", "must be positive");
    }
    if (cfg.d != 1 && cfg.d != 2) {
        fail(line_of("lattice", "d"), "lattice.d", "dimension must be 1 or 2");
    }
    if (cfg.h <= 0.0) fail(line_of("lattice", "h"), "lattice.h", "missing or nonpositive");
    if (cfg.L <= 0.0) fail(line_of("lattice", "L"), "lattice.L", "missing or nonpositive");
    if (cfg.h > 0.0 && cfg.L > 0.0) {
        const double ratio = cfg.L / cfg.h;
        const double rounded = std::round(ratio / 2.0) * 2.0;
        if (std::abs(ratio - rounded) > 1e-9 * ratio) {
            fail(line_of("lattice", "L"), "lattice.L",
                 "L/h must be an even integer");
        }
    }
    if (cfg.scenario != "li-yau" && cfg.s <= cfg.eta) {
        fail(line_of("schedule", "s"), "schedule.s", "must exceed eta");
    }
    if (cfg.steps < 0) fail(line_of("schedule", "steps"), "schedule.steps", "must be nonnegative");
    if (cfg.scenario == "offdiag-trunc" && cfg.rho <= 0.0) {
        fail(line_of("params", "rho"), "params.rho",
             "required by scenario offdiag-trunc");
    }
    if ((cfg.scenario == "h-inequality" || cfg.scenario == "weighted-estimate" ||
         cfg.scenario == "decay" || cfg.scenario == "linfty-l2") &&
        cfg.rho <= 0.0) {
        fail(line_of("params", "rho"), "params.rho",
             "required by scenario " + cfg.scenario);
    }
    if (cfg.preset == "mixed") {
        if (cfg.phi_kind != "pure" && cfg.phi_kind != "two-regime") {
            fail(line_of("kernel", "phi"), "kernel.phi",
                 "must be 'pure' or 'two-regime'");
        }
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string config_schema() {
    return R"([run]
scenario = uhke | ondiag | meyer | offdiag-trunc | h-inequality |
           weighted-estimate | decay | linfty-l2 | li-yau | mixed |
           coercivity | all          (required)
out      = output directory         (optional; --out overrides)
seed     = integer                  (default 0; weighted-estimate data)

[kernel]
preset   = fractional | cone | time-oscillating | mixed   (default fractional)
alpha    = jump index in (0,2)      (default 1.0)
Lambda   = upper-bound constant      (default 1.0)
lambda   = coercivity constant       (default 1.0)
cone_aperture      = radians, cone preset only   (default pi/4)
oscillation_period = time-oscillating preset     (default 1.0)
phi      = pure | two-regime, mixed preset       (default pure)
alpha1   = mixed preset near-field exponent      (default alpha)
alpha2   = mixed preset far-field exponent       (default alpha)

[lattice]
d = 1 | 2        (default 1)
h = spacing      (required; L/h must be an even integer)
L = period       (required)

[schedule]
eta   = start time   (default 0)
s     = end time     (required except li-yau)
steps = step count   (default 0 = auto rule tau <= h^alpha/4)

[params]
rho            = truncation radius (required by offdiag-trunc, h-inequality,
                 weighted-estimate, decay, linfty-l2)
nu             = weight steepness > 1, or 'search' (default search)
C              = H-inequality constant (default 8 Lambda)
sigma          = exclusion radius (decay)
wrap_tolerance = max tolerated wrap-around mass (default 1e-8; heavy-tailed
                 kernels on small tori need a larger value)
ball_radius    = coercivity ball radius (default L/4)
rho_sweep      = comma list (meyer; default 1,2,4)
dt_sweep       = comma list (ondiag; default dyadic below s-eta)
sigma_sweep    = comma list (decay; default 2rho,2.25rho,2.5rho)
)";
}

} // namespace heatlab
