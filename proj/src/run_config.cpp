#include "cascade/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace cascade {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

double to_double(const std::string& section, const std::string& key,
                 const std::string& v) {
    try {
        size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for " + section + "." + key + ": " + v);
    }
}

int to_int(const std::string& section, const std::string& key,
           const std::string& v) {
    try {
        size_t pos = 0;
        int x = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("bad integer value for " + section + "." + key + ": " + v);
    }
}

bool to_bool(const std::string& section, const std::string& key,
             const std::string& v) {
    std::string s = lower(v);
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    throw ConfigError("bad boolean value for " + section + "." + key + ": " + v);
}

bool is_auto(const std::string& v) { return lower(v) == "auto"; }

struct KeySpec {
    const char* section;
    const char* key;
    void (*apply)(RunConfig&, const std::string&, const std::string&,
                  const std::string&);
};

// clang-format off
const KeySpec kKeys[] = {
    {"subsystem", "omega_q", [](RunConfig& c, const std::string& s, const std::string& k, const std::string& v) {
        c.subsystem.omega_q = to_double(s, k, v); }},
    {"subsystem", "omega_c", [](RunConfig& c, const std::string& s, const std::string& k, const std::string& v) {
        if (is_auto(v)) c.omega_c.reset(); else c.omega_c = to_double(s, k, v); }},
    {"subsystem", "eta", [](RunConfig& c, const std::string& s, const std::string& k, const std::string& v) {
        c.subsystem.eta = to_double(s, k, v); }},
    {"subsystem", "theta", [](RunConfig& c, const std::string& s, const std::string& k, const std::string& v) {
        c.subsystem.theta = to_double(s, k, v); }},
    {"subsystem", "n_fock", [](RunConfig& c, const std::string& s, const std::string& k, const std::string& v) {
        c.subsystem.n_fock = to_int(s, k, v); }},
    {"subsystem", "n_keep", [](RunConfig& c, const std::string& s, const std::string& k, const std::string& v) {
        c.subsystem.n_keep = to_int(s, k, v); }},
    {"cascade", "kappa1", [](RunConfig& c, const std::string& s, const std::string& k, const std::string& v) {
        c.cascade.kappa1 = to_double(s, k, v); }},
    {"cascade", "kappa2", [](RunConfig& c, const std::string& s, const std::string& k, const std::string& v) {
        c.cascade.kappa2 = to_double(s, k, v); }},
    {"cascade", "gain", [](RunConfig& c, const std::string& s, const std::string& k, const std::string& v) {
        c.cascade.G = to_double(s, k, v); }},
    {"cascade", "gamma1", [](RunConfig& c, const std::string& s, const std::string& k, const std::string& v) {
        c.cascade.gamma1 = to_double(s, k, v); }},
    {"cascade", "gamma2", [](RunConfig& c, const std::string& s, const std::string& k, const std::string& v) {
        c.cascade.gamma2 = to_double(s, k, v); }},
    {"pulse", "shape", [](RunConfig& c, const std::string& s, const std::string& k, const std::string& v) {
        std::string x = lower(v);
        if (x == "gauss") c.pulse_shape = PulseShape::gauss;
        else if (x == "exp" || x == "exponential") c.pulse_shape = PulseShape::exponential;
        else if (x == "vacuum") c.pulse_shape = PulseShape::vacuum;
        else throw ConfigError("bad value for " + s + "." + k + ": " + v); }},
    {"pulse", "t", [](RunConfig& c, const std::string& s, const std::string& k, const std::string& v) {
        c.pulse_T = to_double(s, k, v); }},
    {"pulse", "t0", [](RunConfig& c, const std::string& s, const std::string& k, const std::string& v) {
        if (is_auto(v)) c.pulse_t0.reset(); else c.pulse_t0 = to_double(s, k, v); }},
    {"pulse", "omega_in", [](RunConfig& c, const std::string& s, const std::string& k, const std::string& v) {
        if (is_auto(v)) c.pulse_omega_in.reset(); else c.pulse_omega_in = to_double(s, k, v); }},
    {"pulse", "kappa_s", [](RunConfig& c, const std::string& s, const std::string& k, const std::string& v) {
        c.pulse_kappa_s = to_double(s, k, v); }},
    {"integrator", "frame", [](RunConfig& c, const std::string& s, const std::string& k, const std::string& v) {
        std::string x = lower(v);
        if (x == "interaction") c.frame = Frame::interaction;
        else if (x == "schrodinger") c.frame = Frame::schrodinger;
        else throw ConfigError("bad value for " + s + "." + k + ": " + v); }},
    {"integrator", "dt", [](RunConfig& c, const std::string& s, const std::string& k, const std::string& v) {
        if (is_auto(v)) c.dt.reset(); else c.dt = to_double(s, k, v); }},
    {"integrator", "resym_every", [](RunConfig& c, const std::string& s, const std::string& k, const std::string& v) {
        c.resym_every = to_int(s, k, v); }},
    {"integrator", "parallel", [](RunConfig& c, const std::string& s, const std::string& k, const std::string& v) {
        c.parallel = to_bool(s, k, v); }},
    {"correlation", "tau_d", [](RunConfig& c, const std::string& s, const std::string& k, const std::string& v) {
        c.tau_d = to_double(s, k, v); }},
    {"correlation", "grid_points", [](RunConfig& c, const std::string& s, const std::string& k, const std::string& v) {
        c.corr_points = to_int(s, k, v); }},
    {"correlation", "t_end_factor", [](RunConfig& c, const std::string& s, const std::string& k, const std::string& v) {
        c.t_end_factor = to_double(s, k, v); }},
    {"scan", "lo", [](RunConfig& c, const std::string& s, const std::string& k, const std::string& v) {
        c.scan.lo = to_double(s, k, v); }},
    {"scan", "hi", [](RunConfig& c, const std::string& s, const std::string& k, const std::string& v) {
        c.scan.hi = to_double(s, k, v); }},
    {"scan", "points", [](RunConfig& c, const std::string& s, const std::string& k, const std::string& v) {
        c.scan.n = to_int(s, k, v); }},
    {"scan", "levels", [](RunConfig& c, const std::string& s, const std::string& k, const std::string& v) {
        c.scan_levels_count = to_int(s, k, v); }},
    {"sweep", "axis", [](RunConfig& c, const std::string& s, const std::string& k, const std::string& v) {
        std::string x = lower(v);
        if (x != "gamma" && x != "delay" && x != "gain" && x != "omega_c")
            throw ConfigError("bad value for " + s + "." + k + ": " + v);
        c.sweep_axis = x; }},
    {"sweep", "grid", [](RunConfig& c, const std::string&, const std::string&, const std::string& v) {
        c.sweep_grid = parse_grid(v); }},
};
// clang-format on

}  // namespace

void apply_assignment(RunConfig& cfg, const std::string& section,
                      const std::string& key, const std::string& value) {
    std::string s = lower(trim(section)), k = lower(trim(key));
    for (const KeySpec& spec : kKeys) {
        if (s == spec.section && k == spec.key) {
            spec.apply(cfg, s, k, trim(value));
            return;
        }
    }
    throw ConfigError("unknown config key: " + s + "." + k);
}

RunConfig default_config() { return RunConfig{}; }

RunConfig load_config(const std::string& path) {
    RunConfig cfg;
    if (path.empty()) return cfg;
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    std::string line, section;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        size_t cpos = line.find_first_of("#;");
        if (cpos != std::string::npos) line = line.substr(0, cpos);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(path + ":" + std::to_string(lineno)
                                  + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno)
                              + ": expected key = value");
        if (section.empty())
            throw ConfigError(path + ":" + std::to_string(lineno)
                              + ": key outside any [section]");
        apply_assignment(cfg, section, line.substr(0, eq), line.substr(eq + 1));
    }
    return cfg;
}

void apply_env_overrides(RunConfig& cfg) {
    for (const KeySpec& spec : kKeys) {
        std::string name = "CASCADE_";
        for (const char* c = spec.section; *c; ++c)
            name += char(std::toupper(unsigned(*c)));
        name += '_';
        for (const char* c = spec.key; *c; ++c)
            name += char(std::toupper(unsigned(*c)));
        if (const char* v = std::getenv(name.c_str()))
            apply_assignment(cfg, spec.section, spec.key, v);
    }
}

ScanGrid parse_grid(const std::string& text) {
    std::string t = trim(text);
    std::vector<std::string> parts;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw ConfigError("grid must be a:b:n, got: " + text);
    ScanGrid g;
    g.lo = to_double("grid", "a", trim(parts[0]));
    g.hi = to_double("grid", "b", trim(parts[1]));
    g.n = to_int("grid", "n", trim(parts[2]));
    if (g.n < 1 || g.hi < g.lo)
        throw ConfigError("grid must satisfy a <= b, n >= 1: " + text);
    return g;
}

IntegratorOptions integrator_options(const RunConfig& cfg) {
    IntegratorOptions opt;
    opt.frame = cfg.frame;
    opt.dt = cfg.dt.value_or(-1.0);
    opt.resym_every = cfg.resym_every;
    opt.parallel = cfg.parallel;
    return opt;
}

}  // namespace cascade
