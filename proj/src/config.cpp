#include "vortexlab/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace vortexlab {

namespace {

const std::vector<std::string> kCommands{
    "stationarity", "entropy-decay", "radius-law", "pairlog", "moments",
    "limit-law",    "reversal",      "scaling",    "collision-bound"};

// section-qualified key names accepted in a config file
const std::vector<std::string> kKnownKeys{
    "command",        "system.n",    "system.a",        "system.nu",
    "system.variant", "sim.dt",      "sim.horizon",     "sim.eps",
    "sim.replicas",   "sim.t_trunc", "est.k",           "est.n_permutations",
    "est.n_samples",  "run.out_dir"};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

std::string closest_key(const std::string& key) {
    std::string best;
    std::size_t best_d = std::string::npos;
    for (const auto& cand : kKnownKeys) {
        // compare against the short name as well as the qualified one
        const auto dot = cand.find('.');
        const std::string short_name = dot == std::string::npos ? cand : cand.substr(dot + 1);
        const std::size_t d = std::min(edit_distance(key, cand), edit_distance(key, short_name));
        if (d < best_d) {
            best_d = d;
            best = cand;
        }
    }
    return best;
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' expects a real number, got '" + value + "'");
    }
}

std::size_t parse_count(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(value, &used);
        if (used != value.size() || v < 0) throw std::invalid_argument("");
        return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' expects a non-negative integer, got '" +
                          value + "'");
    }
}

std::vector<double> parse_real_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_real(key, trim(item)));
    if (out.empty()) throw ConfigError("config: key '" + key + "' expects a comma list of reals");
    return out;
}

} // namespace

const std::vector<std::string>& known_commands() { return kCommands; }

double RunConfig::a_sum() const {
    double s = 0.0;
    for (double ai : a) s += ai;
    return s;
}

void RunConfig::validate() const {
    if (!command.empty() &&
        std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end())
        throw ConfigError("config: unknown command '" + command + "'");
    if (n < 1) throw ConfigError("config: n must be >= 1");
    if (a.size() != n)
        throw ConfigError("config: vorticity list has " + std::to_string(a.size()) +
                          " entries but n=" + std::to_string(n));
    if (!(nu > 0.0)) throw ConfigError("config: nu must be > 0");
    if (!(dt > 0.0)) throw ConfigError("config: dt must be > 0");
    if (!(horizon > 0.0)) throw ConfigError("config: horizon must be > 0");
    if (dt > horizon) throw ConfigError("config: dt must be <= horizon");
    if (!(eps > 0.0)) throw ConfigError("config: eps must be > 0");
    if (replicas < 1) throw ConfigError("config: replicas must be >= 1");
    if (!(t_trunc > 0.0)) throw ConfigError("config: t_trunc must be > 0");
    if (k < 3 || k > 20) throw ConfigError("config: k must lie in [3, 20]");
    if (n_permutations < 1) throw ConfigError("config: n_permutations must be >= 1");
    if (n_samples < 1) throw ConfigError("config: n_samples must be >= 1");
    if (out_dir.empty()) throw ConfigError("config: out_dir must not be empty");
    if (!variant.empty() && variant != "original" && variant != "rescaled" &&
        variant != "difference" && variant != "reversed" && variant != "ou")
        throw ConfigError("config: unknown variant '" + variant + "'");
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::string section;
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    bool n_given = false, a_given = false;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "system" && section != "sim" && section != "est" && section != "run")
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string qualified = section.empty() ? key : section + "." + key;
        const bool top = section.empty();

        if (qualified == "command") cfg.command = value;
        else if (qualified == "system.n" || (top && key == "n")) {
            cfg.n = parse_count(key, value);
            n_given = true;
        } else if (qualified == "system.a" || (top && key == "a")) {
            cfg.a = parse_real_list(key, value);
            a_given = true;
        } else if (qualified == "system.nu" || (top && key == "nu"))
            cfg.nu = parse_real(key, value);
        else if (qualified == "system.variant" || (top && key == "variant"))
            cfg.variant = value;
        else if (qualified == "sim.dt" || (top && key == "dt"))
            cfg.dt = parse_real(key, value);
        else if (qualified == "sim.horizon" || (top && key == "horizon"))
            cfg.horizon = parse_real(key, value);
        else if (qualified == "sim.eps" || (top && key == "eps"))
            cfg.eps = parse_real(key, value);
        else if (qualified == "sim.replicas" || (top && key == "replicas"))
            cfg.replicas = parse_count(key, value);
        else if (qualified == "sim.t_trunc" || (top && key == "t_trunc"))
            cfg.t_trunc = parse_real(key, value);
        else if (qualified == "est.k" || (top && key == "k"))
            cfg.k = static_cast<int>(parse_count(key, value));
        else if (qualified == "est.n_permutations" || (top && key == "n_permutations"))
            cfg.n_permutations = static_cast<int>(parse_count(key, value));
        else if (qualified == "est.n_samples" || (top && key == "n_samples"))
            cfg.n_samples = parse_count(key, value);
        else if (qualified == "run.out_dir" || (top && key == "out_dir"))
            cfg.out_dir = value;
        else
            throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key +
                              "'; did you mean '" + closest_key(key) + "'?");
    }
    // a defaults to ones when only n was given; n follows the list when only
    // the list was given.
    if (n_given && !a_given) cfg.a.assign(cfg.n, 1.0);
    if (a_given && !n_given) cfg.n = cfg.a.size();
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

} // namespace vortexlab
