#include "emt/config_file.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace emt {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

const std::set<std::string> kCoebaOnly = {
    "migration_period", "alpha",           "gamma",           "loudness_init_min",
    "loudness_init_max", "pulse_init_min", "pulse_init_max",  "neighbor_samples",
    "elite_pool_size",   "rebuild_demes"};
const std::set<std::string> kMfeaOnly = {"crossover_prob", "mutation_prob"};
const std::set<std::string> kShared = {"population_size", "budget", "seed", "trace_interval"};

long long parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key + "' needs an integer, got '" + value +
                                    "'");
    }
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key + "' needs a number, got '" + value +
                                    "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "on") return true;
    if (value == "false" || value == "0" || value == "off") return false;
    throw std::invalid_argument("config: key '" + key + "' needs a boolean, got '" + value + "'");
}

void check_known(const std::string& key) {
    if (!kCoebaOnly.count(key) && !kMfeaOnly.count(key) && !kShared.count(key))
        throw std::invalid_argument("config: unknown key '" + key + "'");
}

} // namespace

ConfigMap parse_config_text(const std::string& text) {
    ConfigMap out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " is not 'key = value': " + line);
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " has an empty key or value");
        out[key] = value;
    }
    return out;
}

ConfigMap load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

void apply_config(const ConfigMap& cfg, CoebaConfig& out) {
    for (const auto& [key, value] : cfg) {
        check_known(key);
        if (kMfeaOnly.count(key)) continue;
        if (key == "population_size") out.population_size = (int)parse_int(key, value);
        else if (key == "migration_period") out.migration_period = (int)parse_int(key, value);
        else if (key == "alpha") out.alpha = parse_real(key, value);
        else if (key == "gamma") out.gamma = parse_real(key, value);
        else if (key == "loudness_init_min") out.loudness_init_min = parse_real(key, value);
        else if (key == "loudness_init_max") out.loudness_init_max = parse_real(key, value);
        else if (key == "pulse_init_min") out.pulse_init_min = parse_real(key, value);
        else if (key == "pulse_init_max") out.pulse_init_max = parse_real(key, value);
        else if (key == "neighbor_samples") out.neighbor_samples = (int)parse_int(key, value);
        else if (key == "elite_pool_size") out.elite_pool_size = (int)parse_int(key, value);
        else if (key == "budget") out.budget = (std::uint64_t)parse_int(key, value);
        else if (key == "seed") out.seed = (std::uint64_t)parse_int(key, value);
        else if (key == "trace_interval") out.trace_interval = (std::uint64_t)parse_int(key, value);
        else if (key == "rebuild_demes") out.rebuild_demes = parse_bool(key, value);
    }
}

void apply_config(const ConfigMap& cfg, MfeaConfig& out) {
    for (const auto& [key, value] : cfg) {
        check_known(key);
        if (kCoebaOnly.count(key)) continue;
        if (key == "population_size") out.population_size = (int)parse_int(key, value);
        else if (key == "crossover_prob") out.crossover_prob = parse_real(key, value);
        else if (key == "mutation_prob") out.mutation_prob = parse_real(key, value);
        else if (key == "budget") out.budget = (std::uint64_t)parse_int(key, value);
        else if (key == "seed") out.seed = (std::uint64_t)parse_int(key, value);
        else if (key == "trace_interval") out.trace_interval = (std::uint64_t)parse_int(key, value);
    }
}

ConfigMap describe(const CoebaConfig& cfg) {
    ConfigMap m;
    m["population_size"] = std::to_string(cfg.population_size);
    m["migration_period"] = std::to_string(cfg.migration_period);
    m["alpha"] = std::to_string(cfg.alpha);
    m["gamma"] = std::to_string(cfg.gamma);
    m["loudness_init_min"] = std::to_string(cfg.loudness_init_min);
    m["loudness_init_max"] = std::to_string(cfg.loudness_init_max);
    m["pulse_init_min"] = std::to_string(cfg.pulse_init_min);
    m["pulse_init_max"] = std::to_string(cfg.pulse_init_max);
    m["neighbor_samples"] = std::to_string(cfg.neighbor_samples);
    m["elite_pool_size"] = std::to_string(cfg.elite_pool_size);
    m["budget"] = std::to_string(cfg.budget);
    m["trace_interval"] = std::to_string(cfg.trace_interval);
    m["rebuild_demes"] = cfg.rebuild_demes ? "true" : "false";
    return m;
}

ConfigMap describe(const MfeaConfig& cfg) {
    ConfigMap m;
    m["population_size"] = std::to_string(cfg.population_size);
    m["crossover_prob"] = std::to_string(cfg.crossover_prob);
    m["mutation_prob"] = std::to_string(cfg.mutation_prob);
    m["budget"] = std::to_string(cfg.budget);
    m["trace_interval"] = std::to_string(cfg.trace_interval);
    return m;
}

} // namespace emt
