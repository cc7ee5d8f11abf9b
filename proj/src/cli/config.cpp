#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "ma_radial/cli.hpp"

namespace ma_radial {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
    T v{};
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || text.empty()) {
        throw ConfigError("invalid value for key " + key + ": '" + text + "'", key);
    }
    return v;
}

const char* const kKeys[] = {"n",           "f",   "boundary_value", "t_max",   "grid_nodes",
                             "grid_grading", "tol", "max_iter",       "damping", "residual_tol"};

}  // namespace

Config parse_config(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string s = trim(line);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
        }
        const std::string key = trim(std::string_view(s).substr(0, eq));
        std::string value = trim(std::string_view(s).substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) {
            throw ConfigError("unknown key: " + key, key);
        }
        if (!kv.emplace(key, value).second) throw ConfigError("repeated key: " + key, key);
    }
    for (const char* key : {"n", "f", "boundary_value"}) {
        if (!kv.count(key)) throw ConfigError(std::string("missing key: ") + key, key);
    }

    Config c;
    c.f_source = kv["f"];
    try {
        c.problem.f = Expr::parse(c.f_source);
    } catch (const ParseError& e) {
        throw ConfigError(std::string("invalid value for key f: ") + e.what(), "f");
    }
    Problem& p = c.problem;
    p.n = parse_number<int>("n", kv["n"]);
    p.boundary_value = parse_number<double>("boundary_value", kv["boundary_value"]);
    if (kv.count("t_max")) p.t_max = parse_number<double>("t_max", kv["t_max"]);
    if (kv.count("grid_nodes")) p.grid.nodes = parse_number<int>("grid_nodes", kv["grid_nodes"]);
    if (kv.count("grid_grading")) p.grid.grading = parse_number<double>("grid_grading", kv["grid_grading"]);
    if (kv.count("tol")) p.solver.tol = parse_number<double>("tol", kv["tol"]);
    if (kv.count("max_iter")) p.solver.max_iter = parse_number<int>("max_iter", kv["max_iter"]);
    if (kv.count("damping")) p.solver.damping = parse_number<double>("damping", kv["damping"]);
    if (kv.count("residual_tol")) c.residual_tol = parse_number<double>("residual_tol", kv["residual_tol"]);
    if (!(c.residual_tol > 0.0)) throw ConfigError("residual_tol must be positive", "residual_tol");
    try {
        p.validate();
    } catch (const ParameterError& e) {
        throw ConfigError(std::string("invalid config: ") + e.what());
    } catch (const DomainError& e) {
        throw ConfigError(std::string("invalid value for key f: ") + e.what(), "f");
    }
    return c;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    return parse_config(in);
}

}  // namespace ma_radial
