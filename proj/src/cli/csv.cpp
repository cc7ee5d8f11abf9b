#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <memory>
#include <ostream>

#include "ma_radial/cli.hpp"

namespace ma_radial {

namespace {

constexpr const char* kHeader = "t,r,g,g1,g2,g3,phi,kappa,residual";

double parse_field(std::string_view s, std::size_t row) {
    if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ConfigError("solution row " + std::to_string(row) + ": bad number '" + std::string(s) + "'");
    }
    return v;
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return {};
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::vector<double> node_residuals(const Solution& sol) {
    const std::size_t N = sol.grid->size();
    std::vector<double> res(N, std::numeric_limits<double>::quiet_NaN());
    const int n = sol.problem.n;
    for (std::size_t i = 1; i + 1 < N; ++i) {
        const double t = (*sol.grid)[i], g1 = sol.g1[i];
        const double det = (2.0 * t * sol.g2[i] + g1) * std::pow(g1, n - 1);
        const double k = sol.problem.f(t, sol.g[i], t * g1 * g1);
        res[i] = std::abs(det - k) / std::max(1.0, std::abs(k));
    }
    return res;
}

void write_csv(std::ostream& out, const Solution& sol) {
    const auto res = node_residuals(sol);
    out << kHeader << '\n';
    for (std::size_t i = 0; i < sol.grid->size(); ++i) {
        const double t = (*sol.grid)[i];
        out << format_double(t) << ',' << format_double(std::sqrt(2.0 * t)) << ',' << format_double(sol.g[i]) << ','
            << format_double(sol.g1[i]) << ',' << format_double(sol.g2[i]) << ',' << format_double(sol.g3[i])
            << ',' << format_double(sol.phi[i]) << ',' << format_double(sol.kappa_vals[i]) << ','
            << format_double(res[i]) << '\n';
    }
}

Solution read_csv(std::istream& in, const Problem& p) {
    std::string line;
    if (!std::getline(in, line) || line != kHeader) throw ConfigError("solution file: unexpected header");
    std::vector<double> t, g, g1, g2, g3, phi, kap;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::vector<std::string_view> fields;
        std::string_view rest(line);
        for (;;) {
            const auto comma = rest.find(',');
            fields.push_back(rest.substr(0, comma));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (fields.size() != 9) throw ConfigError("solution row " + std::to_string(row) + ": expected 9 fields");
        t.push_back(parse_field(fields[0], row));
        g.push_back(parse_field(fields[2], row));
        g1.push_back(parse_field(fields[3], row));
        g2.push_back(parse_field(fields[4], row));
        g3.push_back(parse_field(fields[5], row));
        phi.push_back(parse_field(fields[6], row));
        kap.push_back(parse_field(fields[7], row));
    }
    GridPtr grid;
    try {
        grid = std::make_shared<const Grid>(Grid::from_nodes(std::move(t)));
    } catch (const ParameterError& e) {
        throw ConfigError(std::string("solution file: ") + e.what());
    }
    if (grid->t_max() != p.t_max) throw ConfigError("solution file: last t differs from the configured t_max");
    try {
        return solution_from_arrays(p, grid, std::move(g), std::move(g1), std::move(g2), std::move(g3),
                                    std::move(phi), std::move(kap));
    } catch (const ParameterError& e) {
        throw ConfigError(std::string("solution file: ") + e.what());
    }
}

}  // namespace ma_radial
