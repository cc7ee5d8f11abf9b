#include <cmath>

#include "ma_radial/cli.hpp"

namespace ma_radial {

double homogeneous_coefficient(int n, int m) {
    const double p = 2.0 + 2.0 * m / n;
    return std::pow(std::pow(p, n) * (p - 1.0), -1.0 / n);
}

std::vector<CatalogEntry> homogeneous_catalog() {
    std::vector<CatalogEntry> out;
    for (int n : {2, 3}) {
        for (int m = 0; m <= 4; ++m) {
            CatalogEntry e;
            e.name = "homogeneous n=" + std::to_string(n) + " m=" + std::to_string(m);
            e.n = n;
            e.m = m;
            e.exponent = 2.0 + 2.0 * m / n;
            e.verdict = m % n == 0 ? Verdict::Smooth : Verdict::NonSmoothAtOrigin;
            out.push_back(e);
        }
    }
    return out;
}

std::vector<CatalogProblem> problem_catalog() {
    std::vector<CatalogProblem> out;
    for (const auto& e : homogeneous_catalog()) {
        const std::string f = "(2*t)^" + std::to_string(e.m);
        out.push_back({e.name, Problem::make(e.n, f, homogeneous_coefficient(e.n, e.m)), false});
    }
    const struct {
        const char* name;
        int n;
        const char* f;
        double bv;
        bool smooth_positive;
    } rest[] = {
        {"flat", 2, "exp(-1/t)", 0.0, false},
        {"flat coupled", 2, "exp(-1/t)*exp(xi)", 0.0, false},
        {"flat coupled n=3", 3, "exp(-1/t)*exp(xi)", 0.0, false},
        {"coupled", 2, "(2*t)^2*exp(xi)", 0.0, false},
        {"positive linear", 2, "1 + t", 0.1, true},
        {"positive coupled xi", 2, "(1+t)*exp(xi/2)", 0.2, true},
        {"positive coupled zeta", 2, "(1+t)*(1+zeta)", -0.1, true},
        {"positive oscillating", 2, "2 + sin(5*t)", 0.0, true},
        {"positive n=3", 3, "(1+t)*exp(xi)", 0.0, true},
    };
    for (const auto& r : rest) out.push_back({r.name, Problem::make(r.n, r.f, r.bv), r.smooth_positive});
    return out;
}

HomogeneousFit fit_homogeneous(int n, int m, Execution exec) {
    if (n < 1 || m < 0) throw ParameterError("demo needs n >= 1 and m >= 0");
    const Problem p = Problem::make(n, "(2*t)^" + std::to_string(m), 0.0);
    const Solution s = solve_explicit(p, exec);

    HomogeneousFit fit;
    fit.oracle_exponent = 2.0 + 2.0 * m / n;
    fit.oracle_coefficient = homogeneous_coefficient(n, m);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (std::size_t i = 1; i < s.grid->size(); ++i) {
        const double r = std::sqrt(2.0 * (*s.grid)[i]);
        if (r < 0.05) continue;
        const double u = s.g[i] - s.g[0];
        const double lx = std::log(r), ly = std::log(u);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++count;
        const double exact = fit.oracle_coefficient * std::pow(r, fit.oracle_exponent);
        fit.max_rel_error = std::max(fit.max_rel_error, std::abs(u - exact) / exact);
    }
    fit.exponent = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    fit.coefficient = std::exp((sy - fit.exponent * sx) / count);
    fit.verdict = smoothness_verdict(vanishing_order(kappa(p)), n).verdict;
    return fit;
}

}  // namespace ma_radial
