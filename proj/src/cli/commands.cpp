#include <fstream>
#include <optional>
#include <ostream>

#include "ma_radial/cli.hpp"

namespace ma_radial {

namespace {

const char* flag(bool b) { return b ? "true" : "false"; }

std::optional<Config> config_or_report(const std::string& path, std::ostream& err) {
    try {
        return load_config(path);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return std::nullopt;
    }
}

void print_problem(std::ostream& out, const Config& c) {
    out << "n=" << c.problem.n << '\n'
        << "f=" << c.f_source << '\n'
        << "boundary_value=" << format_double(c.problem.boundary_value) << '\n'
        << "t_max=" << format_double(c.problem.t_max) << '\n';
}

void print_span(std::ostream& out, const char* prefix, const ComparabilitySpan& s) {
    out << prefix << "t_range=" << format_double(s.t_lo) << ".." << format_double(s.t_hi) << '\n'
        << prefix << "holds=" << flag(s.holds) << '\n'
        << prefix << "c_lower=" << format_double(s.c_lower) << '\n'
        << prefix << "C_upper=" << format_double(s.C_upper) << '\n';
    if (!s.holds) out << prefix << "failure=" << s.failure << '\n';
}

}  // namespace

int run_solve(const std::string& config_path, const std::string& out_path, std::ostream& out, std::ostream& err) {
    const auto c = config_or_report(config_path, err);
    if (!c) return 1;
    std::optional<Solution> sol;
    try {
        sol = solve(c->problem);
    } catch (const Error& e) {
        err << "solver failed: " << e.what() << '\n';
        return 2;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
        err << "error: cannot write " << out_path << '\n';
        return 1;
    }
    write_csv(file, *sol);
    file.close();
    if (!file) {
        err << "error: writing " << out_path << " failed\n";
        return 1;
    }

    print_problem(out, *c);
    out << "iterations=" << sol->iterations << '\n'
        << "final_update=" << format_double(sol->final_update) << '\n'
        << "residual_max=" << format_double(sol->residual_max) << '\n'
        << "C_u=" << format_double(sol->C_u) << '\n'
        << "nodes=" << sol->grid->size() << '\n';
    if (!(sol->residual_max <= c->residual_tol)) {
        err << "verification failed: residual_max " << format_double(sol->residual_max) << " exceeds "
            << format_double(c->residual_tol) << '\n';
        return 3;
    }
    return 0;
}

int run_analyze(const std::string& config_path, std::ostream& out, std::ostream& err) {
    const auto c = config_or_report(config_path, err);
    if (!c) return 1;
    const Problem& p = c->problem;
    try {
        const OrderEstimate est = vanishing_order(kappa(p), kDefaultJetOrder, p.t_max);
        const SmoothnessVerdict v = smoothness_verdict(est, p.n);
        const ComparabilityReport comp = check_comparability(p, default_box(p));

        print_problem(out, *c);
        out << "kappa=" << p.f.to_string() << " at (xi, zeta) = (0, 0)\n"
            << "tau=" << to_string(v.tau) << '\n'
            << "jet_available=" << flag(est.jet_available) << '\n';
        if (est.jet_available) {
            out << "jet=";
            for (std::size_t k = 0; k < est.jet.size(); ++k) out << (k ? "," : "") << format_double(est.jet[k]);
            out << '\n';
        }
        out << "loglog_slope=" << format_double(est.slope) << '\n';
        if (!est.note.empty()) out << "note=" << est.note << '\n';
        out << "decay_probe=t,kappa,kappa/t^" << kDefaultJetOrder << '\n';
        for (const auto& row : est.decay) {
            out << format_double(row.t) << ',' << format_double(row.value) << ',' << format_double(row.ratio) << '\n';
        }
        out << "verdict=" << to_string(v.verdict) << '\n';
        out << "comparability_box=xi[" << format_double(comp.box.xi_lo) << "," << format_double(comp.box.xi_hi)
            << "] zeta[" << format_double(comp.box.zeta_lo) << "," << format_double(comp.box.zeta_hi) << "]\n";
        print_span(out, "comparability_", comp.full);
        print_span(out, "comparability_near_origin_", comp.near_origin);
        return v.verdict == Verdict::Indeterminate ? 4 : 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

int run_verify(const std::string& config_path, const std::string& solution_path, std::ostream& out,
               std::ostream& err) {
    const auto c = config_or_report(config_path, err);
    if (!c) return 1;
    std::ifstream in(solution_path, std::ios::binary);
    if (!in) {
        err << "error: cannot read " << solution_path << '\n';
        return 1;
    }
    std::optional<VerifyReport> rep;
    try {
        const Solution sol = read_csv(in, c->problem);
        rep = verify_solution(sol);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        err << "verification failed: " << e.what() << '\n';
        return 3;
    }

    print_problem(out, *c);
    out << "residual_max=" << format_double(rep->residual_max) << '\n'
        << "convex_ok=" << flag(rep->convex_ok) << '\n'
        << "c1_at_origin_ok=" << flag(rep->c1_at_origin_ok) << '\n'
        << "radial_derivative_continuous=" << flag(rep->radial_derivative_continuous) << '\n';
    if (!rep->detail.empty()) out << "detail=" << rep->detail << '\n';
    out << "annuli=r1,r2,measure_lhs,integral_rhs,abs_diff\n";
    for (const auto& a : rep->annuli_checked) {
        out << format_double(a.r1) << ',' << format_double(a.r2) << ',' << format_double(a.measure_lhs) << ','
            << format_double(a.integral_rhs) << ',' << format_double(a.abs_diff) << '\n';
    }
    out << "residual_table=r,det,k,abs_diff\n";
    for (const auto& row : rep->residual_table) {
        out << format_double(row.r) << ',' << format_double(row.det) << ',' << format_double(row.k) << ','
            << format_double(row.abs_diff) << '\n';
    }
    const bool ok = rep->residual_max <= c->residual_tol && rep->convex_ok && rep->c1_at_origin_ok &&
                    rep->radial_derivative_continuous;
    if (!ok) {
        err << "verification failed\n";
        return 3;
    }
    return 0;
}

int run_demo_homogeneous(int n, int m, std::ostream& out, std::ostream& err) {
    try {
        const HomogeneousFit fit = fit_homogeneous(n, m);
        out << "n=" << n << '\n'
            << "m=" << m << '\n'
            << "f=(2*t)^" << m << '\n'
            << "fitted_coefficient=" << format_double(fit.coefficient) << '\n'
            << "fitted_exponent=" << format_double(fit.exponent) << '\n'
            << "oracle_coefficient=" << format_double(fit.oracle_coefficient) << '\n'
            << "oracle_exponent=" << format_double(fit.oracle_exponent) << '\n'
            << "max_rel_error=" << format_double(fit.max_rel_error) << '\n'
            << "verdict=" << to_string(fit.verdict) << '\n';
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace ma_radial
