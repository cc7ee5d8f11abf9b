// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: ma-radial-acceptance <path to ma-radial> [scratch dir]

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "ma_radial/cli.hpp"
#include "ma_radial/quadrature.hpp"

using namespace ma_radial;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
    std::printf("criterion %2d %s  %s: %s\n", id, ok ? "PASS" : "FAIL", what.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

struct Solved {
    CatalogProblem entry;
    Solution sol;
    VerifyReport rep;
};

std::vector<Solved> solve_catalog() {
    std::vector<Solved> out;
    for (auto& c : problem_catalog()) {
        Solution s = solve(c.problem);
        VerifyReport r = verify_solution(s, 5, 2024);
        out.push_back({c, std::move(s), std::move(r)});
    }
    return out;
}

// u = c r^p: u'' (u'/r)^{n-1} evaluated directly
double homogeneous_det(int n, double c, double p, double r) {
    const double up = c * p * std::pow(r, p - 1), upp = c * p * (p - 1) * std::pow(r, p - 2);
    return upp * std::pow(up / r, n - 1);
}

void criterion1() {
    double worst_rel = 0, worst_exp = 0, worst_oracle = 0;
    for (const auto& e : homogeneous_catalog()) {
        const HomogeneousFit fit = fit_homogeneous(e.n, e.m);
        worst_rel = std::max(worst_rel, fit.max_rel_error);
        worst_exp = std::max(worst_exp, std::abs(fit.exponent - e.exponent));
        for (double r : {0.05, 0.3, 0.7, 1.0}) {
            const double det = homogeneous_det(e.n, fit.oracle_coefficient, e.exponent, r);
            worst_oracle = std::max(worst_oracle, std::abs(det - std::pow(r, 2 * e.m)) / std::pow(r, 2 * e.m));
        }
    }
    report(1, worst_rel <= 1e-7 && worst_exp <= 1e-6 && worst_oracle <= 1e-12, "homogeneous family",
           "max rel err " + sci(worst_rel) + " (<= 1e-7), max exponent err " + sci(worst_exp) +
               " (<= 1e-6), oracle det err " + sci(worst_oracle));
}

// tight Picard tolerance so the stopping error does not mask the discretisation error
double residual_at(Problem p, int nodes) {
    p.grid.nodes = nodes;
    p.solver.tol = 1e-15;
    return solve(p).residual_max;
}

void criterion2(const std::vector<Solved>& cat) {
    double worst = 0;
    std::string worst_name;
    for (const auto& s : cat) {
        if (s.rep.residual_max > worst) {
            worst = s.rep.residual_max;
            worst_name = s.entry.name;
        }
    }
    // at the default 1024 nodes the smooth problems already sit near rounding level
    double min_ratio = INFINITY, min_ratio_hi = INFINITY;
    for (const auto& s : cat) {
        if (!s.entry.smooth_positive) continue;
        const double r128 = residual_at(s.entry.problem, 128), r256 = residual_at(s.entry.problem, 256);
        const double r512 = residual_at(s.entry.problem, 512);
        min_ratio = std::min({min_ratio, r128 / r256, r256 / r512});
        min_ratio_hi = std::min(min_ratio_hi, r512 / residual_at(s.entry.problem, 1024));
    }
    report(2, worst <= 1e-6 && min_ratio >= 4.0, "Monge-Ampere residual",
           "max residual " + sci(worst) + " (" + worst_name + ", <= 1e-6) over " + std::to_string(cat.size()) +
               " problems; min reduction per doubling 128->256->512 nodes " + sci(min_ratio) + "x (>= 4), 512->1024 " +
               sci(min_ratio_hi) + "x");
}

void criterion3() {
    const char* hs[] = {"1 + 2*t - t^2 + t^3/3 + t^4", "t^2", "t^4 - t", "exp(t)", "sin(t)"};
    double worst = 0;
    for (const char* src : hs) {
        const UnivariateExpr h(Expr::parse(src));
        for (double beta : {1.0, 1.5, 2.0}) {
            for (double s : {0.1, 0.25, 0.4}) {
                // Richardson-extrapolated central differences, steps 1e-3 and 5e-4
                auto diffs = [&](double e) {
                    const double fp = t_beta(h, beta, s + e), f0 = t_beta(h, beta, s), fm = t_beta(h, beta, s - e);
                    return std::pair{(fp - fm) / (2 * e), (fp - 2 * f0 + fm) / (e * e)};
                };
                const auto [c1, c2] = diffs(1e-3);
                const auto [f1, f2] = diffs(5e-4);
                const double d1 = (4 * f1 - c1) / 3, d2 = (4 * f2 - c2) / 3;
                const double a1 = t_beta_derivative(h, beta, 1, s), a2 = t_beta_derivative(h, beta, 2, s);
                worst = std::max({worst, std::abs(d1 - a1) / std::abs(a1), std::abs(d2 - a2) / std::abs(a2)});
            }
        }
    }
    report(3, worst <= 1e-6, "operator derivative identity", "max rel diff vs central differences " + sci(worst));
}

void criterion4() {
    double worst = 0;
    int max_iter = 0;
    for (const char* src : {"1", "(2*t)^3", "exp(-1/t)", "1 + t", "2 + sin(5*t)"}) {
        const Problem p = Problem::make(2, src, 0.2);
        const Solution a = picard_solve(p), b = solve_explicit(p);
        max_iter = std::max(max_iter, a.iterations);
        for (std::size_t i = 0; i < a.grid->size(); ++i) worst = std::max(worst, std::abs(a.g[i] - b.g[i]));
    }
    report(4, max_iter == 1 && worst <= 1e-12, "fixed-point consistency",
           "iterations " + std::to_string(max_iter) + " (== 1), sup |g_picard - g_explicit| " + sci(worst));
}

void criterion5() {
    Problem p = Problem::make(2, "(2*t)^2*exp(xi)", 0.0);
    p.solver.tol = 1e-10;
    const Solution a = picard_solve(p);
    p.grid.nodes *= 2;
    const Solution b = picard_solve(p);
    double diff = 0;
    for (std::size_t i = 0; i < a.grid->size(); ++i) diff = std::max(diff, std::abs(a.g[i] - b.g((*a.grid)[i])));
    for (std::size_t i = 0; i < b.grid->size(); ++i) diff = std::max(diff, std::abs(b.g[i] - a.g((*b.grid)[i])));
    const bool ok = a.iterations <= 60 && a.residual_max <= 1e-6 && diff <= 1e-7;
    report(5, ok, "Picard convergence",
           std::to_string(a.iterations) + " iterations (<= 60), residual " + sci(a.residual_max) +
               ", sup |g_1024 - g_2048| " + sci(diff) + " (<= 1e-7)");
}

void criterion6() {
    int correct = 0, total = 0;
    for (int n : {2, 3}) {
        for (int tau = 0; tau <= 7; ++tau) {
            const Order o = tau == 7 ? Order::infinite() : Order::finite(tau);
            const bool smooth = tau == 7 || tau % n == 0;
            const Verdict expect = smooth ? Verdict::Smooth : Verdict::NonSmoothAtOrigin;
            correct += smoothness_verdict(o, n).verdict == expect;
            ++total;
        }
    }
    report(6, correct == 16 && total == 16, "verdict table", std::to_string(correct) + "/" + std::to_string(total));
}

void criterion7() {
    const int pairs[][2] = {{1, 2}, {1, 3}, {2, 3}};
    double worst_change = 0;
    bool finite = true, hyp = true;
    for (const char* src : {"exp(-1/t)", "exp(-1/t^2)"}) {
        const UnivariateExpr F(Expr::parse(src));
        for (const auto& lk : pairs) {
            const auto a = hadamard_check(F, lk[0], lk[1], default_x_grid(1));
            const auto b = hadamard_check(F, lk[0], lk[1], default_x_grid(4));
            finite = finite && std::isfinite(a.observed_constant) && a.observed_constant > 0;
            hyp = hyp && a.hypothesis_ok;
            worst_change = std::max(worst_change, std::abs(b.observed_constant - a.observed_constant) / a.observed_constant);
        }
    }
    const auto cube = hadamard_check(UnivariateExpr(Expr::parse("t^3")), 1, 2, default_x_grid());
    report(7, finite && hyp && worst_change <= 0.05 && !cube.hypothesis_ok, "Hadamard inequality",
           std::string("constants finite: ") + (finite ? "yes" : "no") + ", max change under 4x refinement " +
               sci(100 * worst_change) + "% (<= 5%), t^3 hypothesis rejected: " + (cube.hypothesis_ok ? "no" : "yes"));
}

void criterion8() {
    int flat = 0, total = 0;
    for (const char* src : {"exp(-1/t)", "exp(-1/t)*exp(xi)"}) {
        const Solution s = solve(Problem::make(2, src, 0.0));
        flat += flatness_probe([&](double t) { return g_second(s, t); }, {1, 2, 3, 4, 5}).flat;
        flat += flatness_probe([&](double t) { return g_third(s, t); }, {1, 2, 3, 4, 5}).flat;
        total += 2;
    }
    report(8, flat == total, "flatness of g'' and g'''", std::to_string(flat) + "/" + std::to_string(total) + " probes flat");
}

void criterion9(const std::vector<Solved>& cat) {
    const Solution q = solve(Problem::make(2, "1", 0.5));
    double exact = 0;
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (int k = 0; k < 20; ++k) {
        double a = u(rng), b = u(rng);
        if (a > b) std::swap(a, b);
        const auto [l, r] = gradient_image_measure(q, a, b);
        const double area = std::numbers::pi * (b * b - a * a);
        exact = std::max({exact, std::abs(l - r), std::abs(l - area)});
    }
    double annuli = 0;
    std::size_t count = 0;
    double additivity = 0;
    for (const auto& s : cat) {
        for (const auto& a : s.rep.annuli_checked) annuli = std::max(annuli, a.abs_diff);
        count += s.rep.annuli_checked.size();
        const double r1 = 0.1, r2 = 0.45, r3 = 0.9;
        const double whole = gradient_image_measure(s.sol, r1, r3).first;
        const double parts = gradient_image_measure(s.sol, r1, r2).first + gradient_image_measure(s.sol, r2, r3).first;
        additivity = std::max(additivity, std::abs(whole - parts));
    }
    report(9, exact <= 1e-8 && annuli <= 1e-6 && additivity <= 1e-12, "gradient image measure",
           "exact case " + sci(exact) + " (<= 1e-8), " + std::to_string(count) + " random annuli max diff " +
               sci(annuli) + " (<= 1e-6), additivity " + sci(additivity) + " (<= 1e-12)");
}

void criterion10(const std::vector<Solved>& cat) {
    int ok = 0;
    for (const auto& s : cat) ok += s.rep.convex_ok && s.rep.c1_at_origin_ok;
    const Solution& base = cat.front().sol;
    auto neg = [&](const SampledFunction& f) {
        std::vector<double> v(f.values().begin(), f.values().end());
        for (double& x : v) x = -x;
        return v;
    };
    const Solution flipped = solution_from_arrays(
        base.problem, base.grid, neg(base.g), neg(base.g1), neg(base.g2), neg(base.g3),
        std::vector<double>(base.phi.values().begin(), base.phi.values().end()),
        std::vector<double>(base.kappa_vals.values().begin(), base.kappa_vals.values().end()));
    const bool control = !convexity_and_c1(flipped).convex_ok;
    report(10, ok == static_cast<int>(cat.size()) && control, "convexity and C1 at the origin",
           std::to_string(ok) + "/" + std::to_string(cat.size()) + " solved problems convex and C1, negated profile " +
               (control ? "rejected" : "accepted"));
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion11(const std::string& cli, const fs::path& dir) {
    fs::create_directories(dir);
    const struct {
        const char* name;
        const char* text;
    } configs[] = {{"coupled", "n=2\nf=(2*t)^2*exp(xi)\nboundary_value=0\n"},
                   {"flat", "n=3\nf=exp(-1/t)*exp(xi)\nboundary_value=0\n"}};
    bool same = true;
    int runs = 0;
    for (const auto& c : configs) {
        const fs::path cfg = dir / (std::string(c.name) + ".cfg");
        std::ofstream(cfg) << c.text;
        std::string first;
        for (const char* threads : {"1", "4", "1", "4"}) {
            const fs::path out = dir / (std::string(c.name) + "_" + threads + "_" + std::to_string(runs) + ".csv");
            const std::string cmd = "MA_RADIAL_THREADS=" + std::string(threads) + " \"" + cli + "\" solve --config \"" +
                                    cfg.string() + "\" --out \"" + out.string() + "\" > /dev/null";
            const int rc = std::system(cmd.c_str());
            ++runs;
            const std::string text = slurp(out);
            if (rc != 0 || text.empty()) same = false;
            if (first.empty()) first = text;
            else if (text != first) same = false;
        }
    }
    report(11, same, "determinism", std::to_string(runs) + " CLI runs with MA_RADIAL_THREADS in {1, 4}: " +
                                        (same ? "bitwise identical" : "outputs differ"));
}

template <class F>
void guarded(int id, F&& body) {
    try {
        body();
    } catch (const std::exception& e) {
        report(id, false, "criterion raised", e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: ma-radial-acceptance <ma-radial executable> [scratch dir]\n";
        return 2;
    }
    const std::string cli = argv[1];
    const fs::path dir = argc > 2 ? fs::path(argv[2]) : fs::temp_directory_path() / "ma_radial_acceptance";

    std::vector<Solved> cat;
    try {
        cat = solve_catalog();
    } catch (const std::exception& e) {
        std::cerr << "catalog solve failed: " << e.what() << '\n';
    }
    guarded(1, criterion1);
    guarded(2, [&] { criterion2(cat); });
    guarded(3, criterion3);
    guarded(4, criterion4);
    guarded(5, criterion5);
    guarded(6, criterion6);
    guarded(7, criterion7);
    guarded(8, criterion8);
    guarded(9, [&] { criterion9(cat); });
    guarded(10, [&] { criterion10(cat); });
    guarded(11, [&] { criterion11(cli, dir); });
    std::printf("%d of 11 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
