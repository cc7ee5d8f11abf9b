#include "ma_radial/solver.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>

#include "ma_radial/error.hpp"
#include "ma_radial/quadrature.hpp"
#include "ma_radial/verify.hpp"

namespace ma_radial {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// phi(t) = w(t) q(t) with w = kappa or 1.
struct PhiRep {
    const Expr* f;
    bool carrier;
    bool unit_q;
    const SampledFunction* q;
    double w0;  // carrier value at t = 0 (right limit)

    double weight(double t) const { return !carrier ? 1.0 : t == 0.0 ? w0 : (*f)(t, 0.0, 0.0); }
    double operator()(double t) const {
        const double w = weight(t);
        return unit_q ? w : w * (*q)(t);
    }
};

PhiRep rep_of(const Solution& s) {
    const auto q = s.q.values();
    const bool unit = std::all_of(q.begin(), q.end(), [](double v) { return v == 1.0; });
    return {&s.problem.f, s.kappa_carrier, unit, &s.q, s.kappa_vals[0]};
}

bool carrier_admissible(const std::vector<double>& kappa, const std::vector<double>& phi) {
    for (std::size_t i = 0; i < kappa.size(); ++i) {
        if (!(kappa[i] >= 0.0)) return false;
        if (kappa[i] == 0.0 && phi[i] != 0.0) return false;
    }
    return true;
}

// q where w > 0; elsewhere the nearest such value to the right (or left).
std::vector<double> fill_q(std::vector<double> q, const std::vector<double>& w) {
    const std::size_t N = q.size();
    double next = kNaN;
    for (std::size_t i = N; i-- > 0;) {
        if (w[i] > 0.0) next = q[i];
        else q[i] = next;
    }
    double prev = 1.0;
    for (std::size_t i = 0; i < N; ++i) {
        if (std::isnan(q[i])) q[i] = prev;
        else prev = q[i];
    }
    return q;
}

struct Sums {
    double A;      // (n/2) T_{n/2} phi(t)
    double delta;  // phi(t) - A
    double phi_t;
};

// One pass over the graded rule; (n/2) T_{n/2} = sum w_j phi(t y_j^{2/n}).
Sums phi_sums(const PhiRep& phi, int n, double t) {
    const double inv_beta = 2.0 / n;
    const double phi_t = phi(t);
    double A = 0.0, D = 0.0;
    for (const auto& q : graded_unit_rule()) {
        const double v = phi(t * std::pow(q.x, inv_beta));
        A += q.w * v;
        D += q.w * (v - phi_t);
    }
    return {A, -D, phi_t};
}

bool flat_below(const Solution& s, double t, double phi_t) {
    if (!(std::abs(phi_t) < DBL_MIN)) return false;
    const Grid& g = *s.grid;
    for (std::size_t i = 0; i < g.size() && g[i] <= t; ++i) {
        if (!(std::abs(s.phi[i]) < DBL_MIN)) return false;
    }
    return true;
}

void check_t(const Solution& s, double t, const char* what) {
    if (t == 0.0) {
        throw ParameterError(std::string(what) + " at t = 0 is only defined as a limit; use the regularity probe");
    }
    if (!(t > 0.0 && t <= s.grid->t_max())) throw ParameterError(std::string(what) + ": t outside (0, t_max]");
}

double phi_prime(const Solution& s, double x) {
    const double g1 = s.g1(x);
    const Partials P = s.problem.f.partials(x, s.g(x), x * g1 * g1);
    double d = P.f_t + P.f_xi * g1;
    if (P.f_zeta != 0.0) d += P.f_zeta * (g1 * g1 + 2.0 * x * g1 * s.g2(x));
    return d;
}

SampledFunction nan_at_origin(const GridPtr& grid, std::vector<double> v) {
    v[0] = kNaN;
    return SampledFunction(grid, std::move(v));
}

Solution finish(const Problem& p, const GridPtr& grid, std::vector<double> kappa_vals, bool carrier,
                std::vector<double> q, const ProfilePass& prof, int iterations, double update, Execution exec) {
    const std::size_t N = grid->size();
    Solution s;
    s.problem = p;
    s.grid = grid;
    s.C_u = p.boundary_value - prof.G.back();
    std::vector<double> g(N), phi(N);
    for (std::size_t i = 0; i < N; ++i) {
        g[i] = s.C_u + prof.G[i];
        phi[i] = (carrier ? kappa_vals[i] : 1.0) * q[i];
    }
    s.g = SampledFunction(grid, std::move(g));
    s.g1 = SampledFunction(grid, prof.g1);
    s.phi = SampledFunction(grid, std::move(phi));
    s.kappa_vals = SampledFunction(grid, std::move(kappa_vals));
    s.kappa_carrier = carrier;
    s.q = SampledFunction(grid, std::move(q));
    s.iterations = iterations;
    s.final_update = update;
    for (std::size_t i = 1; i < N; ++i) s.flat_nodes += prof.I[i] > 0.0 ? 0 : 1;

    std::vector<double> v(N);
    auto fill = [&](double (*fn)(const Solution&, double), const char* what) {
        for_each_index(N - 1, exec, [&](std::size_t k) {
            const double t = (*grid)[k + 1];
            v[k + 1] = fn(s, t);
            if (!std::isfinite(v[k + 1])) {
                throw NumericError(std::string("non-finite ") + what + " at t = " + std::to_string(t), iterations);
            }
        });
        return nan_at_origin(grid, v);
    };
    s.g2 = fill(g_second, "g''");
    s.g3 = fill(g_third, "g'''");
    s.residual_max = ma_residual(s).residual_max;
    return s;
}

std::vector<double> kappa_at_nodes(const Problem& p, const Grid& grid, Execution exec) {
    std::vector<double> k(grid.size());
    for_each_index(grid.size(), exec, [&](std::size_t i) {
        const double v = eval_rhs(p.f, grid[i], 0.0, 0.0);
        if (!std::isfinite(v)) throw NumericError("non-finite kappa at t = " + std::to_string(grid[i]), 0);
        k[i] = v;
    });
    return k;
}

ProfilePass run_profile(const Problem& p, const Grid& grid, const std::vector<double>& kappa, bool carrier,
                        const SampledFunction& q, Execution exec) {
    const auto qv = q.values();
    const bool unit = std::all_of(qv.begin(), qv.end(), [](double v) { return v == 1.0; });
    const PhiRep rep{&p.f, carrier, unit, &q, kappa[0]};
    return profile_pass(grid, p.n, rep, (carrier ? kappa[0] : 1.0) * q[0], exec);
}

}  // namespace

double Solution::phi_at(double t) const { return rep_of(*this)(t); }

double g_prime_from_phi(const SampledFunction& phi, int n, double t) {
    if (n < 1) throw ParameterError("dimension n must be at least 1");
    const Grid& grid = phi.grid();
    for (std::size_t i = 0; i < phi.size(); ++i) {
        if (phi[i] < 0.0) throw NegativeRhsError(grid[i], kNaN, kNaN, phi[i]);
    }
    if (t == 0.0) return nth_root(phi[0], n);
    return g_prime_from_integral(cumulative(phi, 0.5 * n - 1.0, t), t, n);
}

double g_prime_from_phi(const Solution& sol, double t) {
    const int n = sol.problem.n;
    if (t == 0.0) return nth_root(sol.phi[0], n);
    const PhiRep rep = rep_of(sol);
    return g_prime_from_integral(cumulative_with(*sol.grid, rep, 0.5 * n - 1.0, t), t, n);
}

bool is_explicit(const Problem& p) {
    if (!p.f.depends_on(Variable::Xi) && !p.f.depends_on(Variable::Zeta)) return true;
    try {
        for (double t : {0.25 * p.t_max, 0.5 * p.t_max, p.t_max}) {
            for (double xi : {-1.0, 0.0, 0.5, 2.0}) {
                for (double zeta : {0.0, 0.3, 1.0}) {
                    const Partials P = p.f.partials(t, xi, zeta);
                    if (P.f_xi != 0.0 || P.f_zeta != 0.0) return false;
                }
            }
        }
    } catch (const DomainError&) {
        return false;
    }
    return true;
}

Solution solve_explicit(const Problem& p, Execution exec) {
    p.validate();
    if (!is_explicit(p)) throw ParameterError("f depends on xi or zeta: not explicit; use picard_solve");
    const GridPtr grid = make_grid(p);
    std::vector<double> kappa = kappa_at_nodes(p, *grid, exec);
    for (std::size_t i = 0; i < kappa.size(); ++i) {
        if (kappa[i] < 0.0) throw NegativeRhsError((*grid)[i], 0.0, 0.0, kappa[i]);
    }
    std::vector<double> q(grid->size(), 1.0);
    const SampledFunction qf(grid, q);
    const ProfilePass prof = run_profile(p, *grid, kappa, true, qf, exec);
    return finish(p, grid, std::move(kappa), true, std::move(q), prof, 0, 0.0, exec);
}

Solution picard_solve(const Problem& p, Execution exec) {
    p.validate();
    const GridPtr grid = make_grid(p);
    const Grid& G = *grid;
    const std::size_t N = G.size();
    std::vector<double> kappa = kappa_at_nodes(p, G, exec);

    std::vector<double> phi(N);
    for_each_index(N, exec, [&](std::size_t i) {
        const double v = eval_rhs(p.f, G[i], p.boundary_value, 0.0);
        if (!std::isfinite(v)) throw NumericError("non-finite right hand side at t = " + std::to_string(G[i]), 0);
        if (v < 0.0) throw NegativeRhsError(G[i], p.boundary_value, 0.0, v);
        phi[i] = v;
    });

    bool carrier = carrier_admissible(kappa, phi);
    std::vector<double> w(N, 1.0);
    if (carrier) w = kappa;
    std::vector<double> q(N);
    for (std::size_t i = 0; i < N; ++i) q[i] = w[i] > 0.0 ? phi[i] / w[i] : kNaN;
    q = fill_q(std::move(q), w);

    double lambda = p.solver.damping;
    double prev_residual = std::numeric_limits<double>::infinity();
    double change = std::numeric_limits<double>::infinity();
    std::vector<double> F(N);
    for (int k = 1; k <= p.solver.max_iter; ++k) {
        const SampledFunction qf(grid, q);
        const ProfilePass prof = run_profile(p, G, kappa, carrier, qf, exec);
        const double C_u = p.boundary_value - prof.G.back();
        if (!std::isfinite(C_u)) throw NumericError("profile integral overflow", k);

        for_each_index(N, exec, [&](std::size_t i) {
            const double xi = C_u + prof.G[i];
            const double zeta = G[i] * prof.g1[i] * prof.g1[i];
            const double v = eval_rhs(p.f, G[i], xi, zeta);
            if (!std::isfinite(v)) {
                throw NumericError("non-finite right hand side at t = " + std::to_string(G[i]), k);
            }
            if (v < 0.0) throw NegativeRhsError(G[i], xi, zeta, v);
            F[i] = v;
        });

        double residual = 0.0, sup_phi = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double cur = w[i] * q[i];
            residual = std::max(residual, std::abs(F[i] - cur));
            sup_phi = std::max(sup_phi, cur);
        }
        change = lambda * residual;
        if (!std::isfinite(change)) throw NumericError("update norm overflow", k);
        if (change <= p.solver.tol * (1.0 + sup_phi)) {
            return finish(p, grid, std::move(kappa), carrier, std::move(q), prof, k, change, exec);
        }
        if (residual > prev_residual && lambda > 1.0 / 16) {
            lambda = std::max(0.5 * lambda, 1.0 / 16);
        }
        prev_residual = residual;

        if (carrier && !carrier_admissible(kappa, F)) {
            // kappa vanishes where the iterate does not: carry phi directly
            for (std::size_t i = 0; i < N; ++i) q[i] = w[i] * q[i];
            carrier = false;
            std::fill(w.begin(), w.end(), 1.0);
        }
        for (std::size_t i = 0; i < N; ++i) {
            q[i] = w[i] > 0.0 ? (1.0 - lambda) * q[i] + lambda * (F[i] / w[i]) : kNaN;
        }
        q = fill_q(std::move(q), w);
    }
    throw ConvergenceError(p.solver.max_iter, change);
}

Solution solve(const Problem& p, Execution exec) {
    return is_explicit(p) ? solve_explicit(p, exec) : picard_solve(p, exec);
}

double g_second(const Solution& sol, double t) {
    check_t(sol, t, "g''");
    const int n = sol.problem.n;
    const Sums s = phi_sums(rep_of(sol), n, t);
    if (!std::isfinite(s.A) || !std::isfinite(s.delta)) {
        throw NumericError("overflow in T_{n/2} phi at t = " + std::to_string(t), sol.iterations);
    }
    if (!(s.A > 0.0)) {
        if (flat_below(sol, t, s.phi_t)) return 0.0;
        throw NumericError("T_{n/2} phi(t) <= 0 at t = " + std::to_string(t) + " with phi not identically 0 below t",
                           sol.iterations);
    }
    return s.delta * std::pow(s.A, 1.0 / n - 1.0) / (2.0 * t);
}

double g_third(const Solution& sol, double t) {
    check_t(sol, t, "g'''");
    const int n = sol.problem.n;
    const Sums s = phi_sums(rep_of(sol), n, t);
    if (!std::isfinite(s.A) || !std::isfinite(s.delta)) {
        throw NumericError("overflow in T_{n/2} phi at t = " + std::to_string(t), sol.iterations);
    }
    if (!(s.A > 0.0)) {
        if (flat_below(sol, t, s.phi_t)) return 0.0;
        throw NumericError("T_{n/2} phi(t) <= 0 at t = " + std::to_string(t) + " with phi not identically 0 below t",
                           sol.iterations);
    }
    // A' = (n/2) T_{n/2+1} phi'
    const double beta1 = 0.5 * n + 1.0;
    double B = 0.0;
    for (const auto& q : graded_unit_rule()) B += q.w * phi_prime(sol, t * std::pow(q.x, 1.0 / beta1));
    const double dA = 0.5 * n / beta1 * B;
    const double dphi = phi_prime(sol, t);
    // d/dt of g'' = delta A^{1/n-1} / (2t)
    const double bracket = dphi - dA + (1.0 / n - 1.0) * s.delta * dA / s.A - s.delta / t;
    return std::pow(s.A, 1.0 / n - 1.0) / (2.0 * t) * bracket;
}

Solution solution_from_arrays(const Problem& p, GridPtr grid, std::vector<double> g, std::vector<double> g1,
                              std::vector<double> g2, std::vector<double> g3, std::vector<double> phi,
                              std::vector<double> kappa_vals) {
    const std::size_t N = grid->size();
    for (const auto* v : {&g, &g1, &g2, &g3, &phi, &kappa_vals}) {
        if (v->size() != N) throw ParameterError("solution column length does not match the grid");
    }
    Solution s;
    s.problem = p;
    s.grid = grid;
    s.C_u = g[0];
    s.kappa_carrier = carrier_admissible(kappa_vals, phi);
    std::vector<double> q(N);
    for (std::size_t i = 0; i < N; ++i) {
        const double w = s.kappa_carrier ? kappa_vals[i] : 1.0;
        q[i] = w > 0.0 ? phi[i] / w : kNaN;
    }
    s.q = SampledFunction(grid, fill_q(std::move(q), s.kappa_carrier ? kappa_vals : std::vector<double>(N, 1.0)));
    s.g = SampledFunction(grid, std::move(g));
    s.g1 = SampledFunction(grid, std::move(g1));
    s.g2 = SampledFunction(grid, std::move(g2));
    s.g3 = SampledFunction(grid, std::move(g3));
    s.phi = SampledFunction(grid, std::move(phi));
    s.kappa_vals = SampledFunction(grid, std::move(kappa_vals));
    s.residual_max = ma_residual(s).residual_max;
    return s;
}

}  // namespace ma_radial
