#pragma once

#include <cstddef>
#include <vector>

#include "ma_radial/grid.hpp"
#include "ma_radial/kernels.hpp"
#include "ma_radial/problem.hpp"

namespace ma_radial {

/// Radial profile u(x) = g(|x|^2 / 2) with its derivatives on the grid.
///
/// Internally phi is carried as w(t) q(t): w = kappa (exact expression) when
/// kappa > 0 wherever phi > 0, else w = 1; q is interpolated. This keeps
/// flat right hand sides accurate at nodes where kappa spans hundreds of
/// orders of magnitude.
struct Solution {
    Problem problem;
    GridPtr grid;
    double C_u = 0.0;
    SampledFunction g, g1, g2, g3;  ///< g2, g3 are NaN at t = 0
    SampledFunction phi;
    SampledFunction kappa_vals;
    int iterations = 0;
    double final_update = 0.0;
    double residual_max = 0.0;
    std::size_t flat_nodes = 0;  ///< nodes with vanishing cumulative integral (g1 = 0)

    bool kappa_carrier = false;
    SampledFunction q;

    /// phi between nodes through the carrier representation.
    double phi_at(double t) const;
};

/// ((n/2) t^{-n/2} integral_0^t s^{n/2-1} phi(s) ds)^{1/n}; phi(0)^{1/n} at t = 0,
/// 0 when the integral vanishes. Throws NegativeRhsError on a negative sample.
double g_prime_from_phi(const SampledFunction& phi, int n, double t);

/// Same formula applied to the solution's own phi representation (kappa
/// carrier times interpolated q), which stays accurate for flat kappa.
double g_prime_from_phi(const Solution& sol, double t);

/// Closed-form integration for f independent of (xi, zeta).
Solution solve_explicit(const Problem& p, Execution exec = Execution::Parallel);

/// Damped fixed-point iteration on phi(t) = f(t, g(t), t g'(t)^2).
Solution picard_solve(const Problem& p, Execution exec = Execution::Parallel);

/// Explicit when f does not depend on (xi, zeta), Picard otherwise.
Solution solve(const Problem& p, Execution exec = Execution::Parallel);

/// True when f is independent of xi and zeta (syntactically, or by probing
/// partial derivatives at sample points).
bool is_explicit(const Problem& p);

/// g''(t) for t > 0 from phi and T_{n/2} phi. Returns 0 in a flat zone where
/// phi vanishes below t.
double g_second(const Solution& sol, double t);

/// g'''(t) for t > 0, with phi' from the chain rule
/// f_t + f_xi g' + f_zeta (g'^2 + 2 t g' g'').
double g_third(const Solution& sol, double t);

/// Rebuilds a Solution from node arrays (as read back from CSV). g2 and g3
/// are taken as given; the carrier representation is reconstructed.
Solution solution_from_arrays(const Problem& p, GridPtr grid, std::vector<double> g, std::vector<double> g1,
                              std::vector<double> g2, std::vector<double> g3, std::vector<double> phi,
                              std::vector<double> kappa_vals);

}  // namespace ma_radial
