#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ma_radial/expr.hpp"
#include "ma_radial/grid.hpp"

namespace ma_radial {

struct SolverParams {
    double tol = 1e-10;
    int max_iter = 200;
    double damping = 1.0;
};

struct GridParams {
    int nodes = 1024;
    double grading = 1.05;
};

/// Radial Dirichlet problem det D^2 u = f(|x|^2/2, u, |grad u|^2 / 2) in the
/// ball of radius sqrt(2 t_max), u = boundary_value on its boundary.
/// In the profile variables u(x) = g(t): xi = g(t), zeta = t g'(t)^2.
struct Problem {
    int n = 2;
    Expr f = Expr::parse("1");
    double boundary_value = 0.0;
    double t_max = 0.5;
    SolverParams solver;
    GridParams grid;

    static Problem make(int n, std::string_view f, double boundary_value, double t_max = 0.5);

    /// Throws ParameterError when an invariant is violated.
    void validate() const;
};

GridPtr make_grid(const Problem& p);

/// kappa(t) = f(t, 0, 0).
UnivariateExpr kappa(const Problem& p);

/// f(t, xi, zeta) with t = 0 replaced by the right limit when f is singular there.
double eval_rhs(const Expr& f, double t, double xi, double zeta);

struct Box {
    double xi_lo = -0.1, xi_hi = 0.1;
    double zeta_lo = 0.0, zeta_hi = 0.1;
};

/// |xi| <= 0.1 max(1, |boundary_value|), zeta in [0, 0.1 (1 + zeta_scale)];
/// zeta_scale is the largest t g'(t)^2 of a known solution, 0 otherwise.
Box default_box(const Problem& p, double zeta_scale = 0.0);

struct SamplePoint {
    double t = 0.0, xi = 0.0, zeta = 0.0;
    double value = 0.0;  ///< f / kappa, or f itself when it is the offending value
};

struct ComparabilitySpan {
    double t_lo = 0.0, t_hi = 0.0;
    double c_lower = 0.0;
    double C_upper = 0.0;
    bool holds = false;
    SamplePoint witness_lower;  ///< where c_lower is attained
    SamplePoint witness_upper;  ///< where C_upper is attained
    std::string failure;        ///< empty when holds
    SamplePoint failure_point;
};

/// Sampled certificate of c f(t,0,0) <= f(t,xi,zeta) <= C f(t,0,0) on a box.
/// `full` covers t from the smallest positive grid node to t_max,
/// `near_origin` only t <= 0.05 (when the span reaches that low).
struct ComparabilityReport {
    Box box;
    int samples_per_axis = 33;
    ComparabilitySpan full;
    ComparabilitySpan near_origin;

    double c_lower() const { return full.c_lower; }
    double C_upper() const { return full.C_upper; }
    bool holds() const { return full.holds; }
};

/// Throws NegativeRhsError if kappa is negative at a sampled t.
ComparabilityReport check_comparability(const Problem& p, const Box& box, int samples_per_axis = 33);

/// f(s, xi, zeta) = s^ell psi(s, xi, zeta).
class TaylorFactorization {
public:
    TaylorFactorization(Expr f, int ell, double s_min);

    int ell() const noexcept { return ell_; }
    double s_min() const noexcept { return s_min_; }

    /// f / s^ell for s > s_min, otherwise the jet series about s = 0.
    double psi(double s, double xi, double zeta) const;
    /// f^{(ell)}(0, xi, zeta) / ell!
    double psi_at_zero(double xi, double zeta) const;

    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

private:
    friend TaylorFactorization taylor_factor(const Problem&, int);

    Expr f_;
    int ell_;
    double s_min_;
    std::vector<std::string> warnings_;
};

/// Checks the lower jet coefficients vanish at sampled (xi, zeta) (else
/// ParameterError "order overshoot") and warns when psi_at_zero(0, 0) <= 0.
TaylorFactorization taylor_factor(const Problem& p, int ell);

}  // namespace ma_radial
