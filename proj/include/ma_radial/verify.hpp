#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ma_radial/solver.hpp"

namespace ma_radial {

struct ResidualRow {
    double r = 0.0;
    double det = 0.0;
    double k = 0.0;
    double abs_diff = 0.0;
};

struct AnnulusCheck {
    double r1 = 0.0, r2 = 0.0;
    double measure_lhs = 0.0;
    double integral_rhs = 0.0;
    double abs_diff = 0.0;
};

struct VerifyReport {
    double residual_max = 0.0;  ///< max |det - k| / max(1, k)
    std::vector<ResidualRow> residual_table;
    std::vector<AnnulusCheck> annuli_checked;
    bool convex_ok = false;
    bool c1_at_origin_ok = false;
    bool radial_derivative_continuous = false;
    std::string detail;
};

/// Surface measure of the unit sphere in R^n (omega_2 = 2 pi, omega_3 = 4 pi).
double sphere_measure(int n);

/// (g''(t) r^2 + g'(t)) g'(t)^{n-1} at t = r^2 / 2, from the interpolated g1, g2.
double hessian_det_radial(const Solution& sol, double r);

/// 33 Chebyshev points on [0.05, 0.95] r_max, ascending; r_max = sqrt(2 t_max).
std::vector<double> default_check_radii(double t_max);

/// Residual of det D^2 u = f(t, g, t g'^2) at the given radii (fills
/// residual_max and residual_table only).
VerifyReport ma_residual(const Solution& sol, std::span<const double> r_nodes);
VerifyReport ma_residual(const Solution& sol);

/// (omega_n / n) [(g'(t2) r2)^n - (g'(t1) r1)^n] against
/// omega_n * integral_{r1}^{r2} r^{n-1} phi(r^2 / 2) dr.
std::pair<double, double> gradient_image_measure(const Solution& sol, double r1, double r2);

struct ShapeFlags {
    bool convex_ok = false;
    bool c1_at_origin_ok = false;
    bool radial_derivative_continuous = false;
    std::string detail;
};

ShapeFlags convexity_and_c1(const Solution& sol);

/// Residual on the default radii, `annuli` seeded random annuli, and shape flags.
VerifyReport verify_solution(const Solution& sol, int annuli = 5, std::uint64_t seed = 1);

}  // namespace ma_radial
