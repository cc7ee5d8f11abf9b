#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>

#include "ma_radial/error.hpp"
#include "ma_radial/expr.hpp"
#include "ma_radial/grid.hpp"

namespace ma_radial {

/// 8-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendre8 {
    static constexpr std::array<double, 8> x = {
        -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
        0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
    static constexpr std::array<double, 8> w = {
        0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
        0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};
};

struct QuadraturePoint {
    double x;
    double w;
};

/// Composite GL8 rule on [0, 1] with panels halving toward both endpoints
/// (2 * levels panels). Integrates y^a (1-y)^b accurately for a, b > -1.
std::span<const QuadraturePoint> graded_unit_rule();

/// Same layout with a custom depth; `levels` >= 1.
std::vector<QuadraturePoint> make_graded_unit_rule(int levels);

/// T_beta h(s) = (1/beta) * integral_0^1 h(s y^{1/beta}) dy for any callable.
/// At s = 0 returns h(0)/beta.
template <class F>
double t_beta_with(F&& h, double beta, double s) {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw ParameterError("beta must be positive");
    if (!(s >= 0.0) || !std::isfinite(s)) throw ParameterError("s must be nonnegative");
    if (s == 0.0) return h(0.0) / beta;
    const double inv_beta = 1.0 / beta;
    double sum = 0.0;
    for (const auto& q : graded_unit_rule()) {
        sum += q.w * h(s * std::pow(q.x, inv_beta));
    }
    return sum * inv_beta;
}

/// T_beta on interpolated samples; s must lie in the grid span.
double t_beta(const SampledFunction& h, double beta, double s);

/// T_beta on t -> e(t, xi, zeta); t = 0 is evaluated as a right limit.
double t_beta(const UnivariateExpr& h, double beta, double s);

/// d^k/ds^k T_beta h(s), computed as T_{beta+k} h^{(k)}(s) with h^{(k)} from
/// Taylor jets. Throws DomainError when h is not C^k at a quadrature point.
double t_beta_derivative(const UnivariateExpr& h, double beta, int k, double s);

/// integral_a^b s^p h(s) ds by one GL8 panel. When a == 0 the substitution
/// s = b sigma^2 removes the endpoint singularity of s^p.
template <class F>
double weighted_cell_integral(F&& h, double p, double a, double b) {
    using R = GaussLegendre8;
    double sum = 0.0;
    if (a == 0.0) {
        // s = b sigma^2, ds = 2 b sigma dsigma, sigma in [0, 1]
        for (std::size_t j = 0; j < 8; ++j) {
            const double sigma = 0.5 * (R::x[j] + 1.0);
            const double s = b * sigma * sigma;
            const double weight = p == 0.0 ? sigma : std::pow(sigma, 2.0 * p + 1.0);
            sum += R::w[j] * weight * h(s);
        }
        return sum * (p == 0.0 ? b : std::pow(b, p + 1.0));  // 2 * (1/2) from the panel map
    }
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t j = 0; j < 8; ++j) {
        const double s = mid + half * R::x[j];
        sum += R::w[j] * (p == 0.0 ? 1.0 : std::pow(s, p)) * h(s);
    }
    return sum * half;
}

/// integral_0^t s^p h(s) ds cell by cell over `grid`, splitting the last cell at t.
template <class F>
double cumulative_with(const Grid& grid, F&& h, double p, double t) {
    if (!(p > -1.0)) throw ParameterError("weight exponent must exceed -1");
    if (!(t >= 0.0 && t <= grid.t_max())) throw ParameterError("t outside the grid span");
    if (t == 0.0) return 0.0;
    const std::size_t last = grid.cell_of(t);
    double sum = 0.0;
    for (std::size_t i = 0; i < last; ++i) sum += weighted_cell_integral(h, p, grid[i], grid[i + 1]);
    if (t > grid[last]) sum += weighted_cell_integral(h, p, grid[last], t);
    return sum;
}

/// integral_0^t s^p h(s) ds of the interpolant of h.
double cumulative(const SampledFunction& h, double weight_exponent, double t);

}  // namespace ma_radial
