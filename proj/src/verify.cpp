#include "ma_radial/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "ma_radial/error.hpp"
#include "ma_radial/quadrature.hpp"

namespace ma_radial {

double sphere_measure(int n) {
    if (n < 1) throw ParameterError("dimension must be positive");
    return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

namespace {

double radius_to_t(const Solution& sol, double r) {
    const double t = 0.5 * r * r;
    if (!(r > 0.0) || !(t <= sol.grid->t_max())) {
        throw ParameterError("radius " + std::to_string(r) + " outside (0, sqrt(2 t_max)]");
    }
    return t;
}

}  // namespace

double hessian_det_radial(const Solution& sol, double r) {
    const double t = radius_to_t(sol, r);
    const double g1 = sol.g1(t), g2 = sol.g2(t);
    return (g2 * r * r + g1) * std::pow(g1, sol.problem.n - 1);
}

std::vector<double> default_check_radii(double t_max) {
    const double r_max = std::sqrt(2.0 * t_max);
    const double a = 0.05 * r_max, b = 0.95 * r_max;
    constexpr int count = 33;
    std::vector<double> r(count);
    for (int j = 0; j < count; ++j) {
        r[static_cast<std::size_t>(j)] =
            0.5 * (a + b) - 0.5 * (b - a) * std::cos((2 * j + 1) * std::numbers::pi / (2 * count));
    }
    return r;
}

VerifyReport ma_residual(const Solution& sol, std::span<const double> r_nodes) {
    VerifyReport rep;
    rep.residual_table.resize(r_nodes.size());
    for (std::size_t i = 0; i < r_nodes.size(); ++i) {
        const double r = r_nodes[i];
        const double t = radius_to_t(sol, r);
        const double det = hessian_det_radial(sol, r);
        const double g1 = sol.g1(t);
        double k;
        try {
            k = sol.problem.f(t, sol.g(t), t * g1 * g1);
        } catch (const DomainError& e) {
            throw DomainError(std::string(e.what()) + " (residual node r = " + std::to_string(r) + ")",
                              e.subexpression());
        }
        const double diff = std::abs(det - k);
        rep.residual_table[i] = {r, det, k, diff};
        const double rel = diff / std::max(1.0, std::abs(k));
        rep.residual_max = std::max(rep.residual_max, std::isnan(rel) ? INFINITY : rel);
    }
    return rep;
}

VerifyReport ma_residual(const Solution& sol) {
    const auto r = default_check_radii(sol.grid->t_max());
    return ma_residual(sol, r);
}

std::pair<double, double> gradient_image_measure(const Solution& sol, double r1, double r2) {
    if (!(r1 > 0.0 && r1 < r2)) throw ParameterError("annulus needs 0 < r1 < r2");
    const double t1 = radius_to_t(sol, r1), t2 = radius_to_t(sol, r2);
    const int n = sol.problem.n;
    const double omega = sphere_measure(n);
    const double lhs = omega / n * (std::pow(sol.g1(t2) * r2, n) - std::pow(sol.g1(t1) * r1, n));

    constexpr int panels = 32;
    using R = GaussLegendre8;
    double sum = 0.0;
    const double h = (r2 - r1) / panels;
    for (int k = 0; k < panels; ++k) {
        const double a = r1 + k * h, mid = a + 0.5 * h;
        for (std::size_t j = 0; j < 8; ++j) {
            const double r = mid + 0.5 * h * R::x[j];
            sum += R::w[j] * std::pow(r, n - 1) * sol.phi_at(std::min(0.5 * r * r, t2));
        }
    }
    return {lhs, omega * 0.5 * h * sum};
}

ShapeFlags convexity_and_c1(const Solution& sol) {
    ShapeFlags out;
    std::ostringstream detail;
    const Grid& grid = *sol.grid;
    const std::size_t N = grid.size();

    out.convex_ok = true;
    for (std::size_t i = 1; i + 1 < N; ++i) {
        const double t = grid[i], g1 = sol.g1[i], g2 = sol.g2[i];
        if (!(g1 >= -1e-12) || !(2 * t * g2 + g1 >= -1e-12)) {
            if (out.convex_ok) detail << "convexity fails at t = " << t << "; ";
            out.convex_ok = false;
        }
    }

    // radial derivative u_r = g'(t) sqrt(2t) must shrink to 0 at the origin
    auto u_r = [&](std::size_t i) { return sol.g1[i] * std::sqrt(2.0 * grid[i]); };
    out.c1_at_origin_ok = std::abs(u_r(1)) <= 1e-4;
    for (std::size_t i = 1; i < 5; ++i) {
        if (!(std::abs(u_r(i)) <= std::abs(u_r(i + 1)))) out.c1_at_origin_ok = false;
    }
    if (!out.c1_at_origin_ok) detail << "radial derivative does not vanish at the origin; ";

    // node-to-node jumps of u_r against the mean-value bound dt * max|du_r/dt|
    double scale = 0.0;
    for (std::size_t i = 1; i < N; ++i) scale = std::max(scale, std::abs(u_r(i)));
    auto slope = [&](std::size_t i) {
        const double s2 = std::sqrt(2.0 * grid[i]);
        return sol.g2[i] * s2 + sol.g1[i] / s2;
    };
    out.radial_derivative_continuous = true;
    for (std::size_t i = 1; i + 1 < N; ++i) {
        const double dt = grid[i + 1] - grid[i];
        const double jump = std::abs(u_r(i + 1) - u_r(i));
        const double bound = 10.0 * dt * std::max(std::abs(slope(i)), std::abs(slope(i + 1))) + 1e-12 * scale;
        if (!(jump <= bound)) {
            if (out.radial_derivative_continuous) detail << "radial derivative jumps near t = " << grid[i] << "; ";
            out.radial_derivative_continuous = false;
        }
    }
    out.detail = detail.str();
    return out;
}

VerifyReport verify_solution(const Solution& sol, int annuli, std::uint64_t seed) {
    VerifyReport rep = ma_residual(sol);
    const double r_max = std::sqrt(2.0 * sol.grid->t_max());
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.05 * r_max, 0.95 * r_max);
    for (int k = 0; k < annuli; ++k) {
        double a = u(rng), b = u(rng);
        if (a > b) std::swap(a, b);
        if (a == b) b = std::min(a + 1e-3, r_max);
        const auto [lhs, rhs] = gradient_image_measure(sol, a, b);
        rep.annuli_checked.push_back({a, b, lhs, rhs, std::abs(lhs - rhs)});
    }
    const ShapeFlags flags = convexity_and_c1(sol);
    rep.convex_ok = flags.convex_ok;
    rep.c1_at_origin_ok = flags.c1_at_origin_ok;
    rep.radial_derivative_continuous = flags.radial_derivative_continuous;
    rep.detail = flags.detail;
    return rep;
}

}  // namespace ma_radial
