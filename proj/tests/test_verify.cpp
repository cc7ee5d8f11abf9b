#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <random>

#include "doctest.h"
#include "ma_radial/verify.hpp"

using namespace ma_radial;

namespace {

using Fn = std::function<double(double)>;

// Solution assembled from closed-form profile derivatives
Solution manufactured(int n, const char* f, const Fn& g, const Fn& g1, const Fn& g2, const Fn& phi) {
    const Problem p = Problem::make(n, f, g(0.5));
    auto grid = std::make_shared<const Grid>(Grid::graded(0.5));
    const std::size_t N = grid->size();
    std::vector<double> vg(N), v1(N), v2(N), v3(N, 0.0), vp(N), vk(N);
    for (std::size_t i = 0; i < N; ++i) {
        const double t = (*grid)[i];
        vg[i] = g(t);
        v1[i] = g1(t);
        v2[i] = g2(t);
        vp[i] = phi(t);
        vk[i] = p.f(t, 0.0, 0.0);
    }
    v2[0] = v3[0] = std::nan("");
    return solution_from_arrays(p, grid, vg, v1, v2, v3, vp, vk);
}

Solution quadratic(int n) {
    return manufactured(
        n, "1", [](double t) { return t; }, [](double) { return 1.0; }, [](double) { return 0.0; },
        [](double) { return 1.0; });
}

}  // namespace

TEST_CASE("sphere measure") {
    CHECK(sphere_measure(2) == doctest::Approx(2 * std::numbers::pi).epsilon(1e-15));
    CHECK(sphere_measure(3) == doctest::Approx(4 * std::numbers::pi).epsilon(1e-15));
    CHECK(sphere_measure(1) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(sphere_measure(0), ParameterError);
}

TEST_CASE("radial hessian determinant") {
    for (int n : {1, 2, 3, 4}) CHECK(hessian_det_radial(quadratic(n), 0.7) == doctest::Approx(1.0).epsilon(1e-14));

    // u = r^4 / 8: det = u'' u' / r = 3 r^4 / 4
    const auto quartic = manufactured(
        2, "3*t^2", [](double t) { return 0.5 * t * t; }, [](double t) { return t; }, [](double) { return 1.0; },
        [](double t) { return 3 * t * t; });
    CHECK(hessian_det_radial(quartic, 1.0) == doctest::Approx(0.75).epsilon(1e-14));
    for (double r : {0.2, 0.5, 0.9}) {
        CHECK(hessian_det_radial(quartic, r) == doctest::Approx(0.75 * std::pow(r, 4)).epsilon(1e-12));
    }

    // u = r^3 / (3 sqrt 2): det = u'' u' / r = r^2
    const auto s = solve_explicit(Problem::make(2, "(2*t)^1", 1.0 / (3 * std::sqrt(2.0))));
    for (double r : {0.1, 0.33, 0.6, 0.95}) {
        const double up = r * r / std::sqrt(2.0), upp = 2 * r / std::sqrt(2.0);
        CHECK(upp * up / r == doctest::Approx(r * r).epsilon(1e-14));
        CHECK(std::abs(hessian_det_radial(s, r) - r * r) <= 1e-8);
    }

    CHECK_THROWS_AS(hessian_det_radial(s, 0.0), ParameterError);
    CHECK_THROWS_AS(hessian_det_radial(s, 1.01), ParameterError);
}

TEST_CASE("check radii") {
    const auto r = default_check_radii(0.5);
    REQUIRE(r.size() == 33);
    for (std::size_t i = 1; i < r.size(); ++i) CHECK(r[i] > r[i - 1]);
    CHECK(r.front() > 0.05);
    CHECK(r.back() < 0.95);
    CHECK(r[16] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("residual examples") {
    CHECK(solve_explicit(Problem::make(2, "1", 0.0)).residual_max <= 1e-10);

    const auto s = solve_explicit(Problem::make(2, "(2*t)^3", 0.0));
    std::vector<double> radii;
    for (int j = 0; j <= 80; ++j) radii.push_back(0.1 + 0.01 * j);
    const auto rep = ma_residual(s, radii);
    CHECK(rep.residual_max <= 1e-7);
    REQUIRE(rep.residual_table.size() == radii.size());
    for (const auto& row : rep.residual_table) {
        CHECK(row.k == doctest::Approx(std::pow(row.r, 6)).epsilon(1e-13));
        CHECK(row.abs_diff == std::abs(row.det - row.k));
    }

    // zeroing g'' breaks the determinant away from the origin
    auto broken = s;
    std::vector<double> g2(s.g2.values().begin(), s.g2.values().end());
    for (std::size_t i = 1; i < g2.size(); ++i) g2[i] = 0.0;
    broken.g2 = SampledFunction(s.grid, g2);
    CHECK(ma_residual(broken).residual_max > 0.1);
}

TEST_CASE("residual propagates domain errors with context") {
    const auto s = quadratic(2);
    auto p = s.problem;
    p.f = Expr::parse("log(0.3 - t) + 1");
    auto bad = s;
    bad.problem = p;
    try {
        ma_residual(bad);
        FAIL("expected a domain error");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("residual node r =") != std::string::npos);
    }
}

TEST_CASE("gradient image measure") {
    const auto q = quadratic(2);
    const auto [lhs, rhs] = gradient_image_measure(q, 0.5, 0.8);
    CHECK(lhs == doctest::Approx(1.2252211349000193).epsilon(1e-14));
    CHECK(std::abs(lhs - rhs) <= 1e-8);

    // g' = c everywhere: phi = c^n in every dimension
    for (int n : {1, 2, 3}) {
        const double c = 1.7, cn = std::pow(c, n);
        const auto s = manufactured(
            n, "1", [&](double t) { return c * t; }, [&](double) { return c; }, [](double) { return 0.0; },
            [&](double) { return cn; });
        const auto [l, r] = gradient_image_measure(s, 0.2, 0.9);
        const double expect = sphere_measure(n) / n * cn * (std::pow(0.9, n) - std::pow(0.2, n));
        CHECK(l == doctest::Approx(expect).epsilon(1e-14));
        CHECK(r == doctest::Approx(expect).epsilon(1e-13));
    }

    const auto s = solve(Problem::make(2, "(2*t)^2", 0.0));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (int k = 0; k < 20; ++k) {
        double a = u(rng), b = u(rng);
        if (a > b) std::swap(a, b);
        const auto [l, r] = gradient_image_measure(s, a, b);
        REQUIRE(std::abs(l - r) <= 1e-6);
    }

    CHECK_THROWS_AS(gradient_image_measure(q, 0.5, 0.5), ParameterError);
    CHECK_THROWS_AS(gradient_image_measure(q, 0.0, 0.5), ParameterError);
    CHECK_THROWS_AS(gradient_image_measure(q, 0.5, 1.2), ParameterError);
}

TEST_CASE("gradient image measure is additive") {
    const auto s = solve(Problem::make(3, "(1+t)*exp(xi/2)", 0.2));
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (int k = 0; k < 50; ++k) {
        double r[3] = {u(rng), u(rng), u(rng)};
        std::sort(r, r + 3);
        if (r[0] == r[1] || r[1] == r[2]) continue;
        const auto whole = gradient_image_measure(s, r[0], r[2]);
        const auto left = gradient_image_measure(s, r[0], r[1]);
        const auto right = gradient_image_measure(s, r[1], r[2]);
        REQUIRE(std::abs(whole.first - left.first - right.first) <= 1e-12 * std::max(1.0, whole.first));
        REQUIRE(std::abs(whole.second - left.second - right.second) <= 1e-8 * std::max(1.0, whole.second));
    }
}

TEST_CASE("measure identity is consistent with the residual") {
    for (const char* src : {"(2*t)^2*exp(xi)", "2 + sin(5*t)", "exp(-1/t)"}) {
        const auto s = solve(Problem::make(2, src, 0.0));
        std::mt19937_64 rng(29);
        std::uniform_real_distribution<double> u(0.05, 0.95);
        for (int k = 0; k < 10; ++k) {
            double a = u(rng), b = u(rng);
            if (a > b) std::swap(a, b);
            std::vector<double> radii;
            for (int j = 0; j <= 16; ++j) radii.push_back(a + (b - a) * j / 16.0);
            const double eps = ma_residual(s, radii).residual_max;
            const double area = std::numbers::pi * (b * b - a * a);
            const auto [l, r] = gradient_image_measure(s, a, b);
            INFO(src);
            REQUIRE(std::abs(l - r) <= eps * area * std::max(1.0, r / area) + 1e-8);
        }
    }
}

TEST_CASE("shape flags") {
    const auto q = convexity_and_c1(quadratic(2));
    CHECK(q.convex_ok);
    CHECK(q.c1_at_origin_ok);
    CHECK(q.radial_derivative_continuous);
    CHECK(q.detail.empty());

    const auto neg = manufactured(
        2, "1", [](double t) { return -t; }, [](double) { return -1.0; }, [](double) { return 0.0; },
        [](double) { return 1.0; });
    CHECK_FALSE(convexity_and_c1(neg).convex_ok);
    CHECK(convexity_and_c1(neg).detail.find("convexity") != std::string::npos);

    // a cone u = r: u_r stays 1 at the origin
    const auto cone = manufactured(
        2, "1", [](double t) { return std::sqrt(2 * t); }, [](double t) { return 1 / std::sqrt(2 * t); },
        [](double t) { return -0.5 * std::pow(2 * t, -1.5); }, [](double) { return 1.0; });
    CHECK_FALSE(convexity_and_c1(cone).c1_at_origin_ok);

    // a kink in u_r at t = 0.25
    const auto kink = manufactured(
        2, "1", [](double t) { return t < 0.25 ? t : 2 * t - 0.25; }, [](double t) { return t < 0.25 ? 1.0 : 2.0; },
        [](double) { return 0.0; }, [](double) { return 1.0; });
    CHECK_FALSE(convexity_and_c1(kink).radial_derivative_continuous);

    for (const char* src : {"exp(-1/t)", "(2*t)^2*exp(xi)", "(2*t)^1"}) {
        const auto f = convexity_and_c1(solve(Problem::make(2, src, 0.0)));
        INFO(src);
        CHECK(f.convex_ok);
        CHECK(f.c1_at_origin_ok);
        CHECK(f.radial_derivative_continuous);
    }
}

TEST_CASE("verify_solution report") {
    const auto s = solve(Problem::make(2, "(2*t)^2*exp(xi)", 0.0));
    const auto a = verify_solution(s, 5, 7);
    const auto b = verify_solution(s, 5, 7);
    CHECK(a.residual_max <= 1e-6);
    REQUIRE(a.annuli_checked.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(a.annuli_checked[i].r1 == b.annuli_checked[i].r1);
        CHECK(a.annuli_checked[i].r1 < a.annuli_checked[i].r2);
        CHECK(a.annuli_checked[i].abs_diff <= 1e-6);
    }
    CHECK(a.convex_ok);
    CHECK(a.c1_at_origin_ok);
}
