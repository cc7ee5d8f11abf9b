#include <cmath>
#include <cstring>
#include <random>

#include "doctest.h"
#include "ma_radial/problem.hpp"

using namespace ma_radial;

TEST_CASE("problem invariants") {
    CHECK_NOTHROW(Problem::make(2, "1", 0.0));
    CHECK_THROWS_AS(Problem::make(0, "1", 0.0), ParameterError);
    CHECK_THROWS_AS(Problem::make(2, "1", 0.0, 0.0), ParameterError);
    CHECK_THROWS_AS(Problem::make(2, "1", 0.0, 1.5), ParameterError);
    CHECK_THROWS_AS(Problem::make(2, "log(t - 1)", 0.0), DomainError);
    CHECK_THROWS_AS(Problem::make(2, "1 / (t - t)", 0.0), DomainError);
    Problem p = Problem::make(2, "1", 0.0);
    p.solver.damping = 0.0;
    CHECK_THROWS_AS(p.validate(), ParameterError);
    p.solver.damping = 1.5;
    CHECK_THROWS_AS(p.validate(), ParameterError);
    p.solver.damping = 0.5;
    p.solver.tol = 0.0;
    CHECK_THROWS_AS(p.validate(), ParameterError);
    // f singular at t = 0 but with a finite right limit is accepted
    CHECK_NOTHROW(Problem::make(2, "exp(-1/t)", 0.0));
}

TEST_CASE("kappa restriction") {
    CHECK(kappa(Problem::make(3, "(2*t)^3", 0.0))(0.5) == 1.0);
    const auto k = kappa(Problem::make(2, "exp(-1/t)*(1+zeta)", 0.0));
    CHECK(k.value_or_right_limit(0.0) == 0.0);
    CHECK(k(0.25) == doctest::Approx(std::exp(-4.0)));
    CHECK(kappa(Problem::make(2, "t + xi", 0.0))(0.3) == 0.3);
}

TEST_CASE("kappa agrees bitwise with eval at (t, 0, 0)") {
    const char* sources[] = {"(2*t)^2*exp(xi)", "t + xi^2 + zeta", "exp(-1/t)*(1+zeta)", "sin(t)*exp(zeta)"};
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(1e-6, 0.5);
    for (const char* src : sources) {
        const Problem p = Problem::make(2, src, 0.0);
        const auto k = kappa(p);
        for (int i = 0; i < 200; ++i) {
            const double t = u(rng);
            const double a = k(t), b = eval(p.f, t, 0.0, 0.0);
            REQUIRE(std::memcmp(&a, &b, sizeof a) == 0);
        }
    }
}

TEST_CASE("comparability examples") {
    SUBCASE("ratio 1 + xi^2 + zeta") {
        const auto p = Problem::make(2, "(2*t)^3*(1+xi^2+zeta)", 0.0);
        Box box;  // |xi| <= 0.1, zeta in [0, 0.1]
        const auto rep = check_comparability(p, box);
        CHECK(rep.holds());
        CHECK(rep.c_lower() == doctest::Approx(1.0).epsilon(1e-14));
        // max of 1 + xi^2 + zeta over the box, attained at a corner
        CHECK(rep.C_upper() == doctest::Approx(1.11).epsilon(1e-14));
        CHECK(rep.near_origin.holds);
        CHECK(rep.near_origin.t_hi == 0.05);
        CHECK(std::abs(rep.full.witness_upper.xi) == doctest::Approx(0.1));
    }
    SUBCASE("independent of xi and zeta") {
        const auto rep = check_comparability(Problem::make(3, "exp(-1/t) + t^2", 0.0), Box{});
        CHECK(rep.holds());
        CHECK(rep.c_lower() == 1.0);
        CHECK(rep.C_upper() == 1.0);
    }
    SUBCASE("t + xi is not comparable") {
        const auto rep = check_comparability(Problem::make(2, "t + xi", 0.0), Box{});
        CHECK_FALSE(rep.holds());
        CHECK_FALSE(rep.full.failure.empty());
    }
    SUBCASE("kappa vanishes where f does not") {
        const auto rep = check_comparability(Problem::make(2, "t*(1 - 2*t)^2 + zeta", 0.0), Box{});
        CHECK_FALSE(rep.holds());
    }
    SUBCASE("negative kappa") {
        CHECK_THROWS_AS(check_comparability(Problem::make(2, "t - 0.25", 0.0), Box{}), NegativeRhsError);
    }
    SUBCASE("box must contain the origin") {
        Box b;
        b.xi_lo = 0.05;
        CHECK_THROWS_AS(check_comparability(Problem::make(2, "1", 0.0), b), ParameterError);
    }
}

TEST_CASE("comparability is monotone in the box") {
    // ratios attain their extremes on box corners, which every tensor grid samples
    const char* sources[] = {"(1+t)*exp(xi)*(1+zeta)", "(2*t)^2*(2+xi)/(1+zeta)", "t*exp(-xi - zeta)"};
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const char* src : sources) {
        const auto p = Problem::make(2, src, 0.0);
        for (int trial = 0; trial < 10; ++trial) {
            Box small;
            small.xi_lo = -0.3 * u(rng);
            small.xi_hi = 0.3 * u(rng);
            small.zeta_hi = 0.3 * u(rng);
            Box big = small;
            big.xi_lo -= 0.2 * u(rng);
            big.xi_hi += 0.2 * u(rng);
            big.zeta_hi += 0.2 * u(rng);
            const auto a = check_comparability(p, small, 9);
            const auto b = check_comparability(p, big, 9);
            REQUIRE(b.c_lower() <= a.c_lower() * (1 + 1e-15));
            REQUIRE(b.C_upper() >= a.C_upper() * (1 - 1e-15));
        }
    }
}

TEST_CASE("default box") {
    auto p = Problem::make(2, "1", 3.0);
    const Box b = default_box(p);
    CHECK(b.xi_lo == doctest::Approx(-0.3));
    CHECK(b.xi_hi == doctest::Approx(0.3));
    CHECK(b.zeta_lo == 0.0);
    CHECK(b.zeta_hi == doctest::Approx(0.1));
    CHECK(default_box(p, 1.0).zeta_hi == doctest::Approx(0.2));
}

TEST_CASE("taylor factorization") {
    SUBCASE("polynomial") {
        const auto tf = taylor_factor(Problem::make(2, "t^2*(1+xi^2)", 0.0), 2);
        CHECK(tf.psi_at_zero(0.3, 0.0) == doctest::Approx(1.09).epsilon(1e-14));
        CHECK(tf.psi(0.2, 0.3, 0.0) == doctest::Approx(1.09).epsilon(1e-14));
        CHECK(tf.warnings().empty());
    }
    SUBCASE("series coefficient") {
        const auto tf = taylor_factor(Problem::make(2, "sin(t)*exp(zeta)", 0.0), 1);
        CHECK(tf.psi_at_zero(0.0, 1.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
    }
    SUBCASE("order mismatch warns") {
        const auto tf = taylor_factor(Problem::make(2, "t^3", 0.0), 2);
        CHECK(tf.psi_at_zero(0.0, 0.0) == 0.0);
        CHECK(tf.psi(0.3, 0.0, 0.0) == doctest::Approx(0.3).epsilon(1e-14));
        REQUIRE(tf.warnings().size() == 1);
        CHECK(std::string(tf.warnings()[0]).find("not exact order") != std::string::npos);
    }
    SUBCASE("order overshoot") {
        CHECK_THROWS_AS(taylor_factor(Problem::make(2, "t + t^2", 0.0), 2), ParameterError);
        CHECK_THROWS_AS(taylor_factor(Problem::make(2, "t^2 + xi*t", 0.0), 2), ParameterError);
    }
    SUBCASE("no jet at the origin") {
        CHECK_THROWS_AS(taylor_factor(Problem::make(2, "exp(-1/t)", 0.0), 1), SingularJetError);
    }
}

TEST_CASE("taylor reconstruction") {
    const struct {
        const char* src;
        int ell;
    } cases[] = {{"t^2*(1+xi^2)", 2}, {"sin(t)*exp(zeta)", 1}, {"(2*t)^3*exp(xi)*(1+zeta)", 3},
                 {"t^2*cos(t+xi)", 2}, {"1 + t + xi", 0}};
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> us(0.0, 1.0), ux(-0.1, 0.1), uz(0.0, 0.1);
    for (const auto& c : cases) {
        const auto p = Problem::make(2, c.src, 0.0);
        const auto tf = taylor_factor(p, c.ell);
        for (int k = 0; k < 300; ++k) {
            // log-uniform s across the whole span, including below s_min
            const double s = k == 0 ? 0.0 : 0.5 * std::pow(1e-16, us(rng));
            const double xi = ux(rng), zeta = uz(rng);
            const double f = p.f(s == 0.0 ? 0.0 : s, xi, zeta);
            const double rec = std::pow(s, c.ell) * tf.psi(s, xi, zeta);
            INFO(c.src << " s=" << s);
            REQUIRE(std::abs(rec - f) <= 1e-10 * std::max(1.0, std::abs(f)));
        }
    }
}
