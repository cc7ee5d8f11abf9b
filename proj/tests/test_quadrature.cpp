#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "doctest.h"
#include "ma_radial/quadrature.hpp"

using namespace ma_radial;

namespace {

GridPtr make_grid(int nodes = 1024, double t_max = 0.5) {
    return std::make_shared<const Grid>(Grid::graded(t_max, nodes));
}

template <class F>
SampledFunction sample(const GridPtr& g, F f, Interpolation kind = Interpolation::Cubic) {
    std::vector<double> v(g->size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f((*g)[i]);
    return SampledFunction(g, std::move(v), kind);
}

UnivariateExpr uexpr(const char* src) { return UnivariateExpr(parse(src)); }

}  // namespace

TEST_CASE("graded grid layout") {
    const Grid g = Grid::graded(0.5);
    CHECK(g.size() == 1024);
    CHECK(g[0] == 0.0);
    CHECK(g.t_max() == 0.5);
    for (std::size_t i = 1; i < g.size(); ++i) REQUIRE(g[i] > g[i - 1]);
    for (int j = 2; j <= g.levels(); ++j) {
        REQUIRE(std::abs(g[j] / g[j - 1] - 1.05) <= 1e-12);
    }
    // spacing continuous across the junction
    const std::size_t J = static_cast<std::size_t>(g.levels()) + 1;
    CHECK(g[J + 1] - g[J] == doctest::Approx(g[J] - g[J - 1] * 1.0).epsilon(1e-9));
    CHECK(g[J] - g[J - 1] == doctest::Approx(g[J] * (1 - 1 / 1.05)).epsilon(1e-12));

    CHECK_THROWS_AS(Grid::graded(0.5, 15), ParameterError);
    CHECK_THROWS_AS(Grid::graded(-1.0), ParameterError);
    CHECK_THROWS_AS(Grid::from_nodes({0, 1, 2}), ParameterError);
    std::vector<double> bad(20);
    for (std::size_t i = 0; i < bad.size(); ++i) bad[i] = static_cast<double>(i);
    bad[5] = bad[4];
    CHECK_THROWS_AS(Grid::from_nodes(bad), ParameterError);
}

TEST_CASE("cell lookup") {
    const Grid g = Grid::graded(0.5, 64);
    CHECK(g.cell_of(0.0) == 0);
    CHECK(g.cell_of(0.5) == g.size() - 2);
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        const double mid = 0.5 * (g[i] + g[i + 1]);
        REQUIRE(g.cell_of(mid) == i);
    }
}

TEST_CASE("interpolation") {
    auto g = make_grid(256);
    SUBCASE("exact at nodes") {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(-3, 3);
        std::vector<double> v(g->size());
        for (auto& x : v) x = u(rng);
        for (auto kind : {Interpolation::Cubic, Interpolation::Monotone}) {
            SampledFunction h(g, v, kind);
            for (std::size_t i = 0; i < v.size(); ++i) REQUIRE(h((*g)[i]) == v[i]);
        }
    }
    SUBCASE("linear data reproduced") {
        auto h = sample(g, [](double t) { return 2.5 - 3 * t; });
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> u(0, 0.5);
        for (int k = 0; k < 500; ++k) {
            const double t = u(rng);
            REQUIRE(h(t) == doctest::Approx(2.5 - 3 * t).epsilon(1e-14));
        }
    }
    SUBCASE("sin on 256 nodes") {
        auto h = sample(g, [](double t) { return std::sin(t); });
        CHECK(std::abs(h(0.123) - std::sin(0.123)) <= 1e-8);
    }
    SUBCASE("fourth order") {
        auto coarse = make_grid(128), fine = make_grid(256);
        auto f = [](double t) { return std::exp(3 * t) * std::cos(5 * t); };
        auto hc = sample(coarse, f), hf = sample(fine, f);
        double ec = 0, ef = 0;
        for (int k = 1; k < 400; ++k) {
            const double t = 0.05 + 0.45 * k / 400.0;
            ec = std::max(ec, std::abs(hc(t) - f(t)));
            ef = std::max(ef, std::abs(hf(t) - f(t)));
        }
        CHECK(ec / ef > 8.0);
    }
    SUBCASE("out of span") {
        auto h = sample(g, [](double t) { return t; });
        CHECK_THROWS_AS(h(-1e-9), ParameterError);
        CHECK_THROWS_AS(h(0.5000001), ParameterError);
    }
    SUBCASE("leading NaN entries") {
        auto h = sample(g, [](double t) { return t == 0.0 ? std::nan("") : 1.0 + t; });
        CHECK(h.first_valid() == 1);
        CHECK(h(0.0) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(h(0.5 * (*g)[1]) == doctest::Approx(1.0 + 0.5 * (*g)[1]).epsilon(1e-12));
    }
}

TEST_CASE("monotone interpolation never undershoots nonnegative data") {
    auto g = make_grid(64);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> v(g->size());
        for (auto& x : v) x = u(rng) < 0.3 ? 0.0 : u(rng);
        SampledFunction h(g, v, Interpolation::Monotone);
        for (std::size_t i = 0; i + 1 < v.size(); ++i) {
            const double lo = std::min(v[i], v[i + 1]), hi = std::max(v[i], v[i + 1]);
            for (int k = 1; k < 8; ++k) {
                const double t = (*g)[i] + ((*g)[i + 1] - (*g)[i]) * k / 8.0;
                const double y = h(t);
                REQUIRE(y >= 0.0);
                // monotone data stays within the bracket
                if ((i == 0 || (v[i] - v[i - 1]) * (v[i + 1] - v[i]) > 0) &&
                    (i + 2 == v.size() || (v[i + 2] - v[i + 1]) * (v[i + 1] - v[i]) > 0)) {
                    REQUIRE(y >= lo - 1e-15);
                    REQUIRE(y <= hi + 1e-15);
                }
            }
        }
    }
}

TEST_CASE("t_beta examples") {
    CHECK(t_beta(uexpr("3"), 2.0, 0.37) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(t_beta(uexpr("3"), 2.0, 0.0) == 1.5);
    CHECK(t_beta(uexpr("t"), 1.0, 0.5) == doctest::Approx(0.25).epsilon(1e-14));
    // high-precision quadrature of the original singular form
    CHECK(std::abs(t_beta(uexpr("sin(t)"), 1.5, 0.5) - 0.19541025261994365772) <= 1e-10);

    CHECK_THROWS_AS(t_beta(uexpr("t"), 0.0, 0.5), ParameterError);
    CHECK_THROWS_AS(t_beta(uexpr("t"), -1.0, 0.5), ParameterError);
    CHECK_THROWS_AS(t_beta(uexpr("t"), 1.0, -0.5), ParameterError);
    CHECK_THROWS_AS(t_beta(uexpr("log(t - 0.2)"), 1.0, 0.5), DomainError);

    auto g = make_grid(64);
    auto h = sample(g, [](double t) { return 1 + t; });
    CHECK_THROWS_AS(t_beta(h, 1.0, 0.6), ParameterError);
    CHECK(t_beta(h, 1.0, 0.5) == doctest::Approx(1.0 + 0.25).epsilon(1e-14));
}

TEST_CASE("t_beta at the origin uses the right limit") {
    CHECK(t_beta(uexpr("exp(-1/t)"), 1.5, 0.0) == 0.0);
    CHECK(t_beta(uexpr("exp(-1/t)"), 1.5, 0.1) > 0.0);
}

TEST_CASE("power rule") {
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> ua(0.0, 8.0), ub(0.05, 4.0), us(0.0, 1.0);
    for (int trial = 0; trial < 400; ++trial) {
        const double a = trial % 5 == 0 ? std::floor(ua(rng)) : ua(rng);
        const double beta = ub(rng);
        const double s = 0.5 * std::max(us(rng), 1e-6);
        const double got = t_beta_with([a](double w) { return std::pow(w, a); }, beta, s);
        const double want = std::pow(s, a) / (beta + a);
        INFO("a=" << a << " beta=" << beta << " s=" << s);
        REQUIRE(std::abs(got - want) <= 1e-12 * std::max(1.0, std::pow(s, a)));
    }
    // tiny s, on the scale of the smallest grid node
    for (double s : {2.9e-13, 1e-8, 1e-3}) {
        for (double a : {0.0, 0.5, 1.0, 3.0}) {
            const double got = t_beta_with([a](double w) { return std::pow(w, a); }, 1.5, s);
            REQUIRE(std::abs(got - std::pow(s, a) / (1.5 + a)) <= 1e-12 * std::max(1.0, std::pow(s, a)));
        }
    }
}

TEST_CASE("t_beta linearity and positivity") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto h1 = uexpr("exp(t) * cos(3 * t)");
    const auto h2 = uexpr("t ^ 2 + sqrt(t)");
    for (int trial = 0; trial < 100; ++trial) {
        const double alpha = 4 * u(rng) - 2, beta = 0.2 + 3 * u(rng), s = 0.5 * u(rng);
        const double lhs = t_beta_with([&](double w) { return alpha * h1(w) + h2(w); }, beta, s);
        const double rhs = alpha * t_beta(h1, beta, s) + t_beta(h2, beta, s);
        REQUIRE(std::abs(lhs - rhs) <= 1e-14 * (1 + std::abs(lhs)));
    }
    for (const char* src : {"exp(-1/t)", "t ^ 3", "abs(sin(20 * t))", "(t - 0.25) ^ 2"}) {
        const auto h = uexpr(src);
        for (int k = 0; k <= 50; ++k) {
            REQUIRE(t_beta(h, 0.5 + k * 0.05, 0.5 * k / 50.0) >= 0.0);
        }
    }
}

TEST_CASE("bound: beta * T_beta h is at most sup |h|") {
    const char* catalog[] = {"1", "(2 * t) ^ 2", "(2 * t) ^ 3", "exp(-1/t)", "(1 + t) * exp(0.5)",
                             "sin(7 * t)", "exp(t) - 2", "(2 * t) ^ 2 * exp(1)"};
    for (const char* src : catalog) {
        const auto h = uexpr(src);
        for (double beta : {0.5, 1.0, 1.5, 2.0}) {
            for (int k = 1; k <= 40; ++k) {
                const double s = 0.5 * k / 40.0;
                double sup = std::abs(h.value_or_right_limit(0.0));
                for (int j = 1; j <= 400; ++j) sup = std::max(sup, std::abs(h(s * j / 400.0)));
                INFO(src << " beta=" << beta << " s=" << s);
                REQUIRE(std::abs(beta * t_beta(h, beta, s)) <= sup + 1e-12);
            }
        }
    }
}

TEST_CASE("t_beta_derivative") {
    CHECK(t_beta_derivative(uexpr("2.5"), 0.7, 1, 0.3) == 0.0);
    CHECK(t_beta_derivative(uexpr("t ^ 2"), 1.0, 1, 0.4) == doctest::Approx(0.8 / 3).epsilon(1e-13));
    CHECK(t_beta_derivative(uexpr("t ^ 2"), 1.0, 2, 0.4) == doctest::Approx(2.0 / 3).epsilon(1e-13));
    // finite-difference oracle evaluated at high precision
    CHECK(t_beta_derivative(uexpr("exp(t)"), 1.5, 1, 0.3) ==
          doctest::Approx(0.49658721445453148996).epsilon(1e-12));
    CHECK_THROWS_AS(t_beta_derivative(uexpr("log(t - 0.2)"), 1.0, 1, 0.3), DomainError);
}

TEST_CASE("identity: analytic derivative matches finite differences") {
    const char* funcs[] = {"1 + 2 * t - t ^ 2 + 0.5 * t ^ 3 - 3 * t ^ 4", "exp(t)", "sin(t)", "t ^ 4"};
    for (const char* src : funcs) {
        const auto h = uexpr(src);
        for (double beta : {1.0, 1.5, 2.0}) {
            for (double s : {0.1, 0.25, 0.4}) {
                const double d = 1e-3;
                auto T = [&](double x) { return t_beta(h, beta, x); };
                const double fd1 = (T(s - 2 * d) - 8 * T(s - d) + 8 * T(s + d) - T(s + 2 * d)) / (12 * d);
                const double fd2 = (-T(s - 2 * d) + 16 * T(s - d) - 30 * T(s) + 16 * T(s + d) - T(s + 2 * d)) /
                                   (12 * d * d);
                const double a1 = t_beta_derivative(h, beta, 1, s);
                const double a2 = t_beta_derivative(h, beta, 2, s);
                INFO(src << " beta=" << beta << " s=" << s);
                REQUIRE(std::abs(a1 - fd1) <= 1e-6 * std::max(1.0, std::abs(a1)));
                REQUIRE(std::abs(a2 - fd2) <= 1e-6 * std::max(1.0, std::abs(a2)));
            }
        }
    }
}

TEST_CASE("cumulative examples") {
    auto g = make_grid();
    auto one = sample(g, [](double) { return 1.0; });
    CHECK(cumulative(one, 0.0, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
    for (double t : {0.0, 1e-10, 0.01, 0.3, 0.5}) CHECK(cumulative(one, 0.0, t) == doctest::Approx(t).epsilon(1e-14));
    auto cube = sample(g, [](double s) { return 8 * s * s * s; });
    CHECK(cumulative(cube, 0.0, 0.25) == doctest::Approx(0.0078125).epsilon(1e-13));
    // square-root weight: integral of s^{1/2} is (2/3) t^{3/2}
    CHECK(cumulative(one, 0.5, 0.4) == doctest::Approx(2.0 / 3 * std::pow(0.4, 1.5)).epsilon(1e-13));
    CHECK(cumulative(one, -0.5, 0.4) == doctest::Approx(2 * std::sqrt(0.4)).epsilon(1e-13));
    CHECK_THROWS_AS(cumulative(one, -1.0, 0.4), ParameterError);
    CHECK_THROWS_AS(cumulative(one, 0.0, 0.6), ParameterError);
}

TEST_CASE("F(t) equals t^{n/2} T_{n/2} kappa") {
    auto g = make_grid();
    const char* catalog[] = {"1", "(2 * t) ^ 2", "(2 * t) ^ 3", "exp(-1/t)", "(1 + t) * exp(0.5)", "(2 * t) ^ 4 + t"};
    for (const char* src : catalog) {
        const auto k = uexpr(src);
        auto kappa = [&](double s) { return s == 0.0 ? k.value_or_right_limit(0.0) : k(s); };
        for (int n : {2, 3}) {
            const double p = 0.5 * n - 1;
            for (double t : {1e-6, 0.01, 0.05, 0.2, 0.5}) {
                const double F = cumulative_with(*g, kappa, p, t);
                const double rhs = std::pow(t, 0.5 * n) * t_beta(k, 0.5 * n, t);
                INFO(src << " n=" << n << " t=" << t);
                if (rhs == 0.0) {
                    REQUIRE(F == 0.0);
                } else {
                    REQUIRE(std::abs(F - rhs) <= 1e-10 * std::abs(rhs));
                }
            }
        }
    }
}

TEST_CASE("graded unit rule") {
    double sum = 0;
    for (const auto& q : graded_unit_rule()) {
        REQUIRE(q.x > 0.0);
        REQUIRE(q.x < 1.0);
        sum += q.w;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(make_graded_unit_rule(0), ParameterError);
}
