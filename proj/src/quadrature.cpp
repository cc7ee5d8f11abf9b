#include "ma_radial/quadrature.hpp"

#include <vector>

namespace ma_radial {

namespace {

constexpr int kGradedLevels = 40;

void append_panel(std::vector<QuadraturePoint>& out, double a, double b) {
    using R = GaussLegendre8;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t j = 0; j < 8; ++j) out.push_back({mid + half * R::x[j], half * R::w[j]});
}

}  // namespace

std::vector<QuadraturePoint> make_graded_unit_rule(int levels) {
    if (levels < 1) throw ParameterError("graded rule needs at least one level");
    std::vector<QuadraturePoint> rule;
    rule.reserve(static_cast<std::size_t>(16 * levels));
    // left half: [0, 2^-L], [2^-L, 2^-(L-1)], ..., [1/4, 1/2]
    append_panel(rule, 0.0, std::ldexp(1.0, -levels));
    for (int k = levels; k >= 2; --k) append_panel(rule, std::ldexp(1.0, -k), std::ldexp(1.0, -k + 1));
    // right half mirrored: [1/2, 3/4], ..., [1 - 2^-L, 1]
    for (int k = 1; k < levels; ++k) append_panel(rule, 1.0 - std::ldexp(1.0, -k), 1.0 - std::ldexp(1.0, -k - 1));
    append_panel(rule, 1.0 - std::ldexp(1.0, -levels), 1.0);
    return rule;
}

std::span<const QuadraturePoint> graded_unit_rule() {
    static const std::vector<QuadraturePoint> rule = make_graded_unit_rule(kGradedLevels);
    return rule;
}

double t_beta(const SampledFunction& h, double beta, double s) {
    if (s > h.grid().t_max()) throw ParameterError("s outside the grid span");
    return t_beta_with(h, beta, s);
}

double t_beta(const UnivariateExpr& h, double beta, double s) {
    return t_beta_with([&](double w) { return w == 0.0 ? h.value_or_right_limit(0.0) : h(w); }, beta, s);
}

double t_beta_derivative(const UnivariateExpr& h, double beta, int k, double s) {
    if (k < 0) throw ParameterError("derivative order must be nonnegative");
    if (k == 0) return t_beta(h, beta, s);
    return t_beta_with([&](double w) { return h.derivative(w, k); }, beta + k, s);
}

double cumulative(const SampledFunction& h, double weight_exponent, double t) {
    return cumulative_with(h.grid(), h, weight_exponent, t);
}

}  // namespace ma_radial
