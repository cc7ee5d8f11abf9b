#include "ma_radial/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "ma_radial/error.hpp"
#include "ma_radial/kernels.hpp"

namespace ma_radial {

Problem Problem::make(int n, std::string_view f, double boundary_value, double t_max) {
    Problem p;
    p.n = n;
    p.f = parse(f);
    p.boundary_value = boundary_value;
    p.t_max = t_max;
    p.validate();
    return p;
}

void Problem::validate() const {
    if (n < 1) throw ParameterError("dimension n must be at least 1");
    if (!(t_max > 0.0 && t_max <= 1.0)) throw ParameterError("t_max must lie in (0, 1]");
    if (!std::isfinite(boundary_value)) throw ParameterError("boundary_value must be finite");
    if (!(solver.tol > 0.0)) throw ParameterError("tol must be positive");
    if (solver.max_iter < 1) throw ParameterError("max_iter must be positive");
    if (!(solver.damping > 0.0 && solver.damping <= 1.0)) throw ParameterError("damping must lie in (0, 1]");
    if (grid.nodes < static_cast<int>(Grid::kMinNodes)) throw ParameterError("grid_nodes must be at least 16");
    if (!(grid.grading > 1.0)) throw ParameterError("grid_grading must exceed 1");
    const double f0 = eval_rhs(f, 0.0, 0.0, 0.0);
    if (!std::isfinite(f0)) throw ParameterError("f is not finite at (0, 0, 0)");
}

GridPtr make_grid(const Problem& p) {
    return std::make_shared<const Grid>(Grid::graded(p.t_max, p.grid.nodes, p.grid.grading));
}

UnivariateExpr kappa(const Problem& p) { return UnivariateExpr(p.f, 0.0, 0.0); }

double eval_rhs(const Expr& f, double t, double xi, double zeta) {
    if (t != 0.0) return f(t, xi, zeta);
    try {
        return f(0.0, xi, zeta);
    } catch (const DomainError&) {
        return f(1e-300, xi, zeta);
    }
}

Box default_box(const Problem& p, double zeta_scale) {
    Box b;
    const double xr = 0.1 * std::max(1.0, std::abs(p.boundary_value));
    b.xi_lo = -xr;
    b.xi_hi = xr;
    b.zeta_lo = 0.0;
    b.zeta_hi = 0.1 * (1.0 + std::max(0.0, zeta_scale));
    return b;
}

namespace {

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
    v.back() = hi;
    return v;
}

std::vector<double> logspace(double lo, double hi, int count) {
    std::vector<double> v(static_cast<std::size_t>(count));
    const double a = std::log(lo), b = std::log(hi);
    for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (count - 1));
    v.front() = lo;
    v.back() = hi;
    return v;
}

struct SliceResult {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    SamplePoint at_lo, at_hi;
    std::string failure;
    SamplePoint failure_point;
};

ComparabilitySpan sample_span(const Expr& f, const Box& box, int count, double t_lo, double t_hi) {
    const auto ts = logspace(t_lo, t_hi, count);
    const auto xs = linspace(box.xi_lo, box.xi_hi, count);
    const auto zs = linspace(box.zeta_lo, box.zeta_hi, count);
    std::vector<SliceResult> slices(ts.size());
    for_each_index(ts.size(), Execution::Parallel, [&](std::size_t i) {
        const double t = ts[i];
        SliceResult& r = slices[i];
        const double k = eval_rhs(f, t, 0.0, 0.0);
        if (!(k >= 0.0)) throw NegativeRhsError(t, 0.0, 0.0, k);
        for (double xi : xs) {
            for (double zeta : zs) {
                const double v = f(t, xi, zeta);
                if (!r.failure.empty()) continue;
                if (!(v >= 0.0)) {
                    r.failure = "RHS negative";
                    r.failure_point = {t, xi, zeta, v};
                    continue;
                }
                if (k == 0.0) {
                    if (v != 0.0) {
                        r.failure = "f(t,0,0) = 0 where f(t,xi,zeta) != 0";
                        r.failure_point = {t, xi, zeta, v};
                    }
                    continue;
                }
                const double ratio = v / k;
                if (!std::isfinite(ratio)) {
                    r.failure = "ratio not finite";
                    r.failure_point = {t, xi, zeta, ratio};
                    continue;
                }
                if (ratio < r.lo) {
                    r.lo = ratio;
                    r.at_lo = {t, xi, zeta, ratio};
                }
                if (ratio > r.hi) {
                    r.hi = ratio;
                    r.at_hi = {t, xi, zeta, ratio};
                }
            }
        }
    });

    ComparabilitySpan span;
    span.t_lo = t_lo;
    span.t_hi = t_hi;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& r : slices) {
        if (span.failure.empty() && !r.failure.empty()) {
            span.failure = r.failure;
            span.failure_point = r.failure_point;
        }
        if (r.lo < lo) {
            lo = r.lo;
            span.witness_lower = r.at_lo;
        }
        if (r.hi > hi) {
            hi = r.hi;
            span.witness_upper = r.at_hi;
        }
    }
    if (span.failure.empty() && !(lo <= hi)) span.failure = "no sample with f(t,0,0) > 0";
    span.c_lower = lo;
    span.C_upper = hi;
    span.holds = span.failure.empty() && lo > 0.0 && std::isfinite(hi);
    if (span.failure.empty() && !span.holds) {
        span.failure = "ratio bound not positive";
        span.failure_point = span.witness_lower;
    }
    return span;
}

}  // namespace

ComparabilityReport check_comparability(const Problem& p, const Box& box, int samples_per_axis) {
    if (samples_per_axis < 2) throw ParameterError("need at least 2 samples per axis");
    if (!(box.xi_lo <= 0.0 && box.xi_hi >= 0.0 && box.zeta_lo <= 0.0 && box.zeta_hi >= 0.0)) {
        throw ParameterError("comparability box must contain (0, 0)");
    }
    if (box.zeta_lo < 0.0) throw ParameterError("zeta range must lie in [0, inf)");
    const auto grid = make_grid(p);
    const double s_min = (*grid)[1];

    ComparabilityReport report;
    report.box = box;
    report.samples_per_axis = samples_per_axis;
    report.full = sample_span(p.f, box, samples_per_axis, s_min, p.t_max);
    report.near_origin = sample_span(p.f, box, samples_per_axis, s_min, std::max(s_min, std::min(0.05, p.t_max)));
    return report;
}

// --- Taylor factorization ----------------------------------------------------

TaylorFactorization::TaylorFactorization(Expr f, int ell, double s_min)
    : f_(std::move(f)), ell_(ell), s_min_(s_min) {
    if (ell < 0) throw ParameterError("ell must be nonnegative");
}

double TaylorFactorization::psi(double s, double xi, double zeta) const {
    if (s > s_min_) return f_(s, xi, zeta) / std::pow(s, ell_);
    const TaylorJet jet = f_.taylor_in_t(xi, zeta, ell_ + 4);
    double sum = 0.0;
    for (int k = ell_ + 4; k >= ell_; --k) sum = sum * s + jet.coeff(k);
    return sum;
}

double TaylorFactorization::psi_at_zero(double xi, double zeta) const {
    return f_.taylor_in_t(xi, zeta, ell_).coeff(ell_);
}

TaylorFactorization taylor_factor(const Problem& p, int ell) {
    const auto grid = make_grid(p);
    TaylorFactorization tf(p.f, ell, (*grid)[1]);
    const Box box = default_box(p);
    const double probes[][2] = {{0.0, 0.0},
                                {box.xi_lo, box.zeta_lo},
                                {box.xi_hi, box.zeta_lo},
                                {box.xi_lo, box.zeta_hi},
                                {box.xi_hi, box.zeta_hi}};
    for (const auto& pr : probes) {
        const TaylorJet jet = p.f.taylor_in_t(pr[0], pr[1], ell);
        double scale = 1.0;
        for (int k = 0; k <= ell; ++k) scale = std::max(scale, std::abs(jet.coeff(k)));
        for (int k = 0; k < ell; ++k) {
            if (std::abs(jet.coeff(k)) > 1e-12 * scale) {
                throw ParameterError("order overshoot: coefficient " + std::to_string(k) + " of f(t, " +
                                     std::to_string(pr[0]) + ", " + std::to_string(pr[1]) +
                                     ") is nonzero below ell = " + std::to_string(ell));
            }
        }
    }
    if (!(tf.psi_at_zero(0.0, 0.0) > 0.0)) {
        tf.warnings_.push_back("ell not exact order: psi(0, 0, 0) <= 0");
    }
    return tf;
}

}  // namespace ma_radial
