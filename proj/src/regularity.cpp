#include "ma_radial/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ma_radial/grid.hpp"

namespace ma_radial {

namespace {

constexpr double kJetThreshold = 1e-12;
constexpr double kSlopeTolerance = 0.05;
constexpr double kUnderflowFloor = 1e-290;
constexpr int kLatticePerOctave = 64;
constexpr int kLatticeOctaves = 60;

double checked(const UnivariateExpr& kappa, double t) {
    const double v = kappa(t);
    if (v < 0.0) throw NegativeRhsError(t, kappa.xi(), kappa.zeta(), v);
    return v;
}

// least squares slope of log y against log x
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double m = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(y[i] > 0.0)) return std::numeric_limits<double>::quiet_NaN();
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

bool strictly_decreasing_tail(const std::vector<double>& r, std::size_t count) {
    if (r.size() < count) return false;
    for (std::size_t i = r.size() - count + 1; i < r.size(); ++i) {
        if (!(r[i] < r[i - 1])) return false;
    }
    return true;
}

// values and derivative magnitudes of F at one point
struct PointJet {
    double F = 0.0, d_ell = 0.0, d_k = 0.0;
};

PointJet point_jet(const UnivariateExpr& F, double t, int ell, int k) {
    const TaylorJet j = F.jet(t, k);
    return {j.coeff(0), std::abs(j.derivative(ell)), std::abs(j.derivative(k))};
}

struct LatticeScan {
    std::vector<double> t;         // ascending lattice points below the largest x
    std::vector<PointJet> at;      // jets on the lattice
    std::vector<PointJet> running; // running maxima of d_ell, d_k; F is the lattice value
};

LatticeScan scan_lattice(const UnivariateExpr& F, double x_max, int ell, int k, Execution exec) {
    LatticeScan s;
    for (int m = kLatticePerOctave * kLatticeOctaves; m >= 0; --m) {
        const double t = std::exp2(-static_cast<double>(m) / kLatticePerOctave);
        if (t <= x_max) s.t.push_back(t);
    }
    s.at.resize(s.t.size());
    for_each_index(s.t.size(), exec, [&](std::size_t i) { s.at[i] = point_jet(F, s.t[i], ell, k); });
    s.running = s.at;
    for (std::size_t i = 1; i < s.running.size(); ++i) {
        s.running[i].d_ell = std::max(s.running[i].d_ell, s.running[i - 1].d_ell);
        s.running[i].d_k = std::max(s.running[i].d_k, s.running[i - 1].d_k);
    }
    return s;
}

// maxima over the lattice points at or below x, plus x itself
PointJet sup_up_to(const LatticeScan& s, double x, const PointJet& at_x) {
    PointJet out = at_x;
    const auto it = std::upper_bound(s.t.begin(), s.t.end(), x);
    if (it != s.t.begin()) {
        const auto& r = s.running[static_cast<std::size_t>(it - s.t.begin()) - 1];
        out.d_ell = std::max(out.d_ell, r.d_ell);
        out.d_k = std::max(out.d_k, r.d_k);
    }
    return out;
}

void check_x_grid(const std::vector<double>& x_grid) {
    if (x_grid.empty()) throw ParameterError("x_grid is empty");
    for (double x : x_grid) {
        if (!(x > 0.0 && x < 1.0)) throw ParameterError("x_grid point outside (0, 1)");
    }
}

// F nondecreasing on the scanned points and flat at 0
bool hypothesis(const UnivariateExpr& F, const LatticeScan& s, std::string& note) {
    for (std::size_t i = 1; i < s.t.size(); ++i) {
        const double a = s.at[i - 1].F, b = s.at[i].F;
        if (b < a - 1e-14 * std::abs(a)) {
            std::ostringstream os;
            os << "F decreases between t = " << s.t[i - 1] << " and t = " << s.t[i];
            note = os.str();
            return false;
        }
    }
    try {
        const OrderEstimate est = vanishing_order(F);
        if (est.tau.kind == Order::Kind::Infinite || est.tau.kind == Order::Kind::ZeroNearOrigin) return true;
        note = "F is not flat at 0 (vanishing order " + to_string(est.tau) + ")";
    } catch (const NegativeRhsError& e) {
        note = std::string("F is negative: ") + e.what();
    }
    return false;
}

std::vector<PointJet> jets_at(const UnivariateExpr& F, const std::vector<double>& x, int ell, int k,
                              Execution exec) {
    std::vector<PointJet> out(x.size());
    for_each_index(x.size(), exec, [&](std::size_t i) { out[i] = point_jet(F, x[i], ell, k); });
    return out;
}

// lattice points inside [min x, max x] where F is above the underflow floor
template <class Body>
void for_range_points(const LatticeScan& s, const std::vector<double>& x_grid, Body&& body) {
    const auto [lo, hi] = std::minmax_element(x_grid.begin(), x_grid.end());
    for (std::size_t i = 0; i < s.t.size(); ++i) {
        if (s.t[i] >= *lo && s.t[i] <= *hi && s.at[i].F >= kUnderflowFloor) body(s.t[i], s.at[i]);
    }
}

}  // namespace

std::string to_string(const Order& tau) {
    switch (tau.kind) {
        case Order::Kind::Finite: return std::to_string(tau.value);
        case Order::Kind::Infinite: return "inf";
        case Order::Kind::ZeroNearOrigin: return "zero-near-origin";
        case Order::Kind::Indeterminate: break;
    }
    return "indeterminate";
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Smooth: return "Smooth";
        case Verdict::NonSmoothAtOrigin: return "NonSmoothAtOrigin";
        case Verdict::Indeterminate: break;
    }
    return "Indeterminate";
}

OrderEstimate vanishing_order(const UnivariateExpr& kappa, int max_order, double t_max) {
    if (max_order < 0) throw ParameterError("max_order must be nonnegative");
    if (!(t_max > 0.0)) throw ParameterError("t_max must be positive");
    OrderEstimate est;

    const Grid grid = Grid::graded(t_max);
    std::vector<double> ts, ks;
    for (std::size_t i = 1; i <= 8; ++i) {
        ts.push_back(grid[i]);
        ks.push_back(checked(kappa, grid[i]));
    }
    est.slope = loglog_slope(ts, ks);

    const double t0 = std::min(0.25, t_max);
    bool all_zero = std::all_of(ks.begin(), ks.end(), [](double v) { return v == 0.0; });
    for (int j = 0; j <= 20; ++j) {
        const double t = std::ldexp(t0, -j);
        const double v = checked(kappa, t);
        est.decay.push_back({t, v, v / std::pow(t, max_order)});
        all_zero = all_zero && v == 0.0;
    }

    double amax = 0.0;
    try {
        const TaylorJet jet = kappa.jet(0.0, max_order);
        est.jet_available = true;
        for (int k = 0; k <= max_order; ++k) amax = std::max(amax, std::abs(jet.coeff(k)));
        for (int k = 0; k <= max_order; ++k) est.jet.push_back(amax > 0.0 ? jet.coeff(k) / amax : 0.0);
    } catch (const DomainError& e) {
        est.note = std::string("no jet at 0: ") + e.what();
    }

    if (est.jet_available && amax > 0.0) {
        int k = 0;
        while (!(std::abs(est.jet[static_cast<std::size_t>(k)]) > kJetThreshold)) ++k;
        if (std::abs(est.slope - k) <= kSlopeTolerance) {
            est.tau = Order::finite(k);
        } else {
            std::ostringstream os;
            os << "jet order " << k << " disagrees with log-log slope " << est.slope;
            est.note = os.str();
            est.tau = Order::indeterminate();
        }
        return est;
    }

    if (all_zero) {
        est.tau = Order::zero_near_origin();
        if (est.note.empty()) est.note = "kappa vanishes on every probe point";
        return est;
    }
    // kappa / t^max_order must fall to 0: over the last five nonzero ratios, or by underflow
    std::vector<double> ratios;
    for (const auto& row : est.decay) {
        if (row.value == 0.0) break;
        ratios.push_back(row.ratio);
    }
    const bool reaches_zero = ratios.size() < est.decay.size();
    const bool decaying = strictly_decreasing_tail(ratios, std::min<std::size_t>(5, ratios.size())) &&
                          (reaches_zero || ratios.size() >= 5);
    if (decaying) {
        est.tau = Order::infinite();
        if (est.note.empty()) est.note = "jet vanishes through order " + std::to_string(max_order);
    } else {
        est.tau = Order::indeterminate();
        est.note += (est.note.empty() ? "" : "; ") + std::string("kappa / t^") + std::to_string(max_order) +
                    " does not decay on the dyadic probe";
    }
    return est;
}

SmoothnessVerdict smoothness_verdict(const Order& tau, int n) {
    if (n < 1) throw ParameterError("dimension must be positive");
    SmoothnessVerdict v;
    v.tau = tau;
    v.n = n;
    switch (tau.kind) {
        case Order::Kind::Infinite:
        case Order::Kind::ZeroNearOrigin: v.verdict = Verdict::Smooth; break;
        case Order::Kind::Finite:
            v.verdict = tau.value % n == 0 ? Verdict::Smooth : Verdict::NonSmoothAtOrigin;
            break;
        case Order::Kind::Indeterminate: v.verdict = Verdict::Indeterminate; break;
    }
    return v;
}

SmoothnessVerdict smoothness_verdict(const OrderEstimate& est, int n) {
    SmoothnessVerdict v = smoothness_verdict(est.tau, n);
    v.jet = est.jet;
    v.decay = est.decay;
    v.note = est.note;
    return v;
}

std::vector<double> default_x_grid(int refine) {
    if (refine < 1) throw ParameterError("refine must be at least 1");
    const int count = 64 * refine;
    std::vector<double> x(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) x[static_cast<std::size_t>(j)] = std::exp2(-1.0 - 19.0 * j / count);
    return x;
}

HadamardReport hadamard_check(const UnivariateExpr& F, int ell, int k, const std::vector<double>& x_grid,
                              Execution exec) {
    if (!(ell >= 1 && ell <= k - 1)) throw ParameterError("need 1 <= ell <= k - 1");
    check_x_grid(x_grid);
    HadamardReport rep;
    rep.ell = ell;
    rep.k = k;

    const double x_max = *std::max_element(x_grid.begin(), x_grid.end());
    const LatticeScan scan = scan_lattice(F, x_max, ell, k, exec);
    rep.hypothesis_ok = hypothesis(F, scan, rep.hypothesis_note);

    const auto at_x = jets_at(F, x_grid, ell, k, exec);
    const double a = static_cast<double>(k - ell) / k, b = static_cast<double>(ell) / k;
    auto ratio = [&](double x, const PointJet& at) {
        const PointJet sup = sup_up_to(scan, x, at);
        const double lhs = sup.d_ell, rhs = std::pow(at.F, a) * std::pow(sup.d_k, b);
        const double c = rhs > 0.0 ? lhs / rhs : (lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
        return HadamardSample{x, lhs, rhs, c};
    };
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        if (!(at_x[i].F >= kUnderflowFloor)) {
            ++rep.excluded;
            continue;
        }
        const HadamardSample smp = ratio(x_grid[i], at_x[i]);
        rep.samples.push_back(smp);
        rep.observed_constant = std::max(rep.observed_constant, smp.ratio);
    }
    for_range_points(scan, x_grid, [&](double t, const PointJet& at) {
        rep.observed_constant = std::max(rep.observed_constant, ratio(t, at).ratio);
    });
    return rep;
}

CorollaryReport corollary_bound_check(const UnivariateExpr& F, int ell, int k_min, double epsilon,
                                      const std::vector<double>& x_grid, Execution exec) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ParameterError("epsilon must lie in (0, 1)");
    if (ell < 1) throw ParameterError("ell must be at least 1");
    check_x_grid(x_grid);
    CorollaryReport rep;
    rep.ell = ell;
    rep.epsilon = epsilon;
    int k = std::max(k_min, ell + 1);
    while (static_cast<double>(k - ell) / k < 1.0 - epsilon) ++k;
    rep.k = k;

    const double x_max = *std::max_element(x_grid.begin(), x_grid.end());
    const LatticeScan scan = scan_lattice(F, x_max, ell, k, exec);
    rep.hypothesis_ok = hypothesis(F, scan, rep.hypothesis_note);

    const auto at_x = jets_at(F, x_grid, ell, k, exec);
    auto ratio = [&](double x, const PointJet& at) {
        const double lhs = sup_up_to(scan, x, at).d_ell, rhs = std::pow(at.F, 1.0 - epsilon);
        return HadamardSample{x, lhs, rhs, lhs / rhs};
    };
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        if (!(at_x[i].F >= kUnderflowFloor)) continue;
        const HadamardSample smp = ratio(x_grid[i], at_x[i]);
        rep.samples.push_back(smp);
        rep.constant = std::max(rep.constant, smp.ratio);
    }
    for_range_points(scan, x_grid, [&](double t, const PointJet& at) {
        rep.constant = std::max(rep.constant, ratio(t, at).ratio);
    });
    return rep;
}

FlatnessTable flatness_probe(const std::function<double(double)>& h, const std::vector<int>& orders_N, double t0,
                             int J) {
    if (!(t0 > 0.0) || J < 0) throw ParameterError("flatness probe needs t0 > 0 and J >= 0");
    FlatnessTable table;
    table.t0 = t0;
    std::vector<double> t, v;
    for (int j = 0; j <= J; ++j) {
        const double tj = std::ldexp(t0, -j);
        double hv;
        try {
            hv = h(tj);
        } catch (const std::exception& e) {
            table.truncated = true;
            std::ostringstream os;
            os << "evaluation failed at t = " << tj << ": " << e.what();
            table.note = os.str();
            break;
        }
        t.push_back(tj);
        v.push_back(hv);
        if (hv == 0.0) break;
    }
    const bool ends_in_zero = !v.empty() && v.back() == 0.0;

    table.flat = !orders_N.empty();
    for (int N : orders_N) {
        FlatnessRow row;
        row.N = N;
        std::vector<double> ratios;
        for (std::size_t j = 0; j < t.size(); ++j) {
            const double r = std::abs(v[j]) / std::pow(t[j], N);
            row.rows.push_back({t[j], v[j], r});
            ratios.push_back(r);
        }
        const std::size_t need = ends_in_zero ? std::min<std::size_t>(5, ratios.size()) : 5;
        row.decaying = !ratios.empty() && strictly_decreasing_tail(ratios, need);
        table.flat = table.flat && row.decaying;
        table.orders.push_back(std::move(row));
    }
    return table;
}

}  // namespace ma_radial
