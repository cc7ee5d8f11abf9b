#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ma_radial/expr.hpp"
#include "ma_radial/kernels.hpp"

namespace ma_radial {

/// Vanishing order of kappa at t = 0.
struct Order {
    enum class Kind { Finite, Infinite, ZeroNearOrigin, Indeterminate };
    Kind kind = Kind::Indeterminate;
    int value = 0;  ///< meaningful for Finite only

    static Order finite(int k) { return {Kind::Finite, k}; }
    static Order infinite() { return {Kind::Infinite, 0}; }
    static Order zero_near_origin() { return {Kind::ZeroNearOrigin, 0}; }
    static Order indeterminate() { return {Kind::Indeterminate, 0}; }

    bool is_finite() const { return kind == Kind::Finite; }
    friend bool operator==(const Order&, const Order&) = default;
};

std::string to_string(const Order& tau);

struct ProbeRow {
    double t = 0.0;
    double value = 0.0;
    double ratio = 0.0;  ///< value / t^N
};

/// Evidence behind a vanishing-order estimate.
struct OrderEstimate {
    Order tau;
    bool jet_available = false;
    std::vector<double> jet;  ///< coefficients normalized by the largest magnitude
    double slope = 0.0;       ///< log-log slope over the 8 smallest positive grid nodes
    std::vector<ProbeRow> decay;  ///< kappa(t) / t^max_order on the dyadic probe
    std::string note;
};

/// Smallest k with normalized jet coefficient above 1e-12, confirmed by the
/// log-log slope of kappa over the smallest nodes of the default grid on
/// [0, t_max]. Without a jet at 0 (or with an all-zero jet) the dyadic probe
/// decides between Infinite, ZeroNearOrigin and Indeterminate.
/// Throws NegativeRhsError when a sampled kappa is negative.
OrderEstimate vanishing_order(const UnivariateExpr& kappa, int max_order = kDefaultJetOrder, double t_max = 0.5);

enum class Verdict { Smooth, NonSmoothAtOrigin, Indeterminate };

std::string to_string(Verdict v);

struct SmoothnessVerdict {
    Order tau;
    int n = 0;
    Verdict verdict = Verdict::Indeterminate;
    std::vector<double> jet;
    std::vector<ProbeRow> decay;
    std::string note;
};

/// Smooth iff tau is 0, infinite, zero near the origin, or a positive
/// multiple of n.
SmoothnessVerdict smoothness_verdict(const Order& tau, int n);
SmoothnessVerdict smoothness_verdict(const OrderEstimate& est, int n);

struct HadamardSample {
    double x = 0.0;
    double lhs = 0.0;  ///< max_{t<=x} |F^(ell)|
    double rhs = 0.0;  ///< F(x)^{(k-ell)/k} max_{t<=x} |F^(k)|^{ell/k}
    double ratio = 0.0;
};

struct HadamardReport {
    int ell = 0, k = 0;
    double observed_constant = 0.0;
    bool hypothesis_ok = false;
    std::string hypothesis_note;
    std::vector<HadamardSample> samples;
    int excluded = 0;  ///< x with F(x) below 1e-290
};

/// 64 points 2^{-1 - 19 j / 64}, j = 0..63, descending from 1/2; refine > 1
/// gives the superset with 64 * refine points.
std::vector<double> default_x_grid(int refine = 1);

/// Maxima over [0, x] are taken on the fixed lattice 2^{-m/64} below x plus
/// x itself, so every sample depends on x alone. observed_constant is the
/// largest lhs / rhs over the x_grid points and the lattice points between
/// min and max x_grid; samples lists the x_grid points. Derivatives come from
/// jets recentered at each point.
HadamardReport hadamard_check(const UnivariateExpr& F, int ell, int k, const std::vector<double>& x_grid,
                              Execution exec = Execution::Parallel);

struct CorollaryReport {
    int ell = 0;
    int k = 0;  ///< smallest k >= k_min with (k - ell) / k >= 1 - epsilon
    double epsilon = 0.0;
    double constant = 0.0;  ///< max over x of sup_{t<=x} |F^(ell)| / F(x)^{1-epsilon}
    bool hypothesis_ok = false;
    std::string hypothesis_note;
    std::vector<HadamardSample> samples;  ///< rhs holds F(x)^{1-epsilon}
};

CorollaryReport corollary_bound_check(const UnivariateExpr& F, int ell, int k_min, double epsilon,
                                      const std::vector<double>& x_grid, Execution exec = Execution::Parallel);

struct FlatnessRow {
    int N = 0;
    std::vector<ProbeRow> rows;
    bool decaying = false;
};

struct FlatnessTable {
    double t0 = 0.25;
    std::vector<FlatnessRow> orders;
    bool flat = false;
    bool truncated = false;
    std::string note;
};

/// h(t_j) / t_j^N on t_j = t0 2^{-j}, j = 0..J, stopping after the first
/// exact zero. N is decaying when the last five ratios (fewer if the probe
/// ended in a zero) strictly decrease.
FlatnessTable flatness_probe(const std::function<double(double)>& h, const std::vector<int>& orders_N,
                             double t0 = 0.25, int J = 20);

}  // namespace ma_radial
