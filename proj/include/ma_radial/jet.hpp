#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace ma_radial {

/// Truncated power series  h(x) ~ sum_k a_k (x - center)^k,  k = 0..order.
///
/// Arithmetic between jets is exact truncated power-series arithmetic; the
/// elementary functions use the usual convolution recurrences. Operations
/// that have no jet at the expansion point (division by a series with zero
/// constant term, log/sqrt/pow at 0, abs at 0) fail with a domain failure
/// that the expression evaluator turns into SingularJetError/DomainError.
class TaylorJet {
public:
    TaylorJet() = default;
    TaylorJet(double center, std::vector<double> coefficients);

    static TaylorJet constant(double center, double value, int order);
    static TaylorJet variable(double center, int order);

    double center() const noexcept { return center_; }
    int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    std::span<const double> coefficients() const noexcept { return coeffs_; }
    double operator[](std::size_t k) const { return coeffs_[k]; }
    double coeff(int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
    double& operator[](std::size_t k) { return coeffs_[k]; }

    /// k-th derivative at the center, k! * a_k.
    double derivative(int k) const;

    /// Horner evaluation of the truncated series at x.
    double evaluate(double x) const;

    TaylorJet operator-() const;
    TaylorJet& operator+=(const TaylorJet& other);
    TaylorJet& operator-=(const TaylorJet& other);

    friend TaylorJet operator+(TaylorJet a, const TaylorJet& b) { return a += b; }
    friend TaylorJet operator-(TaylorJet a, const TaylorJet& b) { return a -= b; }
    friend TaylorJet operator*(const TaylorJet& a, const TaylorJet& b);
    friend TaylorJet operator/(const TaylorJet& a, const TaylorJet& b);

private:
    double center_ = 0.0;
    std::vector<double> coeffs_;
};

TaylorJet exp(const TaylorJet& a);
TaylorJet log(const TaylorJet& a);
TaylorJet sin(const TaylorJet& a);
TaylorJet cos(const TaylorJet& a);
TaylorJet sqrt(const TaylorJet& a);
TaylorJet abs(const TaylorJet& a);
TaylorJet pow_int(const TaylorJet& a, int k);
TaylorJet pow_real(const TaylorJet& a, const TaylorJet& b);

/// Forward-mode dual number carrying the gradient with respect to
/// (t, xi, zeta).
struct Dual3 {
    double v = 0.0;
    std::array<double, 3> d{};

    Dual3 operator-() const { return {-v, {-d[0], -d[1], -d[2]}}; }
};

Dual3 operator+(const Dual3& a, const Dual3& b);
Dual3 operator-(const Dual3& a, const Dual3& b);
Dual3 operator*(const Dual3& a, const Dual3& b);
Dual3 operator/(const Dual3& a, const Dual3& b);
Dual3 exp(const Dual3& a);
Dual3 log(const Dual3& a);
Dual3 sin(const Dual3& a);
Dual3 cos(const Dual3& a);
Dual3 sqrt(const Dual3& a);
Dual3 abs(const Dual3& a);
Dual3 pow_int(const Dual3& a, int k);
Dual3 pow_real(const Dual3& a, const Dual3& b);

double pow_int(double a, int k);
double pow_real(double a, double b);

namespace detail {

/// Thrown by the scalar kernels above; carries no context. The expression
/// evaluator catches it and rethrows a DomainError naming the sub-expression.
struct DomainFailure {
    const char* what;
    bool singular_jet;
};

}  // namespace detail

}  // namespace ma_radial
