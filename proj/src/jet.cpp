#include "ma_radial/jet.hpp"

#include <cassert>
#include <cmath>
#include <utility>

namespace ma_radial {

using detail::DomainFailure;

TaylorJet::TaylorJet(double center, std::vector<double> coefficients)
    : center_(center), coeffs_(std::move(coefficients)) {
    assert(!coeffs_.empty());
}

TaylorJet TaylorJet::constant(double center, double value, int order) {
    std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
    c[0] = value;
    return {center, std::move(c)};
}

TaylorJet TaylorJet::variable(double center, int order) {
    std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
    c[0] = center;
    if (order >= 1) c[1] = 1.0;
    return {center, std::move(c)};
}

double TaylorJet::derivative(int k) const {
    double factorial = 1.0;
    for (int i = 2; i <= k; ++i) factorial *= i;
    return factorial * coeffs_[static_cast<std::size_t>(k)];
}

double TaylorJet::evaluate(double x) const {
    const double h = x - center_;
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * h + *it;
    return acc;
}

TaylorJet TaylorJet::operator-() const {
    TaylorJet r = *this;
    for (double& c : r.coeffs_) c = -c;
    return r;
}

TaylorJet& TaylorJet::operator+=(const TaylorJet& other) {
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
    return *this;
}

TaylorJet& TaylorJet::operator-=(const TaylorJet& other) {
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
    return *this;
}

TaylorJet operator*(const TaylorJet& a, const TaylorJet& b) {
    const std::size_t n = a.coeffs_.size();
    std::vector<double> c(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i <= k; ++i) s += a.coeffs_[i] * b.coeffs_[k - i];
        c[k] = s;
    }
    return {a.center_, std::move(c)};
}

TaylorJet operator/(const TaylorJet& a, const TaylorJet& b) {
    if (b.coeffs_[0] == 0.0) throw DomainFailure{"division by a series vanishing at the center", true};
    const std::size_t n = a.coeffs_.size();
    std::vector<double> q(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double s = a.coeffs_[k];
        for (std::size_t i = 1; i <= k; ++i) s -= b.coeffs_[i] * q[k - i];
        q[k] = s / b.coeffs_[0];
    }
    return {a.center_, std::move(q)};
}

TaylorJet exp(const TaylorJet& a) {
    const auto ac = a.coefficients();
    const std::size_t n = ac.size();
    std::vector<double> e(n, 0.0);
    e[0] = std::exp(ac[0]);
    for (std::size_t k = 1; k < n; ++k) {
        double s = 0.0;
        for (std::size_t j = 1; j <= k; ++j) s += static_cast<double>(j) * ac[j] * e[k - j];
        e[k] = s / static_cast<double>(k);
    }
    return {a.center(), std::move(e)};
}

TaylorJet log(const TaylorJet& a) {
    const auto ac = a.coefficients();
    if (ac[0] < 0.0) throw DomainFailure{"log of a negative value", false};
    if (ac[0] == 0.0) throw DomainFailure{"log of a series vanishing at the center", true};
    const std::size_t n = ac.size();
    std::vector<double> l(n, 0.0);
    l[0] = std::log(ac[0]);
    for (std::size_t k = 1; k < n; ++k) {
        double s = 0.0;
        for (std::size_t j = 1; j < k; ++j) s += static_cast<double>(j) * l[j] * ac[k - j];
        l[k] = (ac[k] - s / static_cast<double>(k)) / ac[0];
    }
    return {a.center(), std::move(l)};
}

namespace {

std::pair<std::vector<double>, std::vector<double>> sin_cos(std::span<const double> ac) {
    const std::size_t n = ac.size();
    std::vector<double> s(n, 0.0), c(n, 0.0);
    s[0] = std::sin(ac[0]);
    c[0] = std::cos(ac[0]);
    for (std::size_t k = 1; k < n; ++k) {
        double ss = 0.0, cc = 0.0;
        for (std::size_t j = 1; j <= k; ++j) {
            ss += static_cast<double>(j) * ac[j] * c[k - j];
            cc += static_cast<double>(j) * ac[j] * s[k - j];
        }
        s[k] = ss / static_cast<double>(k);
        c[k] = -cc / static_cast<double>(k);
    }
    return {std::move(s), std::move(c)};
}

}  // namespace

TaylorJet sin(const TaylorJet& a) { return {a.center(), sin_cos(a.coefficients()).first}; }

TaylorJet cos(const TaylorJet& a) { return {a.center(), sin_cos(a.coefficients()).second}; }

TaylorJet sqrt(const TaylorJet& a) {
    const auto ac = a.coefficients();
    if (ac[0] < 0.0) throw DomainFailure{"sqrt of a negative value", false};
    if (ac[0] == 0.0) throw DomainFailure{"sqrt of a series vanishing at the center", true};
    const std::size_t n = ac.size();
    std::vector<double> r(n, 0.0);
    r[0] = std::sqrt(ac[0]);
    for (std::size_t k = 1; k < n; ++k) {
        double s = ac[k];
        for (std::size_t j = 1; j < k; ++j) s -= r[j] * r[k - j];
        r[k] = s / (2.0 * r[0]);
    }
    return {a.center(), std::move(r)};
}

TaylorJet abs(const TaylorJet& a) {
    if (a[0] > 0.0) return a;
    if (a[0] < 0.0) return -a;
    throw DomainFailure{"abs is not differentiable at 0", false};
}

TaylorJet pow_int(const TaylorJet& a, int k) {
    if (k < 0) {
        return TaylorJet::constant(a.center(), 1.0, a.order()) / pow_int(a, -k);
    }
    TaylorJet result = TaylorJet::constant(a.center(), 1.0, a.order());
    TaylorJet base = a;
    unsigned e = static_cast<unsigned>(k);
    while (e != 0) {
        if (e & 1u) result = result * base;
        e >>= 1;
        if (e != 0) base = base * base;
    }
    return result;
}

TaylorJet pow_real(const TaylorJet& a, const TaylorJet& b) {
    const auto ac = a.coefficients();
    if (ac[0] < 0.0) throw DomainFailure{"real power of a negative base", false};
    if (ac[0] == 0.0) throw DomainFailure{"real power of a series vanishing at the center", true};
    bool constant_exponent = true;
    for (int k = 1; k <= b.order(); ++k) constant_exponent = constant_exponent && b[k] == 0.0;
    if (!constant_exponent) return exp(b * log(a));
    // p' a = c a' p  =>  p_k = 1/(k a_0) sum_{j=1..k} ((c+1) j - k) a_j p_{k-j}
    const double c = b[0];
    const std::size_t n = ac.size();
    std::vector<double> p(n, 0.0);
    p[0] = std::pow(ac[0], c);
    for (std::size_t k = 1; k < n; ++k) {
        double s = 0.0;
        for (std::size_t j = 1; j <= k; ++j) {
            s += ((c + 1.0) * static_cast<double>(j) - static_cast<double>(k)) * ac[j] * p[k - j];
        }
        p[k] = s / (static_cast<double>(k) * ac[0]);
    }
    return {a.center(), std::move(p)};
}

// --- Dual3 -------------------------------------------------------------------

namespace {

Dual3 chain(double value, double slope, const Dual3& a) {
    return {value, {slope * a.d[0], slope * a.d[1], slope * a.d[2]}};
}

}  // namespace

Dual3 operator+(const Dual3& a, const Dual3& b) {
    return {a.v + b.v, {a.d[0] + b.d[0], a.d[1] + b.d[1], a.d[2] + b.d[2]}};
}

Dual3 operator-(const Dual3& a, const Dual3& b) {
    return {a.v - b.v, {a.d[0] - b.d[0], a.d[1] - b.d[1], a.d[2] - b.d[2]}};
}

Dual3 operator*(const Dual3& a, const Dual3& b) {
    Dual3 r{a.v * b.v, {}};
    for (int i = 0; i < 3; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
    return r;
}

Dual3 operator/(const Dual3& a, const Dual3& b) {
    if (b.v == 0.0) throw DomainFailure{"division by zero", false};
    const double q = a.v / b.v;
    Dual3 r{q, {}};
    for (int i = 0; i < 3; ++i) r.d[i] = (a.d[i] - q * b.d[i]) / b.v;
    return r;
}

Dual3 exp(const Dual3& a) {
    const double e = std::exp(a.v);
    return chain(e, e, a);
}

Dual3 log(const Dual3& a) {
    if (a.v <= 0.0) throw DomainFailure{"log of a nonpositive value", false};
    return chain(std::log(a.v), 1.0 / a.v, a);
}

Dual3 sin(const Dual3& a) { return chain(std::sin(a.v), std::cos(a.v), a); }

Dual3 cos(const Dual3& a) { return chain(std::cos(a.v), -std::sin(a.v), a); }

Dual3 sqrt(const Dual3& a) {
    if (a.v < 0.0) throw DomainFailure{"sqrt of a negative value", false};
    if (a.v == 0.0) throw DomainFailure{"sqrt is not differentiable at 0", false};
    const double r = std::sqrt(a.v);
    return chain(r, 0.5 / r, a);
}

Dual3 abs(const Dual3& a) {
    if (a.v == 0.0) throw DomainFailure{"abs is not differentiable at 0", false};
    return a.v > 0.0 ? a : -a;
}

Dual3 pow_int(const Dual3& a, int k) {
    if (k == 0) return {1.0, {}};
    if (k < 0 && a.v == 0.0) throw DomainFailure{"division by zero", false};
    const double value = pow_int(a.v, k);
    const double slope = static_cast<double>(k) * pow_int(a.v, k - 1);
    return chain(value, slope, a);
}

Dual3 pow_real(const Dual3& a, const Dual3& b) {
    const bool constant_exponent = b.d[0] == 0.0 && b.d[1] == 0.0 && b.d[2] == 0.0;
    if (constant_exponent) {
        const double c = b.v;
        if (a.v < 0.0) throw DomainFailure{"real power of a negative base", false};
        if (a.v == 0.0) {
            if (c > 1.0) return {0.0, {}};
            throw DomainFailure{"real power is not differentiable at 0", false};
        }
        return chain(std::pow(a.v, c), c * std::pow(a.v, c - 1.0), a);
    }
    if (a.v <= 0.0) throw DomainFailure{"real power with variable exponent needs a positive base", false};
    return exp(b * log(a));
}

// --- scalar helpers ----------------------------------------------------------

double pow_int(double a, int k) {
    if (k < 0) {
        if (a == 0.0) throw DomainFailure{"division by zero", false};
        return 1.0 / pow_int(a, -k);
    }
    double result = 1.0;
    double base = a;
    unsigned e = static_cast<unsigned>(k);
    while (e != 0) {
        if (e & 1u) result *= base;
        e >>= 1;
        if (e != 0) base *= base;
    }
    return result;
}

double pow_real(double a, double b) {
    if (a < 0.0) throw DomainFailure{"real power of a negative base", false};
    if (a == 0.0 && b < 0.0) throw DomainFailure{"division by zero", false};
    return std::pow(a, b);
}

}  // namespace ma_radial
