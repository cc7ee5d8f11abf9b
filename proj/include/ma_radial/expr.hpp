#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ma_radial/error.hpp"
#include "ma_radial/jet.hpp"

namespace ma_radial {

/// Default (and maximum useful) jet order used for vanishing-order tests.
inline constexpr int kDefaultJetOrder = 12;

enum class Variable { T, Xi, Zeta };

/// Value and first partials of an expression f(t, xi, zeta).
struct Partials {
    double f = 0.0;
    double f_t = 0.0;
    double f_xi = 0.0;
    double f_zeta = 0.0;
};

/// Immutable parsed scalar expression in the variables t, xi, zeta.
///
/// Grammar (whitespace-insensitive):
///
///     expr    := term (('+' | '-') term)*
///     term    := unary (('*' | '/') unary)*
///     unary   := '-' unary | power
///     power   := primary ('^' unary)?          right-associative
///     primary := number | t | xi | zeta | fn '(' expr ')' | '(' expr ')'
///     fn      := exp | log | sin | cos | sqrt | abs
///
/// Exponents that do not reference a variable and evaluate to an integer are
/// stored as integer powers (valid for negative bases, exact in jets).
/// Copies share the node storage.
class Expr {
public:
    struct Node;

    /// Parses `source`; throws ParseError on malformed input, unknown
    /// identifiers, or wrong function arity.
    static Expr parse(std::string_view source);

    double operator()(double t, double xi, double zeta) const;
    Partials partials(double t, double xi, double zeta) const;
    TaylorJet taylor_in_t(double xi, double zeta, int order, double center = 0.0) const;

    bool depends_on(Variable v) const;

    /// Fully parenthesised form; reparses to the same tree.
    std::string to_string() const;

private:
    explicit Expr(std::shared_ptr<const std::vector<Node>> nodes) : nodes_(std::move(nodes)) {}

    std::shared_ptr<const std::vector<Node>> nodes_;
};

inline Expr parse(std::string_view source) { return Expr::parse(source); }

inline double eval(const Expr& e, double t, double xi, double zeta) { return e(t, xi, zeta); }

inline Partials partials(const Expr& e, double t, double xi, double zeta) {
    return e.partials(t, xi, zeta);
}

/// Jet of t -> e(t, xi, zeta) at t = center (default 0). Throws
/// SingularJetError when e has no expansion there (e.g. 1/t at 0) and
/// ParameterError when `order` is negative.
inline TaylorJet taylor_in_t(const Expr& e, double xi, double zeta, int order, double center = 0.0) {
    return e.taylor_in_t(xi, zeta, order, center);
}

/// Restriction t -> e(t, xi, zeta) of an expression to one variable.
class UnivariateExpr {
public:
    UnivariateExpr(Expr e, double xi = 0.0, double zeta = 0.0)
        : expr_(std::move(e)), xi_(xi), zeta_(zeta) {}

    double operator()(double t) const { return expr_(t, xi_, zeta_); }

    /// Value at t, except at t = 0 where an expression that is undefined
    /// there (exp(-1/t)) is replaced by its right limit, probed at 1e-300.
    double value_or_right_limit(double t) const;

    double derivative(double t, int k) const;
    TaylorJet jet(double center, int order) const { return expr_.taylor_in_t(xi_, zeta_, order, center); }

    const Expr& expr() const noexcept { return expr_; }
    double xi() const noexcept { return xi_; }
    double zeta() const noexcept { return zeta_; }

private:
    Expr expr_;
    double xi_;
    double zeta_;
};

}  // namespace ma_radial
