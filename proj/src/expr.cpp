#include "ma_radial/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>

namespace ma_radial {

enum class Op { Const, VarT, VarXi, VarZeta, Add, Sub, Mul, Div, Neg, PowInt, Pow, Exp, Log, Sin, Cos, Sqrt, Abs };

struct Expr::Node {
    Op op = Op::Const;
    double value = 0.0;
    int power = 0;
    int lhs = -1;
    int rhs = -1;
    unsigned vars = 0;  // bitmask of referenced variables
};

using Node = Expr::Node;

namespace {

constexpr unsigned kBitT = 1u, kBitXi = 2u, kBitZeta = 4u;

struct FunctionName {
    std::string_view name;
    Op op;
};

constexpr FunctionName kFunctions[] = {
    {"exp", Op::Exp}, {"log", Op::Log}, {"sin", Op::Sin},
    {"cos", Op::Cos}, {"sqrt", Op::Sqrt}, {"abs", Op::Abs},
};

// --- printing ---------------------------------------------------------------

std::string format_number(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

std::string print(const std::vector<Node>& nodes, int i) {
    const Node& n = nodes[static_cast<std::size_t>(i)];
    auto bin = [&](const char* op) {
        return "(" + print(nodes, n.lhs) + " " + op + " " + print(nodes, n.rhs) + ")";
    };
    auto fn = [&](const char* name) { return std::string(name) + "(" + print(nodes, n.lhs) + ")"; };
    switch (n.op) {
        case Op::Const: return format_number(n.value);
        case Op::VarT: return "t";
        case Op::VarXi: return "xi";
        case Op::VarZeta: return "zeta";
        case Op::Add: return bin("+");
        case Op::Sub: return bin("-");
        case Op::Mul: return bin("*");
        case Op::Div: return bin("/");
        case Op::Pow: return bin("^");
        case Op::Neg: return "(-" + print(nodes, n.lhs) + ")";
        case Op::PowInt:
            return "(" + print(nodes, n.lhs) + " ^ " +
                   (n.power < 0 ? "(" + std::to_string(n.power) + ")" : std::to_string(n.power)) + ")";
        case Op::Exp: return fn("exp");
        case Op::Log: return fn("log");
        case Op::Sin: return fn("sin");
        case Op::Cos: return fn("cos");
        case Op::Sqrt: return fn("sqrt");
        case Op::Abs: return fn("abs");
    }
    return {};
}

// --- generic evaluation -----------------------------------------------------

double op_div(double a, double b) {
    if (b == 0.0) throw detail::DomainFailure{"division by zero", false};
    return a / b;
}
double op_log(double a) {
    if (a <= 0.0) throw detail::DomainFailure{"log of a nonpositive value", false};
    return std::log(a);
}
double op_sqrt(double a) {
    if (a < 0.0) throw detail::DomainFailure{"sqrt of a negative value", false};
    return std::sqrt(a);
}
template <class T> T op_div(const T& a, const T& b) { return a / b; }
template <class T> T op_log(const T& a) { return log(a); }
template <class T> T op_sqrt(const T& a) { return sqrt(a); }

using std::abs;
using std::cos;
using std::exp;
using std::sin;

template <class T, class MakeConst>
T evaluate(const std::vector<Node>& nodes, std::vector<T>& v, const T& t, const T& xi, const T& zeta,
           MakeConst make_const) {
    std::size_t i = 0;
    try {
        for (; i < nodes.size(); ++i) {
            const Node& n = nodes[i];
            auto a = [&]() -> const T& { return v[static_cast<std::size_t>(n.lhs)]; };
            auto b = [&]() -> const T& { return v[static_cast<std::size_t>(n.rhs)]; };
            switch (n.op) {
                case Op::Const: v[i] = make_const(n.value); break;
                case Op::VarT: v[i] = t; break;
                case Op::VarXi: v[i] = xi; break;
                case Op::VarZeta: v[i] = zeta; break;
                case Op::Add: v[i] = a() + b(); break;
                case Op::Sub: v[i] = a() - b(); break;
                case Op::Mul: v[i] = a() * b(); break;
                case Op::Div: v[i] = op_div(a(), b()); break;
                case Op::Neg: v[i] = -a(); break;
                case Op::PowInt: v[i] = pow_int(a(), n.power); break;
                case Op::Pow: v[i] = pow_real(a(), b()); break;
                case Op::Exp: v[i] = exp(a()); break;
                case Op::Log: v[i] = op_log(a()); break;
                case Op::Sin: v[i] = sin(a()); break;
                case Op::Cos: v[i] = cos(a()); break;
                case Op::Sqrt: v[i] = op_sqrt(a()); break;
                case Op::Abs: v[i] = abs(a()); break;
            }
        }
    } catch (const detail::DomainFailure& failure) {
        const std::string where = print(nodes, static_cast<int>(i));
        if (failure.singular_jet) throw SingularJetError(failure.what, where);
        throw DomainError(failure.what, where);
    }
    return v.back();
}

// --- parser -------------------------------------------------------------------

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    std::vector<Node> run() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("empty expression", pos_);
        parse_expr();
        skip_ws();
        if (pos_ < src_.size()) fail_unexpected();
        return std::move(nodes_);
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;
    std::vector<Node> nodes_;

    int add(Node n) {
        if (n.lhs >= 0) n.vars |= nodes_[static_cast<std::size_t>(n.lhs)].vars;
        if (n.rhs >= 0) n.vars |= nodes_[static_cast<std::size_t>(n.rhs)].vars;
        nodes_.push_back(n);
        return static_cast<int>(nodes_.size()) - 1;
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail_unexpected() {
        if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
        throw ParseError(std::string("unexpected token '") + src_[pos_] + "'", pos_);
    }

    int parse_expr() {
        int lhs = parse_term();
        for (;;) {
            if (accept('+')) lhs = add({Op::Add, 0, 0, lhs, parse_term()});
            else if (accept('-')) lhs = add({Op::Sub, 0, 0, lhs, parse_term()});
            else return lhs;
        }
    }

    int parse_term() {
        int lhs = parse_unary();
        for (;;) {
            if (accept('*')) lhs = add({Op::Mul, 0, 0, lhs, parse_unary()});
            else if (accept('/')) lhs = add({Op::Div, 0, 0, lhs, parse_unary()});
            else return lhs;
        }
    }

    int parse_unary() {
        if (accept('-')) return add({Op::Neg, 0, 0, parse_unary(), -1});
        return parse_power();
    }

    int parse_power() {
        const int base = parse_primary();
        if (!accept('^')) return base;
        const int first = static_cast<int>(nodes_.size());
        const int exponent = parse_unary();
        const Node& e = nodes_[static_cast<std::size_t>(exponent)];
        if (e.vars == 0) {
            // the exponent subtree occupies nodes [first, exponent]
            std::vector<Node> sub(nodes_.begin() + first, nodes_.begin() + exponent + 1);
            for (Node& n : sub) {
                if (n.lhs >= 0) n.lhs -= first;
                if (n.rhs >= 0) n.rhs -= first;
            }
            std::vector<double> scratch(sub.size());
            double value = std::numeric_limits<double>::quiet_NaN();
            try {
                value = evaluate<double>(sub, scratch, 0.0, 0.0, 0.0, [](double c) { return c; });
            } catch (const DomainError&) {
            }
            if (std::isfinite(value) && value == std::round(value) && std::abs(value) <= 1024.0) {
                // exponent nodes stay in the vector but are unreferenced
                return add({Op::PowInt, 0, static_cast<int>(value), base, -1});
            }
        }
        return add({Op::Pow, 0, 0, base, exponent});
    }

    int parse_primary() {
        skip_ws();
        if (pos_ >= src_.size()) fail_unexpected();
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            const int inner = parse_expr();
            if (!accept(')')) {
                skip_ws();
                if (pos_ < src_.size()) fail_unexpected();
                throw ParseError("missing ')'", pos_);
            }
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        fail_unexpected();
    }

    int parse_number() {
        const std::size_t start = pos_;
        std::size_t end = pos_;
        auto digits = [&] {
            while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end;
        };
        digits();
        if (end < src_.size() && src_[end] == '.') {
            ++end;
            digits();
        }
        if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
            std::size_t exp_end = end + 1;
            if (exp_end < src_.size() && (src_[exp_end] == '+' || src_[exp_end] == '-')) ++exp_end;
            if (exp_end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[exp_end]))) {
                end = exp_end;
                digits();
            }
        }
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + end, value);
        if (ec != std::errc() || ptr != src_.data() + end) throw ParseError("malformed number", start);
        pos_ = end;
        return add({Op::Const, value, 0, -1, -1});
    }

    int parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view name = src_.substr(start, pos_ - start);
        if (name == "t") return add({Op::VarT, 0, 0, -1, -1, kBitT});
        if (name == "xi") return add({Op::VarXi, 0, 0, -1, -1, kBitXi});
        if (name == "zeta") return add({Op::VarZeta, 0, 0, -1, -1, kBitZeta});
        for (const auto& f : kFunctions) {
            if (f.name != name) continue;
            if (!accept('(')) throw ParseError("expected '(' after function " + std::string(name), pos_);
            int count = 0;
            int arg = -1;
            if (!accept(')')) {
                do {
                    arg = parse_expr();
                    ++count;
                } while (accept(','));
                if (!accept(')')) {
                    skip_ws();
                    if (pos_ < src_.size()) fail_unexpected();
                    throw ParseError("missing ')'", pos_);
                }
            }
            if (count != 1) {
                throw ParseError("function " + std::string(name) + " expects 1 argument, got " +
                                     std::to_string(count),
                                 start);
            }
            return add({f.op, 0, 0, arg, -1});
        }
        throw ParseError("unknown identifier '" + std::string(name) + "'", start);
    }
};

}  // namespace

Expr Expr::parse(std::string_view source) {
    return Expr(std::make_shared<const std::vector<Node>>(Parser(source).run()));
}

double Expr::operator()(double t, double xi, double zeta) const {
    thread_local std::vector<double> scratch;
    scratch.resize(nodes_->size());
    return evaluate<double>(*nodes_, scratch, t, xi, zeta, [](double c) { return c; });
}

Partials Expr::partials(double t, double xi, double zeta) const {
    std::vector<Dual3> scratch(nodes_->size());
    const Dual3 r = evaluate<Dual3>(*nodes_, scratch, Dual3{t, {1, 0, 0}}, Dual3{xi, {0, 1, 0}},
                                    Dual3{zeta, {0, 0, 1}}, [](double c) { return Dual3{c, {}}; });
    return {r.v, r.d[0], r.d[1], r.d[2]};
}

TaylorJet Expr::taylor_in_t(double xi, double zeta, int order, double center) const {
    if (order < 0) throw ParameterError("jet order must be nonnegative");
    std::vector<TaylorJet> scratch(nodes_->size());
    return evaluate<TaylorJet>(*nodes_, scratch, TaylorJet::variable(center, order),
                               TaylorJet::constant(center, xi, order), TaylorJet::constant(center, zeta, order),
                               [&](double c) { return TaylorJet::constant(center, c, order); });
}

bool Expr::depends_on(Variable v) const {
    // The root is the last node; unreferenced nodes (folded integer
    // exponents) never contribute variables to it.
    const unsigned bit = v == Variable::T ? kBitT : v == Variable::Xi ? kBitXi : kBitZeta;
    return (nodes_->back().vars & bit) != 0;
}

std::string Expr::to_string() const { return print(*nodes_, static_cast<int>(nodes_->size()) - 1); }

double UnivariateExpr::value_or_right_limit(double t) const {
    if (t != 0.0) return (*this)(t);
    try {
        return (*this)(0.0);
    } catch (const DomainError&) {
        return (*this)(1e-300);
    }
}

double UnivariateExpr::derivative(double t, int k) const { return jet(t, k).derivative(k); }

}  // namespace ma_radial
