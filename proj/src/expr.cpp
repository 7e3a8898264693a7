#include "liftsvd/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <utility>

#include "liftsvd/errors.hpp"

namespace liftsvd {

namespace {

int max_var_of(const Expression::NodePtr& node) {
    if (!node) return 0;
    int m = (node->kind == Expression::Kind::Variable) ? node->index : 0;
    m = std::max(m, max_var_of(node->lhs));
    m = std::max(m, max_var_of(node->rhs));
    return m;
}

bool nodes_equal(const Expression::Node* a, const Expression::Node* b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Expression::Kind::Constant:
            return a->value == b->value;
        case Expression::Kind::Variable:
            return a->index == b->index;
        case Expression::Kind::NormX:
            return true;
        case Expression::Kind::Unary:
            return a->uop == b->uop && nodes_equal(a->lhs.get(), b->lhs.get());
        case Expression::Kind::Binary:
            return a->bop == b->bop && nodes_equal(a->lhs.get(), b->lhs.get()) &&
                   nodes_equal(a->rhs.get(), b->rhs.get());
    }
    return false;
}

}  // namespace

Expression Expression::constant(double value) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Constant;
    node->value = value;
    return Expression(std::move(node), 0);
}

Expression Expression::variable(int index) {
    if (index < 1) throw Error("variable index must be >= 1");
    auto node = std::make_shared<Node>();
    node->kind = Kind::Variable;
    node->index = index;
    return Expression(std::move(node), index);
}

Expression Expression::normx() {
    auto node = std::make_shared<Node>();
    node->kind = Kind::NormX;
    return Expression(std::move(node), 0);
}

Expression Expression::unary(UnaryOp op, Expression operand) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Unary;
    node->uop = op;
    node->lhs = operand.root_;
    const int mv = operand.max_var_;
    return Expression(std::move(node), mv);
}

Expression Expression::binary(BinaryOp op, Expression lhs, Expression rhs) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Binary;
    node->bop = op;
    node->lhs = lhs.root_;
    node->rhs = rhs.root_;
    const int mv = std::max(lhs.max_var_, rhs.max_var_);
    return Expression(std::move(node), mv);
}

bool Expression::operator==(const Expression& other) const {
    return nodes_equal(root_.get(), other.root_.get());
}

// ---------------------------------------------------------------------------
// Parser. Grammar:
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := "-" factor | base ("^" base)?
//   base   := number | var | func "(" expr ")" | "(" expr ")" | "-" base
//           | "normx"
// "^" binds tighter than unary minus: -x1^2 parses as -(x1^2).

namespace {

class Parser {
public:
    Parser(const std::string& text, int n) : text_(text), n_(n) {}

    Expression run() {
        Expression e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what, pos_);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!accept(c)) fail(std::string("expected '") + c + "' in " + what);
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Expression parse_expr() {
        Expression lhs = parse_term();
        for (;;) {
            if (accept('+'))
                lhs = Expression::binary(BinaryOp::Add, std::move(lhs), parse_term());
            else if (accept('-'))
                lhs = Expression::binary(BinaryOp::Sub, std::move(lhs), parse_term());
            else
                return lhs;
        }
    }

    Expression parse_term() {
        Expression lhs = parse_factor();
        for (;;) {
            if (accept('*'))
                lhs = Expression::binary(BinaryOp::Mul, std::move(lhs), parse_factor());
            else if (accept('/'))
                lhs = Expression::binary(BinaryOp::Div, std::move(lhs), parse_factor());
            else
                return lhs;
        }
    }

    Expression parse_factor() {
        if (accept('-')) return Expression::unary(UnaryOp::Neg, parse_factor());
        Expression b = parse_base();
        if (accept('^'))
            return Expression::binary(BinaryOp::Pow, std::move(b), parse_base());
        return b;
    }

    Expression parse_base() {
        const char c = peek();
        if (c == '\0') fail("unexpected end of input");
        if (c == '-') {
            ++pos_;
            return Expression::unary(UnaryOp::Neg, parse_base());
        }
        if (c == '(') {
            ++pos_;
            Expression e = parse_expr();
            expect(')', "parenthesized expression");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_word();
        fail("unexpected character");
    }

    Expression parse_number() {
        skip_ws();
        const std::size_t start = pos_;
        std::size_t end = pos_;
        while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
        if (end < text_.size() && text_[end] == '.') {
            ++end;
            while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
        }
        if (end == start || (end == start + 1 && text_[start] == '.'))
            fail("malformed number");
        if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
            std::size_t exp_end = end + 1;
            if (exp_end < text_.size() && (text_[exp_end] == '+' || text_[exp_end] == '-'))
                ++exp_end;
            std::size_t digits = exp_end;
            while (digits < text_.size() && std::isdigit(static_cast<unsigned char>(text_[digits])))
                ++digits;
            if (digits > exp_end) end = digits;  // only consume a complete exponent
        }
        double value = 0.0;
        const auto res = std::from_chars(text_.data() + start, text_.data() + end, value);
        if (res.ec != std::errc() || res.ptr != text_.data() + end) fail("malformed number");
        pos_ = end;
        return Expression::constant(value);
    }

    Expression parse_word() {
        skip_ws();
        const std::size_t start = pos_;
        std::size_t end = pos_;
        while (end < text_.size() && std::isalpha(static_cast<unsigned char>(text_[end]))) ++end;
        const std::string word = text_.substr(start, end - start);

        if (word == "x") {
            std::size_t digits = end;
            while (digits < text_.size() && std::isdigit(static_cast<unsigned char>(text_[digits])))
                ++digits;
            if (digits == end) fail("variable needs an index, e.g. x1");
            int index = 0;
            const auto res = std::from_chars(text_.data() + end, text_.data() + digits, index);
            if (res.ec != std::errc()) fail("variable index out of range");
            if (index < 1 || index > n_) fail("variable index out of range");
            pos_ = digits;
            return Expression::variable(index);
        }
        if (word == "normx") {
            pos_ = end;
            return Expression::normx();
        }

        UnaryOp op;
        if (word == "sin") op = UnaryOp::Sin;
        else if (word == "cos") op = UnaryOp::Cos;
        else if (word == "exp") op = UnaryOp::Exp;
        else if (word == "abs") op = UnaryOp::Abs;
        else if (word == "sqrt") op = UnaryOp::Sqrt;
        else if (word == "sgn") op = UnaryOp::Sgn;
        else fail("unknown identifier '" + word + "'");

        pos_ = end;
        expect('(', "function call");
        Expression arg = parse_expr();
        expect(')', "function call");
        return Expression::unary(op, std::move(arg));
    }

    const std::string& text_;
    int n_;
    std::size_t pos_ = 0;
};

}  // namespace

Expression parse(const std::string& text, int n) {
    if (text.empty()) throw ParseError("empty expression", 0);
    return Parser(text, n).run();
}

// ---------------------------------------------------------------------------
// Printer. Fully parenthesized so the round trip is structurally exact.

namespace {

std::string format_constant(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void print_node(const Expression::Node& node, std::string& out) {
    switch (node.kind) {
        case Expression::Kind::Constant:
            out += format_constant(node.value);
            return;
        case Expression::Kind::Variable:
            out += "x" + std::to_string(node.index);
            return;
        case Expression::Kind::NormX:
            out += "normx";
            return;
        case Expression::Kind::Unary: {
            const char* name = nullptr;
            switch (node.uop) {
                case UnaryOp::Neg: name = nullptr; break;
                case UnaryOp::Sin: name = "sin"; break;
                case UnaryOp::Cos: name = "cos"; break;
                case UnaryOp::Exp: name = "exp"; break;
                case UnaryOp::Abs: name = "abs"; break;
                case UnaryOp::Sqrt: name = "sqrt"; break;
                case UnaryOp::Sgn: name = "sgn"; break;
            }
            if (!name) {
                out += "(-";
                print_node(*node.lhs, out);
                out += ")";
            } else {
                out += name;
                out += "(";
                print_node(*node.lhs, out);
                out += ")";
            }
            return;
        }
        case Expression::Kind::Binary: {
            char op = '?';
            switch (node.bop) {
                case BinaryOp::Add: op = '+'; break;
                case BinaryOp::Sub: op = '-'; break;
                case BinaryOp::Mul: op = '*'; break;
                case BinaryOp::Div: op = '/'; break;
                case BinaryOp::Pow: op = '^'; break;
            }
            out += "(";
            print_node(*node.lhs, out);
            out += op;
            print_node(*node.rhs, out);
            out += ")";
            return;
        }
    }
}

}  // namespace

std::string to_string(const Expression& e) {
    std::string out;
    print_node(e.root(), out);
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation.

namespace {

double eval_node(const Expression::Node& node, const Vec& x, double norm_x) {
    switch (node.kind) {
        case Expression::Kind::Constant:
            return node.value;
        case Expression::Kind::Variable:
            if (node.index < 1 || static_cast<std::size_t>(node.index) > x.size())
                throw DomainError("variable x" + std::to_string(node.index) +
                                  " outside input dimension");
            return x[static_cast<std::size_t>(node.index) - 1];
        case Expression::Kind::NormX:
            return norm_x;
        case Expression::Kind::Unary: {
            const double a = eval_node(*node.lhs, x, norm_x);
            switch (node.uop) {
                case UnaryOp::Neg: return -a;
                case UnaryOp::Sin: return std::sin(a);
                case UnaryOp::Cos: return std::cos(a);
                case UnaryOp::Exp: return std::exp(a);
                case UnaryOp::Abs: return std::abs(a);
                case UnaryOp::Sqrt:
                    if (a < 0.0) throw DomainError("sqrt of negative value");
                    return std::sqrt(a);
                case UnaryOp::Sgn: return (a > 0.0) ? 1.0 : (a < 0.0 ? -1.0 : 0.0);
            }
            break;
        }
        case Expression::Kind::Binary: {
            const double a = eval_node(*node.lhs, x, norm_x);
            const double b = eval_node(*node.rhs, x, norm_x);
            switch (node.bop) {
                case BinaryOp::Add: return a + b;
                case BinaryOp::Sub: return a - b;
                case BinaryOp::Mul: return a * b;
                case BinaryOp::Div:
                    if (b == 0.0) throw DomainError("division by zero");
                    return a / b;
                case BinaryOp::Pow:
                    if (a == 0.0 && b < 0.0) throw DomainError("division by zero in power");
                    if (a < 0.0 && std::floor(b) != b)
                        throw DomainError("negative base with non-integer exponent");
                    return std::pow(a, b);
            }
            break;
        }
    }
    throw Error("eval: corrupt expression node");
}

}  // namespace

double eval(const Expression& e, const Vec& x) {
    return eval_node(e.root(), x, norm2(x));
}

// ---------------------------------------------------------------------------
// FunctionSpec.

FunctionSpec::FunctionSpec(int n, int p, std::vector<Expression> components, Vec norm_bounds,
                           std::vector<Interval> domain_box)
    : n_(n),
      p_(p),
      components_(std::move(components)),
      norm_bounds_(std::move(norm_bounds)),
      domain_box_(std::move(domain_box)) {
    if (n_ < 1 || p_ < 1) throw ConfigError("function dimensions must be positive");
    if (components_.size() != static_cast<std::size_t>(p_))
        throw ConfigError("component count does not match p");
    if (norm_bounds_.size() != static_cast<std::size_t>(p_))
        throw ConfigError("norm bound count does not match p");
    if (domain_box_.size() != static_cast<std::size_t>(n_))
        throw ConfigError("domain box must have one interval per input coordinate");
    for (const Expression& c : components_)
        if (c.max_variable() > n_)
            throw ConfigError("component references x" + std::to_string(c.max_variable()) +
                              " beyond input dimension " + std::to_string(n_));
    for (double b : norm_bounds_)
        if (!(b >= 0.0) || !std::isfinite(b))
            throw ConfigError("norm bounds must be finite and non-negative");
    for (const Interval& iv : domain_box_)
        if (!(iv.lo < iv.hi) || !std::isfinite(iv.lo) || !std::isfinite(iv.hi))
            throw ConfigError("domain box intervals must be finite with lo < hi");

    // BIBO requires f(0) = 0. Components that are singular at the origin
    // (like cos(1/x1^2) damped by normx) satisfy it in the limit; only a
    // cleanly evaluable nonzero value is rejected.
    const Vec origin(static_cast<std::size_t>(n_), 0.0);
    for (int i = 0; i < p_; ++i) {
        try {
            const double v = eval(components_[static_cast<std::size_t>(i)], origin);
            if (std::abs(v) > 1e-12)
                throw ConfigError("component " + std::to_string(i + 1) +
                                  " has f(0) != 0; not BIBO");
        } catch (const DomainError&) {
        }
    }
}

FunctionSpec FunctionSpec::with_norm_bounds(Vec bounds) const {
    return FunctionSpec(n_, p_, components_, std::move(bounds), domain_box_);
}

Vec eval_f(const FunctionSpec& f, const Vec& x) {
    if (x.size() != static_cast<std::size_t>(f.input_dim()))
        throw ConfigError("eval_f: input has wrong dimension");
    Vec out(static_cast<std::size_t>(f.output_dim()), 0.0);
    const double nrm = norm2(x);
    for (int i = 0; i < f.output_dim(); ++i) {
        try {
            out[static_cast<std::size_t>(i)] =
                eval_node(f.components()[static_cast<std::size_t>(i)].root(), x, nrm);
        } catch (const DomainError& e) {
            throw DomainError(std::string(e.what()) + " in component " + std::to_string(i + 1),
                              i + 1);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Builtins.

FunctionSpec builtin_siso() {
    const std::string text = "0.5*(x1*sin(x1)+x1*cos(x1^2))";
    std::vector<Expression> comps{parse(text, 1)};
    return FunctionSpec(1, 1, std::move(comps), Vec{1.0}, {Interval{-20.0, 20.0}});
}

FunctionSpec builtin_mimo() {
    const std::string text =
        "(normx/2.5)*(sin(0.1*x1*x2)"
        "+0.1*cos(3*x1/x2)"
        "+0.4*sin(20*x1)"
        "+0.3*cos(x2+4)"
        "+0.3*sin(0.1*exp(x1))"
        "+0.2*cos(1/x1^2)"
        "+0.1*sin(0.1*(x1+x2))"
        "+0.1*cos(0.001*x2^2))";
    std::vector<Expression> comps{parse(text, 2)};
    // Amplitude sum (1+0.1+0.4+0.3+0.3+0.2+0.1+0.1) = 2.5, scaled by 1/2.5.
    return FunctionSpec(2, 1, std::move(comps), Vec{1.0},
                        {Interval{-10.0, 10.0}, Interval{-10.0, 10.0}});
}

}  // namespace liftsvd
