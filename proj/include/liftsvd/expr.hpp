#ifndef LIFTSVD_EXPR_HPP
#define LIFTSVD_EXPR_HPP

#include <memory>
#include <string>
#include <vector>

#include "liftsvd/linalg.hpp"

namespace liftsvd {

enum class UnaryOp { Neg, Sin, Cos, Exp, Abs, Sqrt, Sgn };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

// Immutable scalar expression AST over variables x1..xn plus the `normx`
// builtin (the 2-norm of the whole input vector). Copies share nodes.
class Expression {
public:
    enum class Kind { Constant, Variable, Unary, Binary, NormX };

    struct Node {
        Kind kind;
        double value = 0.0;                  // Constant
        int index = 0;                       // Variable, 1-based
        UnaryOp uop = UnaryOp::Neg;          // Unary
        BinaryOp bop = BinaryOp::Add;        // Binary
        std::shared_ptr<const Node> lhs;     // Unary operand / Binary lhs
        std::shared_ptr<const Node> rhs;     // Binary rhs
    };
    using NodePtr = std::shared_ptr<const Node>;

    static Expression constant(double value);
    static Expression variable(int index);  // 1-based
    static Expression normx();
    static Expression unary(UnaryOp op, Expression operand);
    static Expression binary(BinaryOp op, Expression lhs, Expression rhs);

    const Node& root() const { return *root_; }
    // Largest variable index referenced, 0 if none.
    int max_variable() const { return max_var_; }

    // Structural identity (same tree shape, ops, indices, constants).
    bool operator==(const Expression& other) const;

private:
    Expression(NodePtr root, int max_var) : root_(std::move(root)), max_var_(max_var) {}
    NodePtr root_;
    int max_var_ = 0;
};

// Parses `text` against the expression grammar (see README). Variable
// indices are validated against n. Throws ParseError with the byte offset
// of the first offending character.
Expression parse(const std::string& text, int n);

// Prints an expression so that parse(to_string(e), n) == e.
std::string to_string(const Expression& e);

// IEEE double evaluation; sgn(0) = 0. Throws DomainError on division by
// zero, sqrt of a negative, or a negative base raised to a non-integer
// exponent.
double eval(const Expression& e, const Vec& x);

struct Interval {
    double lo;
    double hi;
};

// A BIBO function given as p component expressions over n variables, with
// a declared upper bound b_i on each component's 2-induced norm and a
// per-coordinate sampling box for estimation and certification.
class FunctionSpec {
public:
    FunctionSpec(int n, int p, std::vector<Expression> components, Vec norm_bounds,
                 std::vector<Interval> domain_box);

    int input_dim() const { return n_; }
    int output_dim() const { return p_; }
    const std::vector<Expression>& components() const { return components_; }
    const Vec& norm_bounds() const { return norm_bounds_; }
    const std::vector<Interval>& domain_box() const { return domain_box_; }

    // Returns a copy with different declared bounds (handy for probing
    // understated bounds in tests and CLI runs).
    FunctionSpec with_norm_bounds(Vec bounds) const;

private:
    int n_;
    int p_;
    std::vector<Expression> components_;
    Vec norm_bounds_;
    std::vector<Interval> domain_box_;
};

// Component-wise evaluation of all p expressions. DomainErrors are
// rethrown carrying the 1-based component index.
Vec eval_f(const FunctionSpec& f, const Vec& x);

// f(x) = (x sin x + x cos x^2) / 2 on [-20, 20]; declared bound 1.
FunctionSpec builtin_siso();

// f(x) = (||x||_2 / 2.5) * sum of eight oscillatory terms on [-10, 10]^2;
// declared bound 1 (the amplitude sum 2.5 divided by 2.5). Evaluation is
// singular on the axes x1 = 0 and x2 = 0.
FunctionSpec builtin_mimo();

}  // namespace liftsvd

#endif
