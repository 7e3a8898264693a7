#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "liftsvd/errors.hpp"
#include "liftsvd/expr.hpp"
#include "liftsvd/sampling.hpp"

using namespace liftsvd;

TEST_CASE("parse accepts the 1-D builtin text") {
    const Expression e = parse("0.5*(x1*sin(x1)+x1*cos(x1^2))", 1);
    // Direct-formula oracle at a few points.
    for (double x : {-3.0, -1.0, 0.0, 0.5, 1.0, 17.0}) {
        const double expected = 0.5 * (x * std::sin(x) + x * std::cos(x * x));
        CHECK(eval(e, {x}) == doctest::Approx(expected).epsilon(1e-15));
    }
}

TEST_CASE("parse trivial variable") {
    const Expression e = parse("x1", 1);
    CHECK(e.root().kind == Expression::Kind::Variable);
    CHECK(e.root().index == 1);
    CHECK(e.max_variable() == 1);
}

TEST_CASE("parse reports syntax errors with byte offsets") {
    try {
        parse("x1 +", 1);
        FAIL("expected ParseError");
    } catch (const ParseError& err) {
        CHECK(err.offset() == 4);
    }

    CHECK_THROWS_AS(parse("", 1), ParseError);
    CHECK_THROWS_AS(parse("sin(x1", 1), ParseError);
    CHECK_THROWS_AS(parse("foo(x1)", 1), ParseError);
    CHECK_THROWS_AS(parse("x", 1), ParseError);
    CHECK_THROWS_AS(parse("1..2", 1), ParseError);
    CHECK_THROWS_AS(parse("x1 x1", 1), ParseError);
}

TEST_CASE("parse rejects variable indices beyond n") {
    CHECK_THROWS_AS(parse("x2", 1), ParseError);
    CHECK_THROWS_AS(parse("x0", 1), ParseError);
    CHECK_NOTHROW(parse("x2", 2));
}

TEST_CASE("parser precedence and associativity") {
    CHECK(eval(parse("2+3*4", 1), {0.0}) == 14.0);
    CHECK(eval(parse("2*3^2", 1), {0.0}) == 18.0);
    CHECK(eval(parse("8/4/2", 1), {0.0}) == 1.0);
    CHECK(eval(parse("1-2-3", 1), {0.0}) == -4.0);
    // ^ binds tighter than unary minus.
    CHECK(eval(parse("-x1^2", 1), {2.0}) == -4.0);
    CHECK(eval(parse("x1^-2", 1), {2.0}) == 0.25);
    CHECK(eval(parse("(-x1)^2", 1), {2.0}) == 4.0);
    CHECK(eval(parse("--x1", 1), {3.0}) == 3.0);
    CHECK(eval(parse("2e2+1", 1), {0.0}) == 201.0);
    CHECK(eval(parse("1e-3", 1), {0.0}) == 1e-3);
    CHECK(eval(parse(".5*x1", 1), {4.0}) == 2.0);
}

TEST_CASE("whitespace is insignificant") {
    const Vec x{1.3};
    CHECK(eval(parse(" 0.5 * ( x1 * sin( x1 ) + x1 * cos( x1 ^ 2 ) ) ", 1), x) ==
          eval(parse("0.5*(x1*sin(x1)+x1*cos(x1^2))", 1), x));
}

TEST_CASE("eval basics and domain errors") {
    CHECK(eval(parse("sin(x1)", 1), {0.0}) == 0.0);
    CHECK(eval(parse("sgn(x1)", 1), {0.0}) == 0.0);
    CHECK(eval(parse("sgn(x1)", 1), {-3.0}) == -1.0);
    CHECK(eval(parse("sgn(x1)", 1), {0.25}) == 1.0);
    CHECK(eval(parse("abs(x1)", 1), {-2.5}) == 2.5);
    CHECK(eval(parse("sqrt(x1)", 1), {9.0}) == 3.0);
    CHECK(eval(parse("normx", 2), {3.0, 4.0}) == 5.0);
    CHECK(eval(parse("(-2)^3", 1), {0.0}) == -8.0);

    CHECK_THROWS_AS(eval(parse("x1/x2", 2), {1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(eval(parse("sqrt(-1-x1^2)", 1), {0.5}), DomainError);
    CHECK_THROWS_AS(eval(parse("(-2)^0.5", 1), {0.0}), DomainError);
    CHECK_THROWS_AS(eval(parse("x1^-1", 1), {0.0}), DomainError);
}

TEST_CASE("eval is deterministic") {
    const Expression e = parse("0.5*(x1*sin(x1)+x1*cos(x1^2))", 1);
    const double a = eval(e, {12.3456});
    const double b = eval(e, {12.3456});
    CHECK(a == b);
}

TEST_CASE("eval_f evaluates components and tags domain errors") {
    const FunctionSpec identity(2, 2, {parse("x1", 2), parse("x2", 2)}, {1.0, 1.0},
                                {Interval{-5, 5}, Interval{-5, 5}});
    const Vec y = eval_f(identity, {3.0, 4.0});
    CHECK(y[0] == 3.0);
    CHECK(y[1] == 4.0);

    const FunctionSpec siso = builtin_siso();
    CHECK(eval_f(siso, {0.0})[0] == 0.0);

    const FunctionSpec mimo = builtin_mimo();
    try {
        eval_f(mimo, {1.0, 0.0});
        FAIL("expected DomainError");
    } catch (const DomainError& err) {
        CHECK(err.component() == 1);
    }
}

TEST_CASE("builtin_siso matches its direct formula") {
    const FunctionSpec f = builtin_siso();
    CHECK(f.input_dim() == 1);
    CHECK(f.output_dim() == 1);
    CHECK(f.norm_bounds()[0] == 1.0);
    CHECK(f.domain_box()[0].lo == -20.0);
    CHECK(f.domain_box()[0].hi == 20.0);

    // Recomputed oracle value: (sin 1 + cos 1)/2.
    const double fx1 = eval_f(f, {1.0})[0];
    CHECK(fx1 == doctest::Approx((std::sin(1.0) + std::cos(1.0)) / 2.0).epsilon(1e-15));
    CHECK(fx1 == doctest::Approx(0.69088664533801811).epsilon(1e-14));
    CHECK(eval_f(f, {0.0})[0] == 0.0);
}

TEST_CASE("builtin_mimo matches its direct formula") {
    const FunctionSpec f = builtin_mimo();
    CHECK(f.input_dim() == 2);
    CHECK(f.output_dim() == 1);
    // Amplitude sum (1+0.1+0.4+0.3+0.3+0.2+0.1+0.1)/2.5.
    CHECK(f.norm_bounds()[0] ==
          doctest::Approx((1.0 + 0.1 + 0.4 + 0.3 + 0.3 + 0.2 + 0.1 + 0.1) / 2.5).epsilon(1e-15));

    const auto oracle = [](double x1, double x2) {
        const double h = std::sin(0.1 * x1 * x2) + 0.1 * std::cos(3.0 * x1 / x2) +
                         0.4 * std::sin(20.0 * x1) + 0.3 * std::cos(x2 + 4.0) +
                         0.3 * std::sin(0.1 * std::exp(x1)) + 0.2 * std::cos(1.0 / (x1 * x1)) +
                         0.1 * std::sin(0.1 * (x1 + x2)) + 0.1 * std::cos(0.001 * x2 * x2);
        return std::hypot(x1, x2) / 2.5 * h;
    };
    const double fx = eval_f(f, {1.0, 1.0})[0];
    CHECK(fx == doctest::Approx(oracle(1.0, 1.0)).epsilon(1e-14));
    CHECK(fx == doctest::Approx(0.42968681347450065).epsilon(1e-13));
    CHECK(eval_f(f, {-2.0, 3.5})[0] == doctest::Approx(oracle(-2.0, 3.5)).epsilon(1e-13));

    CHECK_THROWS_AS(eval_f(f, {0.0, 1.0}), DomainError);  // 1/x1^2 term
    CHECK_THROWS_AS(eval_f(f, {1.0, 0.0}), DomainError);  // x1/x2 term
}

TEST_CASE("builtins respect the declared BIBO envelope on samples") {
    for (const FunctionSpec& f : {builtin_siso(), builtin_mimo()}) {
        const double bound = f.norm_bounds()[0];
        for (const Vec& x : certification_samples(f, 2000, 7)) {
            const double ratio = std::abs(eval_f(f, x)[0]) / norm2(x);
            CHECK(ratio <= bound * (1.0 + 1e-12));
        }
    }
}

namespace {

Expression random_expression(Rng& rng, int n, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 9);
    std::uniform_real_distribution<double> cval(0.0, 10.0);
    std::uniform_int_distribution<int> var(1, n);
    switch (pick(rng)) {
        case 0: return Expression::constant(cval(rng));
        case 1: return Expression::variable(var(rng));
        case 2: return Expression::normx();
        case 3:
        case 4: {
            std::uniform_int_distribution<int> op(0, 6);
            return Expression::unary(static_cast<UnaryOp>(op(rng)),
                                     random_expression(rng, n, depth - 1));
        }
        default: {
            std::uniform_int_distribution<int> op(0, 4);
            return Expression::binary(static_cast<BinaryOp>(op(rng)),
                                      random_expression(rng, n, depth - 1),
                                      random_expression(rng, n, depth - 1));
        }
    }
}

}  // namespace

TEST_CASE("print/parse round-trip is structurally exact") {
    Rng rng = make_rng(2024, 1);
    for (int trial = 0; trial < 500; ++trial) {
        const Expression e = random_expression(rng, 3, 4);
        const std::string text = to_string(e);
        CAPTURE(text);
        const Expression back = parse(text, 3);
        CHECK(back == e);
    }
}

TEST_CASE("FunctionSpec validation") {
    // f(0) != 0 is rejected.
    CHECK_THROWS_AS(FunctionSpec(1, 1, {parse("x1+1", 1)}, {1.0}, {Interval{-1, 1}}), ConfigError);
    // Component/bound count mismatches.
    CHECK_THROWS_AS(FunctionSpec(1, 2, {parse("x1", 1)}, {1.0, 1.0}, {Interval{-1, 1}}),
                    ConfigError);
    CHECK_THROWS_AS(FunctionSpec(1, 1, {parse("x1", 1)}, {1.0, 2.0}, {Interval{-1, 1}}),
                    ConfigError);
    // Bad box.
    CHECK_THROWS_AS(FunctionSpec(1, 1, {parse("x1", 1)}, {1.0}, {Interval{1, -1}}), ConfigError);
    // Negative bound.
    CHECK_THROWS_AS(FunctionSpec(1, 1, {parse("x1", 1)}, {-1.0}, {Interval{-1, 1}}), ConfigError);
    // Programmatic AST referencing x3 with n = 2.
    CHECK_THROWS_AS(FunctionSpec(2, 1, {Expression::variable(3)}, {1.0},
                                 std::vector<Interval>{Interval{-1, 1}, Interval{-1, 1}}),
                    ConfigError);
    // Components singular at the origin are allowed (limit obligation).
    CHECK_NOTHROW(FunctionSpec(1, 1, {parse("normx*cos(1/x1^2)", 1)}, {1.0}, {Interval{-1, 1}}));
}
