#ifndef LIFTSVD_LIFTCORE_HPP
#define LIFTSVD_LIFTCORE_HPP

#include <iosfwd>
#include <vector>

#include "liftsvd/expr.hpp"
#include "liftsvd/linalg.hpp"
#include "liftsvd/norms.hpp"

namespace liftsvd {

// Admissible singular values for a lifting with m = n + p. sigma[i] pairs
// with the component of i-th largest declared bound (b_{q(i)}), and the
// admissibility sum over nonzero bounds satisfies
//   sum b_{q(i)}^2 / sigma_i^2 <= 1 - eta < 1.
struct SigmaSpec {
    Vec sigma;                  // descending, one per output component
    int m = 0;                  // lifting dimension, n + p
    double eta = 0.0;           // admissibility margin in (0, 1)
    ComponentOrdering ordering;

    int p() const { return static_cast<int>(sigma.size()); }
    int input_dim() const { return m - p(); }
};

// sigma_i = b_{q(i)} * sqrt(p_eff / (1 - eta)) for nonzero bounds (p_eff =
// count of nonzero bounds), sigma_i = 0 otherwise. Makes the admissibility
// sum exactly 1 - eta.
SigmaSpec select_sigma(const Vec& bounds, const ComponentOrdering& ordering, double eta,
                       int input_dim);

// Validating constructor for hand-built sigma vectors: checks descending
// order, the admissibility sum against the bounds, and sigma_i = 0 only
// where b_{q(i)} = 0.
SigmaSpec make_sigma_spec(Vec sigma, const Vec& bounds, const ComponentOrdering& ordering,
                          double eta, int input_dim);

struct SValue {
    double S;      // sum of f_{q(i)}(x)^2 / (sigma_i^2 ||x||^2)
    double gamma;  // S - 1, negative whenever the declared bounds hold
};

// Requires x != 0. Throws BoundViolationError carrying x when S >= 1
// (a declared norm bound was too small) or when a component with a zero
// declared bound evaluates to a nonzero value.
SValue compute_S(const Vec& x, const FunctionSpec& f, const SigmaSpec& sigma);

// Same, with f(x) already evaluated.
SValue compute_S_from(const Vec& x, const Vec& fx, const SigmaSpec& sigma);

// Closed-form auxiliary coordinates:
//   delta_i = f_{q(i)}(x) / (sigma_i * sqrt(1 - S)),   0 where sigma_i = 0.
// Requires x != 0.
Vec delta(const Vec& x, const FunctionSpec& f, const SigmaSpec& sigma);

// Independent route to the same delta: materializes the p x p matrix with
// diagonal d_i = sigma_i^2 ||x||^2 / f_{q(i)}(x)^2 - 1 and off-diagonal -1,
// solves A y = ||x||^2 * 1 with a dense LU solver, and returns
// sgn(f_{q(i)}(x)) * sqrt(y_i). Exists solely as the oracle the closed
// form is tested against. Requires all sigma_i > 0 and all
// f_{q(i)}(x) != 0. If min_pre_sqrt is given, receives the smallest
// solution component before the square root.
Vec delta_oracle(const Vec& x, const FunctionSpec& f, const SigmaSpec& sigma,
                 double* min_pre_sqrt = nullptr);

// One lifted input: v(x) = (||x||/||x_delta||) * x_delta with
// x_delta = [delta; x], and v(0) = 0.
struct LiftedPoint {
    Vec x;
    Vec fx;
    double S = 0.0;
    double gamma = -1.0;
    Vec delta;    // ordered positions, like sigma
    Vec x_delta;  // [delta; x], length m
    Vec v;        // length m, ||v|| = ||x||
};

LiftedPoint lift(const Vec& x, const FunctionSpec& f, const SigmaSpec& sigma);

// f(x) = U Sigma v(x). U is the permutation that returns components to
// the caller's original order (the identity when the declared bounds are
// already descending).
struct Decomposition {
    FunctionSpec function;
    SigmaSpec sigma_spec;
    Mat U;             // p x p permutation matrix
    Mat Sigma_matrix;  // p x m rectangular diagonal
};

Decomposition make_decomposition(const FunctionSpec& f, double eta = 0.1);
Decomposition make_decomposition(const FunctionSpec& f, SigmaSpec sigma);

// U * Sigma_matrix * v for a point lifted under dec's sigma_spec.
Vec reconstruct(const LiftedPoint& lp, const Decomposition& dec);

// Left inverse of the lifting: recovers x from the scaled lower block.
// Throws ImageError when the lower block is zero but v_val is not.
Vec unlift(const Vec& v_val, int n, int p);

// CSV with header x_1..x_n, delta_1..delta_p, v_1..v_m, S.
void write_lifted_points_csv(std::ostream& out, const std::vector<LiftedPoint>& points, int n,
                             int p);

}  // namespace liftsvd

#endif
