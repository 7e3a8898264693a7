#ifndef LIFTSVD_FACTOR_HPP
#define LIFTSVD_FACTOR_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "liftsvd/liftcore.hpp"
#include "liftsvd/linalg.hpp"

namespace liftsvd {

// Square real matrix validated to satisfy M^T M = I to 1e-10 per entry.
class UnitaryMatrix {
public:
    explicit UnitaryMatrix(Mat m);

    const Mat& matrix() const { return m_; }
    std::size_t dim() const { return m_.rows(); }

private:
    Mat m_;
};

// Orthonormalization of a seeded Gaussian matrix; deterministic per seed.
UnitaryMatrix random_unitary(int dim, std::uint64_t seed);

// f(x) = U Sigma (V* o g)(x) = K o g(x), where g = V o v absorbs an
// arbitrary unitary V* into the lifting and K = U Sigma V*.
class KFactorization {
public:
    KFactorization(Decomposition dec, UnitaryMatrix vstar);

    const Decomposition& decomposition() const { return dec_; }
    const Mat& K() const { return k_; }
    const Mat& Vstar() const { return vstar_.matrix(); }

    // g(x) = V * v(x); norm-preserving like v.
    Vec g(const Vec& x) const;

private:
    Decomposition dec_;
    UnitaryMatrix vstar_;
    Mat v_;  // Vstar^T
    Mat k_;
};

KFactorization compose_K(const Decomposition& dec, const UnitaryMatrix& vstar);

// M = U * diag_rect(sigma) * Vt with U, Vt square orthogonal and sigma
// descending, length min(rows, cols).
struct SvdResult {
    Mat U;
    Vec sigma;
    Mat Vt;
};

// One-sided Jacobi SVD for the small dense matrices of this project.
// Throws ConfigError when either dimension exceeds 64.
SvdResult svd_small(const Mat& m);

// Right singular vectors of K split by singular value: row_basis spans
// directions K acts on, kernel_basis the directions it annihilates
// (including the n structural zero columns of Sigma). Columns are
// orthonormal and together span R^m.
struct KernelAnalysis {
    Mat kernel_basis;  // m x k
    Mat row_basis;     // m x r, k + r = m
};

KernelAnalysis kernel_analysis(const KFactorization& kf);

// Coordinates of g(x) along the kernel directions: everything about x
// that f(x) does not retain.
Vec lost_information(const Vec& x, const KFactorization& kf, const KernelAnalysis& ka);

// Complementary projection onto the row directions, for norm bookkeeping.
Vec row_information(const Vec& x, const KFactorization& kf, const KernelAnalysis& ka);

// Samples the relaxed null set {x : ||K g(x)|| <= tol * ||x||} by drawing
// `budget` points from the domain box. Points on the singular set of f
// are skipped. Deterministic per seed.
std::vector<Vec> nullspace_relaxation_sample(const KFactorization& kf, int budget, double tol,
                                             std::uint64_t seed = 0);

// CSV with header x_1..x_n for sampled point sets (relaxed-null samples).
void write_samples_csv(std::ostream& out, const std::vector<Vec>& points, int n);

// For p = 1: the vector k with f(x) = <k, g(x)> (the single row of K).
Vec riesz_representer(const KFactorization& kf);

}  // namespace liftsvd

#endif
