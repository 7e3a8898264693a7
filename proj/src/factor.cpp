#include "liftsvd/factor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "liftsvd/errors.hpp"
#include "liftsvd/sampling.hpp"

namespace liftsvd {

UnitaryMatrix::UnitaryMatrix(Mat m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0)
        throw ConfigError("unitary matrix must be square and non-empty");
    if (orthogonality_defect(m_) > 1e-10)
        throw ConfigError("matrix is not unitary to 1e-10");
}

UnitaryMatrix random_unitary(int dim, std::uint64_t seed) {
    if (dim < 1) throw ConfigError("random_unitary: dim must be >= 1");
    Rng rng = make_rng(seed, 0x756e6974);
    std::normal_distribution<double> gauss(0.0, 1.0);

    const std::size_t d = static_cast<std::size_t>(dim);
    Mat m(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(i, j) = gauss(rng);

    // Modified Gram-Schmidt with a second orthogonalization pass; columns
    // that collapse (vanishing probability) are redrawn.
    for (std::size_t col = 0; col < d; ++col) {
        for (;;) {
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t prev = 0; prev < col; ++prev) {
                    double proj = 0.0;
                    for (std::size_t r = 0; r < d; ++r) proj += m(r, prev) * m(r, col);
                    for (std::size_t r = 0; r < d; ++r) m(r, col) -= proj * m(r, prev);
                }
            }
            double nrm = 0.0;
            for (std::size_t r = 0; r < d; ++r) nrm += m(r, col) * m(r, col);
            nrm = std::sqrt(nrm);
            if (nrm > 1e-8) {
                // Positive leading entry makes the factorization unique.
                const double sign = (m(0, col) < 0.0) ? -1.0 : 1.0;
                for (std::size_t r = 0; r < d; ++r) m(r, col) *= sign / nrm;
                break;
            }
            for (std::size_t r = 0; r < d; ++r) m(r, col) = gauss(rng);
        }
    }
    return UnitaryMatrix(std::move(m));
}

KFactorization::KFactorization(Decomposition dec, UnitaryMatrix vstar)
    : dec_(std::move(dec)), vstar_(std::move(vstar)), v_(transpose(vstar_.matrix())) {
    if (vstar_.dim() != static_cast<std::size_t>(dec_.sigma_spec.m))
        throw ConfigError("V* must be m x m");
    k_ = matmul(matmul(dec_.U, dec_.Sigma_matrix), vstar_.matrix());
}

Vec KFactorization::g(const Vec& x) const {
    return matvec(v_, lift(x, dec_.function, dec_.sigma_spec).v);
}

KFactorization compose_K(const Decomposition& dec, const UnitaryMatrix& vstar) {
    return KFactorization(dec, vstar);
}

// ---------------------------------------------------------------------------
// One-sided Jacobi SVD.

namespace {

constexpr std::size_t kSvdDimCap = 64;

// Orthonormal completion of `cols` accepted columns of u to a full basis,
// scanning the standard basis vectors.
void complete_basis(Mat& u, std::size_t cols) {
    const std::size_t dim = u.rows();
    std::size_t next = cols;
    for (std::size_t cand = 0; cand < dim && next < dim; ++cand) {
        Vec e(dim, 0.0);
        e[cand] = 1.0;
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t c = 0; c < next; ++c) {
                double proj = 0.0;
                for (std::size_t r = 0; r < dim; ++r) proj += u(r, c) * e[r];
                for (std::size_t r = 0; r < dim; ++r) e[r] -= proj * u(r, c);
            }
        const double nrm = norm2(e);
        if (nrm > 0.1) {
            for (std::size_t r = 0; r < dim; ++r) u(r, next) = e[r] / nrm;
            ++next;
        }
    }
    if (next != dim) throw Error("svd_small: basis completion failed");
}

SvdResult svd_tall(const Mat& input) {
    Mat a = input;  // columns get rotated in place
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();

    Mat v = Mat::identity(cols);
    for (int sweep = 0; sweep < 60; ++sweep) {
        double worst = 0.0;
        for (std::size_t i = 0; i + 1 < cols; ++i)
            for (std::size_t j = i + 1; j < cols; ++j) {
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (std::size_t r = 0; r < rows; ++r) {
                    alpha += a(r, i) * a(r, i);
                    beta += a(r, j) * a(r, j);
                    gamma += a(r, i) * a(r, j);
                }
                if (alpha == 0.0 || beta == 0.0) continue;
                const double scaled = std::abs(gamma) / std::sqrt(alpha * beta);
                worst = std::max(worst, scaled);
                if (scaled < 1e-15) continue;

                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = ((zeta >= 0.0) ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t r = 0; r < rows; ++r) {
                    const double ai = a(r, i), aj = a(r, j);
                    a(r, i) = c * ai - s * aj;
                    a(r, j) = s * ai + c * aj;
                }
                for (std::size_t r = 0; r < cols; ++r) {
                    const double vi = v(r, i), vj = v(r, j);
                    v(r, i) = c * vi - s * vj;
                    v(r, j) = s * vi + c * vj;
                }
            }
        if (worst < 1e-15) break;
    }

    Vec sigma(cols, 0.0);
    for (std::size_t c = 0; c < cols; ++c) {
        double nrm = 0.0;
        for (std::size_t r = 0; r < rows; ++r) nrm += a(r, c) * a(r, c);
        sigma[c] = std::sqrt(nrm);
    }

    std::vector<std::size_t> order(cols);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t r) { return sigma[l] > sigma[r]; });

    const double tol = 1e-13 * std::max(sigma[order[0]], 1e-300);
    Mat u(rows, rows);
    Mat v_sorted(cols, cols);
    Vec sigma_sorted(cols, 0.0);
    std::size_t accepted = 0;
    for (std::size_t k = 0; k < cols; ++k) {
        const std::size_t src = order[k];
        sigma_sorted[k] = sigma[src];
        for (std::size_t r = 0; r < cols; ++r) v_sorted(r, k) = v(r, src);
        if (sigma[src] > tol && accepted == k) {
            for (std::size_t r = 0; r < rows; ++r) u(r, k) = a(r, src) / sigma[src];
            ++accepted;
        }
    }
    // Columns beyond `accepted` pair with (numerically) zero singular
    // values, where any orthonormal completion is valid.
    complete_basis(u, accepted);

    return SvdResult{std::move(u), std::move(sigma_sorted), transpose(v_sorted)};
}

}  // namespace

SvdResult svd_small(const Mat& m) {
    if (m.rows() == 0 || m.cols() == 0) throw ConfigError("svd_small: empty matrix");
    if (m.rows() > kSvdDimCap || m.cols() > kSvdDimCap)
        throw ConfigError("svd_small: dimension above cap 64");
    for (double x : m.data())
        if (!std::isfinite(x)) throw ConfigError("svd_small: non-finite entry");

    if (m.rows() >= m.cols()) return svd_tall(m);

    // Wide matrix: factor the transpose and swap the roles of U and V.
    SvdResult t = svd_tall(transpose(m));
    return SvdResult{transpose(t.Vt), std::move(t.sigma), transpose(t.U)};
}

// ---------------------------------------------------------------------------

KernelAnalysis kernel_analysis(const KFactorization& kf) {
    const SvdResult svd = svd_small(kf.K());
    const std::size_t m = kf.K().cols();
    const double top = svd.sigma.empty() ? 0.0 : svd.sigma[0];
    const double tol = 1e-12 * top;

    std::size_t rank = 0;
    for (double s : svd.sigma)
        if (s > tol) ++rank;

    const Mat v = transpose(svd.Vt);  // right singular vectors as columns
    Mat row(m, rank);
    Mat kernel(m, m - rank);
    for (std::size_t c = 0; c < m; ++c) {
        const bool in_row = c < svd.sigma.size() && svd.sigma[c] > tol;
        for (std::size_t r = 0; r < m; ++r) {
            if (in_row)
                row(r, c) = v(r, c);
            else
                kernel(r, c - rank) = v(r, c);
        }
    }
    return KernelAnalysis{std::move(kernel), std::move(row)};
}

namespace {

Vec project_columns(const Mat& basis, const Vec& g) {
    Vec coords(basis.cols(), 0.0);
    for (std::size_t c = 0; c < basis.cols(); ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < basis.rows(); ++r) s += basis(r, c) * g[r];
        coords[c] = s;
    }
    return coords;
}

}  // namespace

Vec lost_information(const Vec& x, const KFactorization& kf, const KernelAnalysis& ka) {
    return project_columns(ka.kernel_basis, kf.g(x));
}

Vec row_information(const Vec& x, const KFactorization& kf, const KernelAnalysis& ka) {
    return project_columns(ka.row_basis, kf.g(x));
}

std::vector<Vec> nullspace_relaxation_sample(const KFactorization& kf, int budget, double tol,
                                             std::uint64_t seed) {
    if (!(tol > 0.0)) throw ConfigError("nullspace_relaxation_sample: tol must be positive");
    const FunctionSpec& f = kf.decomposition().function;
    Rng rng = make_rng(seed, 0x6e756c6c);

    std::vector<Vec> hits;
    for (int k = 0; k < budget; ++k) {
        Vec x = sample_box_point(rng, f.domain_box());
        if (norm2(x) == 0.0) continue;
        Vec gx;
        try {
            gx = kf.g(x);
        } catch (const DomainError&) {
            continue;
        }
        if (norm2(matvec(kf.K(), gx)) <= tol * norm2(x)) hits.push_back(std::move(x));
    }
    return hits;
}

void write_samples_csv(std::ostream& out, const std::vector<Vec>& points, int n) {
    for (int i = 1; i <= n; ++i) out << "x_" << i << (i == n ? "\n" : ",");
    char buf[32];
    for (const Vec& x : points) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", x[i]);
            out << buf << (i + 1 == x.size() ? "\n" : ",");
        }
    }
}

Vec riesz_representer(const KFactorization& kf) {
    if (kf.K().rows() != 1)
        throw ConfigError("riesz_representer requires a functional (p = 1)");
    Vec k(kf.K().cols());
    for (std::size_t c = 0; c < k.size(); ++c) k[c] = kf.K()(0, c);
    return k;
}

}  // namespace liftsvd
