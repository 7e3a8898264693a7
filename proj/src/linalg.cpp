#include "liftsvd/linalg.hpp"

#include <cassert>
#include <cmath>
#include <cstdlib>
#include <utility>

#include "liftsvd/errors.hpp"

namespace liftsvd {

Mat Mat::identity(std::size_t dim) {
    Mat m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

double dot(const Vec& a, const Vec& b) {
    assert(a.size() == b.size());
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const Vec& a) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
}

Vec matvec(const Mat& m, const Vec& x) {
    assert(m.cols() == x.size());
    Vec y(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

Mat matmul(const Mat& a, const Mat& b) {
    assert(a.cols() == b.rows());
    Mat c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Mat transpose(const Mat& m) {
    Mat t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
    return t;
}

double orthogonality_defect(const Mat& m) {
    const Mat gram = matmul(transpose(m), m);
    double worst = 0.0;
    for (std::size_t i = 0; i < gram.rows(); ++i)
        for (std::size_t j = 0; j < gram.cols(); ++j) {
            const double target = (i == j) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(gram(i, j) - target));
        }
    return worst;
}

Vec solve_dense(Mat a, Vec b) {
    if (a.rows() != a.cols() || a.rows() != b.size())
        throw Error("solve_dense: dimension mismatch");
    const std::size_t n = a.rows();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(a(perm[col], col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double cand = std::abs(a(perm[r], col));
            if (cand > best) {
                best = cand;
                pivot = r;
            }
        }
        if (best == 0.0) throw Error("solve_dense: singular matrix");
        std::swap(perm[col], perm[pivot]);

        const double diag = a(perm[col], col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a(perm[r], col) / diag;
            if (factor == 0.0) continue;
            a(perm[r], col) = 0.0;
            for (std::size_t c = col + 1; c < n; ++c)
                a(perm[r], c) -= factor * a(perm[col], c);
            b[perm[r]] -= factor * b[perm[col]];
        }
    }

    Vec x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[perm[i]];
        for (std::size_t j = i + 1; j < n; ++j) s -= a(perm[i], j) * x[j];
        x[i] = s / a(perm[i], i);
    }
    return x;
}

}  // namespace liftsvd
