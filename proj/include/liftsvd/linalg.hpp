#ifndef LIFTSVD_LINALG_HPP
#define LIFTSVD_LINALG_HPP

#include <cstddef>
#include <vector>

namespace liftsvd {

using Vec = std::vector<double>;

// Dense row-major matrix. Dimensions in this project stay tiny
// (m = n + p at desk scale), so no attempt is made at blocking or views.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Mat identity(std::size_t dim);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }

    bool operator==(const Mat& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

double dot(const Vec& a, const Vec& b);
double norm2(const Vec& a);

Vec matvec(const Mat& m, const Vec& x);
Mat matmul(const Mat& a, const Mat& b);
Mat transpose(const Mat& m);

// Max absolute entry of M^T M - I; zero for a perfectly orthogonal matrix.
double orthogonality_defect(const Mat& m);

// Solves A x = b by LU with partial pivoting. Throws liftsvd::Error if A
// is numerically singular. A and b are taken by value as working storage.
Vec solve_dense(Mat a, Vec b);

}  // namespace liftsvd

#endif
