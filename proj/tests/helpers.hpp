#ifndef LIFTSVD_TESTS_HELPERS_HPP
#define LIFTSVD_TESTS_HELPERS_HPP

#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "liftsvd/expr.hpp"
#include "liftsvd/linalg.hpp"
#include "liftsvd/sampling.hpp"

namespace testutil {

// Linear f(x) = A x as a FunctionSpec with exact induced-norm bounds
// b_i = ||row_i||_2 and box [-half_width, half_width]^n.
inline liftsvd::FunctionSpec linear_function(const liftsvd::Mat& a, double half_width = 5.0) {
    using liftsvd::BinaryOp;
    using liftsvd::Expression;

    std::vector<Expression> components;
    liftsvd::Vec bounds;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Expression e = Expression::binary(BinaryOp::Mul, Expression::constant(a(i, 0)),
                                          Expression::variable(1));
        double row_sq = a(i, 0) * a(i, 0);
        for (std::size_t j = 1; j < a.cols(); ++j) {
            e = Expression::binary(
                BinaryOp::Add, std::move(e),
                Expression::binary(BinaryOp::Mul, Expression::constant(a(i, j)),
                                   Expression::variable(static_cast<int>(j) + 1)));
            row_sq += a(i, j) * a(i, j);
        }
        components.push_back(std::move(e));
        bounds.push_back(std::sqrt(row_sq));
    }
    std::vector<liftsvd::Interval> box(a.cols(), liftsvd::Interval{-half_width, half_width});
    return liftsvd::FunctionSpec(static_cast<int>(a.cols()), static_cast<int>(a.rows()),
                                 std::move(components), std::move(bounds), std::move(box));
}

inline liftsvd::Mat random_matrix(liftsvd::Rng& rng, std::size_t rows, std::size_t cols,
                                  double lo = -2.0, double hi = 2.0) {
    std::uniform_real_distribution<double> uni(lo, hi);
    liftsvd::Mat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = uni(rng);
    return m;
}

inline liftsvd::Vec random_point(liftsvd::Rng& rng, std::size_t n, double scale = 3.0) {
    std::uniform_real_distribution<double> uni(-scale, scale);
    liftsvd::Vec x(n);
    for (double& v : x) v = uni(rng);
    return x;
}

// ||a - b|| / max(1, ||b||)
inline double vec_rel_err(const liftsvd::Vec& a, const liftsvd::Vec& b) {
    liftsvd::Vec diff(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
    return liftsvd::norm2(diff) / std::max(1.0, liftsvd::norm2(b));
}

// Unique scratch directory removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::mt19937_64 rng(std::random_device{}());
        path_ = std::filesystem::temp_directory_path() /
                ("liftsvd_" + tag + "_" + std::to_string(rng()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }
    std::string str() const { return path_.string(); }

private:
    std::filesystem::path path_;
};

}  // namespace testutil

#endif
