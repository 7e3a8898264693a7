#ifndef LIFTSVD_ERRORS_HPP
#define LIFTSVD_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace liftsvd {

// Base class for all liftsvd errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed expression text. `offset` is the byte position of the first
// offending character.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t offset)
        : Error(msg + " (at offset " + std::to_string(offset) + ")"),
          offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

// Evaluation hit a point where the expression is undefined (division by
// zero, sqrt of a negative, negative base with non-integer exponent).
// `component` is the 1-based component index when raised through eval_f,
// 0 otherwise.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg, int component = 0)
        : Error(msg), component_(component) {}
    int component() const { return component_; }

private:
    int component_;
};

// A declared induced-norm bound was falsified at runtime: the lifting ran
// into S >= 1 at `witness`, which is impossible when every |f_i(x)| really
// is <= b_i * ||x||.
class BoundViolationError : public Error {
public:
    BoundViolationError(const std::string& msg, std::vector<double> witness,
                        double s_value)
        : Error(msg), witness_(std::move(witness)), s_value_(s_value) {}
    const std::vector<double>& witness() const { return witness_; }
    double s_value() const { return s_value_; }

private:
    std::vector<double> witness_;
    double s_value_;
};

// Norm estimation could not produce a single valid sample.
class EstimationError : public Error {
public:
    using Error::Error;
};

// Bad user-facing configuration: invalid dimensions, unreadable spec
// files, out-of-range parameters.
class ConfigError : public Error {
public:
    using Error::Error;
};

// A vector handed to unlift is not in the image of the lifting.
class ImageError : public Error {
public:
    using Error::Error;
};

}  // namespace liftsvd

#endif
