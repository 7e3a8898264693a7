#ifndef LIFTSVD_CERTIFY_HPP
#define LIFTSVD_CERTIFY_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "liftsvd/liftcore.hpp"

namespace liftsvd {

// Result of one sampled property check. pass <=> max_violation <= threshold.
struct Certificate {
    std::string name;
    double max_violation = 0.0;
    double threshold = 0.0;
    long samples = 0;
    Vec witness;  // worst sampled x, empty when not applicable
    bool pass = false;
};

// max ||U Sigma v(x) - f(x)|| / max(1, ||f(x)||) over the samples plus the
// origin; threshold 1e-9.
Certificate certify_reconstruction(const Decomposition& dec, const FunctionSpec& f, int samples,
                                   std::uint64_t seed);

// max ||f(x)|| / (sigma_1 ||x||); threshold 1.0. The margin 1 - max is the
// observed slack in the induced-norm envelope (the construction makes the
// bound strict, which sampling alone cannot certify). Requires sigma_1 > 0.
Certificate certify_envelope(const Decomposition& dec, const FunctionSpec& f, int samples,
                             std::uint64_t seed);

// max | ||v(x)|| - ||x|| | / max(1, ||x||) with v from the decomposition's
// lifting; threshold 1e-12.
Certificate certify_norm_preservation(const Decomposition& dec, const FunctionSpec& f,
                                      int samples, std::uint64_t seed);

// Same check against an arbitrary candidate lifting. Lets callers show
// that maps which skip the norm-preservation constraint (like v := f with
// Sigma = I) are rejected.
using LiftingFn = std::function<Vec(const Vec&)>;
Certificate certify_lifting_norm_preservation(const std::string& name, const LiftingFn& lifting,
                                              const FunctionSpec& f, int samples,
                                              std::uint64_t seed);

// Round-trip unlift(lift(x)) = x to 1e-10 relative; additionally all
// pairwise-distinct sampled x must map to pairwise-distinct v (duplicates
// in the sample set are removed first).
Certificate certify_injectivity(const Decomposition& dec, const FunctionSpec& f, int samples,
                                std::uint64_t seed);

// Same check over caller-supplied points (duplicates are removed first).
Certificate certify_injectivity_points(const Decomposition& dec, const FunctionSpec& f,
                                       std::vector<Vec> points);

// Descending order and admissibility sum <= 1 - eta for the given bounds;
// threshold 1e-12 (rounding slack only).
Certificate certify_sigma_admissible(const SigmaSpec& sigma, const Vec& bounds);

// The full suite in a fixed order, each certificate fed the same seed.
std::vector<Certificate> run_certificate_suite(const Decomposition& dec, const FunctionSpec& f,
                                               int samples, std::uint64_t seed);

}  // namespace liftsvd

#endif
