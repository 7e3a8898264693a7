#ifndef LIFTSVD_NORMS_HPP
#define LIFTSVD_NORMS_HPP

#include <cstdint>
#include <vector>

#include "liftsvd/expr.hpp"
#include "liftsvd/linalg.hpp"

namespace liftsvd {

// Best observed lower bound on ||f_i||_{2-2}. A sampler can falsify a
// declared bound but never certify one, so `lower_bound <= declared_bound`
// is only evidence, not proof, that the declaration holds.
struct NormEstimate {
    int component = 0;       // 1-based
    double lower_bound = 0.0;
    double declared_bound = 0.0;
    Vec witness;             // argmax of |f_i(x)| / ||x||
    long samples_used = 0;   // total component evaluations spent
};

// Permutation q ranking components by descending declared bound:
// q[i] is the 0-based original index of the (i+1)-th largest bound.
struct ComponentOrdering {
    std::vector<int> q;
    std::vector<int> inverse;  // inverse[q[i]] == i

    int size() const { return static_cast<int>(q.size()); }
};

// Stable descending sort of the bounds; ties keep the lower original
// index first.
ComponentOrdering order_components(const Vec& bounds);

// Estimates a lower bound on ||f_i||_{2-2} by sampling spheres of random
// radii inside the domain box and refining the best `restarts` points with
// coordinate-wise hill climbing (100 sweeps, step halved when a sweep
// fails to improve). Deterministic given (seed, i); points where f_i is
// not evaluable are skipped. Throws EstimationError if every sample hits
// a domain error.
NormEstimate estimate_component_norm(const FunctionSpec& f, int component, long budget,
                                     int restarts, std::uint64_t seed);

// All components, merged by index.
std::vector<NormEstimate> estimate_norms(const FunctionSpec& f, long budget, int restarts,
                                         std::uint64_t seed);

struct BoundViolation {
    int component = 0;  // 1-based
    double lower_bound = 0.0;
    double declared_bound = 0.0;
    Vec witness;
};

// Components whose observed lower bound exceeds the declared bound
// (beyond 1e-9 relative slack). Empty means the declarations were not
// falsified.
std::vector<BoundViolation> validate_bounds(const FunctionSpec& f,
                                            const std::vector<NormEstimate>& estimates);

}  // namespace liftsvd

#endif
