#ifndef LIFTSVD_SAMPLING_HPP
#define LIFTSVD_SAMPLING_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "liftsvd/expr.hpp"
#include "liftsvd/linalg.hpp"

namespace liftsvd {

using Rng = std::mt19937_64;

// Independent deterministic stream for (seed, stream).
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

// Radius of the largest origin-centered sphere inside the box; 0 if the
// box does not contain the origin.
double max_inscribed_radius(const std::vector<Interval>& box);

// Uniform direction on the unit sphere in R^n.
Vec sample_direction(Rng& rng, int n);

// Uniform point in the box.
Vec sample_box_point(Rng& rng, const std::vector<Interval>& box);

// Sample points for certification: alternating uniform box points and
// sphere points with log-spaced radii (so small and large ||x|| are both
// exercised). Points where f is not evaluable are skipped and redrawn;
// x = 0 is never produced. Deterministic per seed.
std::vector<Vec> certification_samples(const FunctionSpec& f, int count, std::uint64_t seed);

}  // namespace liftsvd

#endif
