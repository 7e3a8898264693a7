#include "liftsvd/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "liftsvd/errors.hpp"

namespace liftsvd {

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    return Rng(seq);
}

double max_inscribed_radius(const std::vector<Interval>& box) {
    double r = std::numeric_limits<double>::infinity();
    for (const Interval& iv : box) r = std::min(r, std::min(-iv.lo, iv.hi));
    return std::max(r, 0.0);
}

Vec sample_direction(Rng& rng, int n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec u(static_cast<std::size_t>(n));
    for (;;) {
        for (double& v : u) v = gauss(rng);
        const double nrm = norm2(u);
        if (nrm > 1e-12) {
            for (double& v : u) v /= nrm;
            return u;
        }
    }
}

Vec sample_box_point(Rng& rng, const std::vector<Interval>& box) {
    Vec x(box.size());
    for (std::size_t i = 0; i < box.size(); ++i) {
        std::uniform_real_distribution<double> uni(box[i].lo, box[i].hi);
        x[i] = uni(rng);
    }
    return x;
}

std::vector<Vec> certification_samples(const FunctionSpec& f, int count, std::uint64_t seed) {
    Rng rng = make_rng(seed, 0);
    const auto& box = f.domain_box();
    const double r_max = max_inscribed_radius(box);
    std::uniform_real_distribution<double> log_exp(-6.0, 0.0);

    std::vector<Vec> out;
    out.reserve(static_cast<std::size_t>(count));
    int rejected = 0;
    while (static_cast<int>(out.size()) < count) {
        Vec x;
        const bool use_sphere = (out.size() % 2 == 1) && r_max > 0.0;
        if (use_sphere) {
            x = sample_direction(rng, f.input_dim());
            const double radius = r_max * std::pow(10.0, log_exp(rng));
            for (double& v : x) v *= radius;
        } else {
            x = sample_box_point(rng, box);
        }
        if (norm2(x) == 0.0) continue;
        try {
            (void)eval_f(f, x);
        } catch (const DomainError&) {
            // Measure-zero singular set; redraw.
            if (++rejected > 100 * count + 1000)
                throw EstimationError("could not sample evaluable points in the domain box");
            continue;
        }
        out.push_back(std::move(x));
    }
    return out;
}

}  // namespace liftsvd
