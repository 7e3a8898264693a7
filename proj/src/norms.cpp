#include "liftsvd/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "liftsvd/errors.hpp"
#include "liftsvd/sampling.hpp"

namespace liftsvd {

ComponentOrdering order_components(const Vec& bounds) {
    for (double b : bounds)
        if (!(b >= 0.0)) throw ConfigError("order_components: bounds must be non-negative");
    ComponentOrdering ord;
    ord.q.resize(bounds.size());
    std::iota(ord.q.begin(), ord.q.end(), 0);
    std::stable_sort(ord.q.begin(), ord.q.end(),
                     [&](int a, int b) { return bounds[static_cast<std::size_t>(a)] >
                                                bounds[static_cast<std::size_t>(b)]; });
    ord.inverse.assign(bounds.size(), 0);
    for (std::size_t i = 0; i < ord.q.size(); ++i)
        ord.inverse[static_cast<std::size_t>(ord.q[i])] = static_cast<int>(i);
    return ord;
}

namespace {

struct RatioEval {
    const FunctionSpec& f;
    const Expression& component;
    long evals = 0;

    // |f_i(x)| / ||x||, or -1 if x hits the singular set.
    double operator()(const Vec& x) {
        const double nrm = norm2(x);
        if (nrm == 0.0) return -1.0;
        ++evals;
        try {
            return std::abs(eval(component, x)) / nrm;
        } catch (const DomainError&) {
            return -1.0;
        }
    }
};

bool inside_box(const Vec& x, const std::vector<Interval>& box) {
    for (std::size_t i = 0; i < box.size(); ++i)
        if (x[i] < box[i].lo || x[i] > box[i].hi) return false;
    return true;
}

}  // namespace

NormEstimate estimate_component_norm(const FunctionSpec& f, int component, long budget,
                                     int restarts, std::uint64_t seed) {
    if (component < 1 || component > f.output_dim())
        throw ConfigError("estimate_component_norm: component index out of range");
    if (budget < 1) throw ConfigError("estimate_component_norm: budget must be >= 1");
    restarts = std::max(restarts, 1);

    const auto& box = f.domain_box();
    const int n = f.input_dim();
    const double r_max = max_inscribed_radius(box);
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(component));
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    RatioEval ratio{f, f.components()[static_cast<std::size_t>(component - 1)]};

    // Phase 1: random sphere radii inside the box (uniform box points if
    // the box does not contain the origin), keeping the best `restarts`.
    std::vector<std::pair<double, Vec>> best;  // descending by ratio
    long valid = 0;
    for (long k = 0; k < budget; ++k) {
        Vec x;
        if (r_max > 0.0) {
            x = sample_direction(rng, n);
            const double radius = r_max * std::max(unit(rng), 1e-300);
            for (double& v : x) v *= radius;
        } else {
            x = sample_box_point(rng, box);
        }
        const double r = ratio(x);
        if (r < 0.0) continue;
        ++valid;
        if (best.size() < static_cast<std::size_t>(restarts) || r > best.back().first) {
            best.emplace_back(r, std::move(x));
            std::sort(best.begin(), best.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });
            if (best.size() > static_cast<std::size_t>(restarts)) best.pop_back();
        }
    }
    if (valid == 0)
        throw EstimationError("estimate_component_norm: every sample hit a domain error");

    // Phase 2: coordinate-wise refinement of each start point.
    double best_ratio = best.front().first;
    Vec best_x = best.front().second;
    for (auto& [r0, x0] : best) {
        Vec x = x0;
        double current = r0;
        Vec step(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j)
            step[static_cast<std::size_t>(j)] =
                0.05 * (box[static_cast<std::size_t>(j)].hi - box[static_cast<std::size_t>(j)].lo);
        for (int sweep = 0; sweep < 100; ++sweep) {
            bool improved = false;
            for (int j = 0; j < n; ++j) {
                for (const double dir : {1.0, -1.0}) {
                    Vec cand = x;
                    cand[static_cast<std::size_t>(j)] += dir * step[static_cast<std::size_t>(j)];
                    if (!inside_box(cand, box)) continue;
                    const double r = ratio(cand);
                    if (r > current) {
                        current = r;
                        x = std::move(cand);
                        improved = true;
                    }
                }
            }
            if (!improved)
                for (double& s : step) s *= 0.5;
        }
        if (current > best_ratio) {
            best_ratio = current;
            best_x = x;
        }
    }

    NormEstimate est;
    est.component = component;
    est.lower_bound = best_ratio;
    est.declared_bound = f.norm_bounds()[static_cast<std::size_t>(component - 1)];
    est.witness = best_x;
    est.samples_used = ratio.evals;
    return est;
}

std::vector<NormEstimate> estimate_norms(const FunctionSpec& f, long budget, int restarts,
                                         std::uint64_t seed) {
    // Per-component streams are keyed by (seed, i), merged in index order.
    std::vector<NormEstimate> out;
    out.reserve(static_cast<std::size_t>(f.output_dim()));
    for (int i = 1; i <= f.output_dim(); ++i)
        out.push_back(estimate_component_norm(f, i, budget, restarts, seed));
    return out;
}

std::vector<BoundViolation> validate_bounds(const FunctionSpec& f,
                                            const std::vector<NormEstimate>& estimates) {
    if (estimates.size() != static_cast<std::size_t>(f.output_dim()))
        throw ConfigError("validate_bounds: one estimate per component required");
    std::vector<BoundViolation> violations;
    for (const NormEstimate& est : estimates) {
        const double declared = f.norm_bounds()[static_cast<std::size_t>(est.component - 1)];
        if (est.lower_bound > declared * (1.0 + 1e-9))
            violations.push_back({est.component, est.lower_bound, declared, est.witness});
    }
    return violations;
}

}  // namespace liftsvd
