#include "liftsvd/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "liftsvd/errors.hpp"
#include "liftsvd/sampling.hpp"

namespace liftsvd {

namespace {

struct WorstCase {
    double violation = 0.0;
    Vec witness;

    void update(double v, const Vec& x) {
        if (v > violation || witness.empty()) {
            violation = std::max(v, violation);
            witness = x;
        }
    }
};

Certificate finish(std::string name, const WorstCase& worst, double threshold, long samples) {
    Certificate cert;
    cert.name = std::move(name);
    cert.max_violation = worst.violation;
    cert.threshold = threshold;
    cert.samples = samples;
    cert.witness = worst.witness;
    cert.pass = worst.violation <= threshold;
    return cert;
}

}  // namespace

Certificate certify_reconstruction(const Decomposition& dec, const FunctionSpec& f, int samples,
                                   std::uint64_t seed) {
    if (samples < 1) throw ConfigError("certify_reconstruction: samples must be >= 1");
    std::vector<Vec> points = certification_samples(f, samples, seed);
    points.push_back(Vec(static_cast<std::size_t>(f.input_dim()), 0.0));

    WorstCase worst;
    for (const Vec& x : points) {
        const LiftedPoint lp = lift(x, f, dec.sigma_spec);
        const Vec rec = reconstruct(lp, dec);
        Vec diff(rec.size());
        for (std::size_t i = 0; i < rec.size(); ++i) diff[i] = rec[i] - lp.fx[i];
        worst.update(norm2(diff) / std::max(1.0, norm2(lp.fx)), x);
    }
    return finish("reconstruction", worst, 1e-9, static_cast<long>(points.size()));
}

Certificate certify_envelope(const Decomposition& dec, const FunctionSpec& f, int samples,
                             std::uint64_t seed) {
    const Vec& sigma = dec.sigma_spec.sigma;
    if (sigma.empty() || sigma[0] <= 0.0)
        throw ConfigError("certify_envelope requires sigma_1 > 0");
    const double sigma1 = sigma[0];

    WorstCase worst;
    const std::vector<Vec> points = certification_samples(f, samples, seed);
    for (const Vec& x : points)
        worst.update(norm2(eval_f(f, x)) / (sigma1 * norm2(x)), x);
    return finish("envelope", worst, 1.0, static_cast<long>(points.size()));
}

Certificate certify_lifting_norm_preservation(const std::string& name, const LiftingFn& lifting,
                                              const FunctionSpec& f, int samples,
                                              std::uint64_t seed) {
    WorstCase worst;
    const std::vector<Vec> points = certification_samples(f, samples, seed);
    for (const Vec& x : points) {
        const double nx = norm2(x);
        worst.update(std::abs(norm2(lifting(x)) - nx) / std::max(1.0, nx), x);
    }
    return finish(name, worst, 1e-12, static_cast<long>(points.size()));
}

Certificate certify_norm_preservation(const Decomposition& dec, const FunctionSpec& f,
                                      int samples, std::uint64_t seed) {
    return certify_lifting_norm_preservation(
        "norm_preservation",
        [&](const Vec& x) { return lift(x, f, dec.sigma_spec).v; }, f, samples, seed);
}

Certificate certify_injectivity(const Decomposition& dec, const FunctionSpec& f, int samples,
                                std::uint64_t seed) {
    return certify_injectivity_points(dec, f, certification_samples(f, samples, seed));
}

Certificate certify_injectivity_points(const Decomposition& dec, const FunctionSpec& f,
                                       std::vector<Vec> points) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    WorstCase worst;
    std::vector<Vec> lifted;
    lifted.reserve(points.size());
    for (const Vec& x : points) {
        const LiftedPoint lp = lift(x, f, dec.sigma_spec);
        const Vec back = unlift(lp.v, f.input_dim(), f.output_dim());
        Vec diff(back.size());
        for (std::size_t i = 0; i < back.size(); ++i) diff[i] = back[i] - x[i];
        worst.update(norm2(diff) / std::max(1.0, norm2(x)), x);
        lifted.push_back(lp.v);
    }

    // Distinct inputs must stay distinct after lifting: a zero pairwise
    // v-distance is exactly a duplicate vector.
    std::vector<std::size_t> order(lifted.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return lifted[a] < lifted[b]; });
    for (std::size_t i = 0; i + 1 < order.size(); ++i)
        if (lifted[order[i]] == lifted[order[i + 1]])
            worst.update(std::numeric_limits<double>::infinity(), points[order[i]]);

    return finish("injectivity", worst, 1e-10, static_cast<long>(points.size()));
}

Certificate certify_sigma_admissible(const SigmaSpec& sigma, const Vec& bounds) {
    if (bounds.size() != sigma.sigma.size())
        throw ConfigError("certify_sigma_admissible: bounds size mismatch");

    double violation = 0.0;
    for (std::size_t i = 0; i + 1 < sigma.sigma.size(); ++i)
        violation = std::max(violation, sigma.sigma[i + 1] - sigma.sigma[i]);

    double sum = 0.0;
    for (std::size_t i = 0; i < sigma.sigma.size(); ++i) {
        const double b = bounds[static_cast<std::size_t>(sigma.ordering.q[i])];
        if (b <= 0.0) continue;
        if (sigma.sigma[i] == 0.0) {
            violation = std::numeric_limits<double>::infinity();
            continue;
        }
        sum += (b / sigma.sigma[i]) * (b / sigma.sigma[i]);
    }
    violation = std::max(violation, sum - (1.0 - sigma.eta));

    WorstCase worst;
    worst.violation = std::max(violation, 0.0);
    return finish("sigma_admissible", worst, 1e-12, 0);
}

std::vector<Certificate> run_certificate_suite(const Decomposition& dec, const FunctionSpec& f,
                                               int samples, std::uint64_t seed) {
    std::vector<Certificate> certs;
    certs.push_back(certify_sigma_admissible(dec.sigma_spec, f.norm_bounds()));
    certs.push_back(certify_reconstruction(dec, f, samples, seed));
    if (!dec.sigma_spec.sigma.empty() && dec.sigma_spec.sigma[0] > 0.0)
        certs.push_back(certify_envelope(dec, f, samples, seed));
    certs.push_back(certify_norm_preservation(dec, f, samples, seed));
    certs.push_back(certify_injectivity(dec, f, samples, seed));
    return certs;
}

}  // namespace liftsvd
