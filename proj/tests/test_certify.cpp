#include <cmath>
#include <limits>

#include "doctest.h"
#include "helpers.hpp"
#include "liftsvd/certify.hpp"
#include "liftsvd/errors.hpp"
#include "liftsvd/json_io.hpp"

using namespace liftsvd;

namespace {

FunctionSpec scalar_identity() {
    Mat a(1, 1);
    a(0, 0) = 1.0;
    return testutil::linear_function(a);
}

}  // namespace

TEST_CASE("reconstruction certificate is essentially exact for linear maps") {
    const FunctionSpec f = scalar_identity();
    const Decomposition dec = make_decomposition(f, 0.1);
    const Certificate cert = certify_reconstruction(dec, f, 500, 1);
    CHECK(cert.pass);
    CHECK(cert.max_violation <= 1e-12);
    CHECK(cert.threshold == 1e-9);
    CHECK(cert.samples == 501);  // the origin rides along
    CHECK(cert.name == "reconstruction");
}

TEST_CASE("envelope certificate sees the constant linear ratio") {
    const FunctionSpec f = scalar_identity();
    const SigmaSpec sigma =
        make_sigma_spec({2.0}, f.norm_bounds(), order_components(f.norm_bounds()), 0.5, 1);
    const Decomposition dec = make_decomposition(f, sigma);
    const Certificate cert = certify_envelope(dec, f, 300, 2);
    CHECK(cert.pass);
    CHECK(cert.max_violation == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("envelope certificate on the SISO builtin stays below sqrt(1 - eta)") {
    const FunctionSpec f = builtin_siso();
    const Decomposition dec = make_decomposition(f, 0.1);
    const Certificate cert = certify_envelope(dec, f, 5000, 3);
    CHECK(cert.pass);
    // |f(x)| <= ||x|| pointwise and sigma_1 = 1/sqrt(0.9).
    CHECK(cert.max_violation <= std::sqrt(0.9) + 1e-9);
    CHECK(cert.max_violation > 0.5);  // the bound is actually approached
}

TEST_CASE("envelope requires a positive sigma_1") {
    Mat a(1, 1);  // zero function
    const FunctionSpec f = testutil::linear_function(a);
    const Decomposition dec = make_decomposition(f, 0.1);
    CHECK_THROWS_AS(certify_envelope(dec, f, 10, 0), ConfigError);
}

TEST_CASE("norm preservation holds for the real lifting and fails for v := f") {
    const FunctionSpec f = builtin_siso();
    const Decomposition dec = make_decomposition(f, 0.1);

    const Certificate good = certify_norm_preservation(dec, f, 2000, 4);
    CHECK(good.pass);
    CHECK(good.threshold == 1e-12);

    // The shortcut "lifting" v(x) := f(x) with Sigma = I reconstructs
    // trivially but is not norm-preserving, so it must fail here.
    const Certificate bad = certify_lifting_norm_preservation(
        "trivial_fixture", [&](const Vec& x) { return eval_f(f, x); }, f, 2000, 4);
    CHECK(!bad.pass);
    CHECK(bad.max_violation > 1e-3);
    CHECK(!bad.witness.empty());
}

TEST_CASE("injectivity certificate round-trips and dedupes") {
    const FunctionSpec f = builtin_siso();
    const Decomposition dec = make_decomposition(f, 0.1);
    const Certificate cert = certify_injectivity(dec, f, 1000, 5);
    CHECK(cert.pass);
    CHECK(cert.threshold == 1e-10);

    // Duplicate inputs are removed before the pairwise-distinct check, so
    // they do not register as a fake collision.
    const std::vector<Vec> with_dupes{{1.0}, {2.0}, {1.0}, {3.0}, {2.0}};
    const Certificate dedup = certify_injectivity_points(dec, f, with_dupes);
    CHECK(dedup.pass);
    CHECK(dedup.samples == 3);
}

TEST_CASE("sigma admissibility certificate") {
    const Vec bounds{1.0, 0.5};
    const ComponentOrdering ord = order_components(bounds);

    SUBCASE("select_sigma output passes with the exact sum") {
        const SigmaSpec spec = select_sigma(bounds, ord, 0.1, 1);
        const Certificate cert = certify_sigma_admissible(spec, bounds);
        CHECK(cert.pass);
        CHECK(cert.max_violation <= 1e-12);
    }
    SUBCASE("sigma = bounds violates the admissibility sum") {
        SigmaSpec spec;  // hand-built, bypassing validation on purpose
        spec.sigma = bounds;
        spec.m = 3;
        spec.eta = 0.1;
        spec.ordering = ord;
        const Certificate cert = certify_sigma_admissible(spec, bounds);
        CHECK(!cert.pass);
        CHECK(cert.max_violation >= 1.0);  // sum = 2 vs 0.9
    }
    SUBCASE("ascending sigma fails the ordering check") {
        SigmaSpec spec;
        spec.sigma = {0.5, 3.0};
        spec.m = 3;
        spec.eta = 0.1;
        spec.ordering = ord;
        CHECK(!certify_sigma_admissible(spec, bounds).pass);
    }
    SUBCASE("zero sigma against a positive bound fails hard") {
        SigmaSpec spec;
        spec.sigma = {2.0, 0.0};
        spec.m = 3;
        spec.eta = 0.1;
        spec.ordering = ord;
        const Certificate cert = certify_sigma_admissible(spec, bounds);
        CHECK(!cert.pass);
        CHECK(std::isinf(cert.max_violation));
    }
}

TEST_CASE("the full suite passes for identity and random linear maps") {
    Rng rng = make_rng(3030, 0);
    std::vector<FunctionSpec> cases{scalar_identity()};
    for (int trial = 0; trial < 3; ++trial) {
        std::uniform_int_distribution<int> dim(1, 6);
        cases.push_back(testutil::linear_function(
            testutil::random_matrix(rng, static_cast<std::size_t>(dim(rng)),
                                    static_cast<std::size_t>(dim(rng)))));
    }
    for (const FunctionSpec& f : cases) {
        const Decomposition dec = make_decomposition(f, 0.1);
        for (const Certificate& cert : run_certificate_suite(dec, f, 400, 6)) {
            CAPTURE(cert.name);
            CHECK(cert.pass);
        }
    }
}

TEST_CASE("certificates are deterministic per seed") {
    const FunctionSpec f = builtin_mimo();
    const Decomposition dec = make_decomposition(f, 0.1);
    const std::string a = certificates_to_string(run_certificate_suite(dec, f, 300, 42));
    const std::string b = certificates_to_string(run_certificate_suite(dec, f, 300, 42));
    CHECK(a == b);
    const std::string c = certificates_to_string(run_certificate_suite(dec, f, 300, 43));
    CHECK(a != c);
}

TEST_CASE("certificates serialize losslessly, including non-finite violations") {
    Certificate cert;
    cert.name = "example";
    cert.max_violation = 0.1 + 0.2;  // not representable exactly; must survive
    cert.threshold = 1e-9;
    cert.samples = 10;
    cert.witness = {1.0 / 3.0, -2.5};
    cert.pass = false;

    json j = cert;
    Certificate back = j.get<Certificate>();
    CHECK(back.name == cert.name);
    CHECK(back.max_violation == cert.max_violation);
    CHECK(back.threshold == cert.threshold);
    CHECK(back.samples == cert.samples);
    CHECK(back.witness == cert.witness);
    CHECK(back.pass == cert.pass);

    cert.max_violation = std::numeric_limits<double>::infinity();
    json j2 = cert;
    CHECK(std::isinf(j2.get<Certificate>().max_violation));
}
