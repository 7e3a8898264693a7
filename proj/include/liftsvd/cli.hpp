#ifndef LIFTSVD_CLI_HPP
#define LIFTSVD_CLI_HPP

#include <cstdint>
#include <string>

namespace liftsvd {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCertificateFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBoundViolation = 3;

struct RunConfig {
    std::string builtin;    // "siso" or "mimo"; empty when spec_path is set
    std::string spec_path;  // JSON function file
    double eta = 0.1;
    std::uint64_t seed = 0;
    int samples = 10000;
    std::string out_dir = ".";
    std::string format = "csv";  // csv | json, for the figure commands
};

// Writes decomposition.json and prints sigma, the admissibility sum, and m.
int run_decompose(const RunConfig& config);

// Runs the certificate suite into certificates.json; exit 0 iff all pass.
int run_certify(const RunConfig& config);

// 2001-point grid over the domain box for n = p = 1 functions: input,
// value, reconstruction, the +-sigma_1*|x| envelope, and both lifting
// coordinates. fig2.csv (or .json).
int run_fig2(const RunConfig& config);

// 201 x 201 grid for n = 2, p = 1 functions with a seeded random V*:
// value plus the projections of g onto the three right singular
// directions. Singular grid points keep their coordinates with empty
// cells. fig3.csv (or .json).
int run_fig3(const RunConfig& config);

// Norm estimation for every component plus declared-bound validation;
// exit 3 when a declared bound is falsified.
int run_estimate_norms(const RunConfig& config);

}  // namespace liftsvd

#endif
