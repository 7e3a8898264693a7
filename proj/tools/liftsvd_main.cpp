#include <string>

#include "CLI11.hpp"
#include "liftsvd/cli.hpp"

namespace {

void add_common_options(CLI::App* cmd, liftsvd::RunConfig& config) {
    cmd->add_option("--builtin", config.builtin, "Builtin function: siso or mimo");
    cmd->add_option("--spec", config.spec_path, "Function spec JSON file");
    cmd->add_option("--eta", config.eta, "Admissibility margin in (0, 1)")
        ->capture_default_str();
    cmd->add_option("--seed", config.seed, "RNG seed")->capture_default_str();
    cmd->add_option("--samples", config.samples, "Sample budget")->capture_default_str();
    cmd->add_option("--out", config.out_dir, "Output directory")->capture_default_str();
    cmd->add_option("--format", config.format, "Output format for figure data: csv or json")
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SVD-like decomposition f(x) = U Sigma v(x) for BIBO functions"};
    app.require_subcommand(1);

    liftsvd::RunConfig config;
    CLI::App* decompose =
        app.add_subcommand("decompose", "Select sigma and write the decomposition");
    CLI::App* certify = app.add_subcommand("certify", "Run the certificate suite");
    CLI::App* fig2 = app.add_subcommand("fig2", "Emit grid data for a 1-D function and lifting");
    CLI::App* fig3 = app.add_subcommand("fig3", "Emit grid data for a 2-D functional lifting");
    CLI::App* estimate =
        app.add_subcommand("estimate-norms", "Estimate component norm lower bounds");
    for (CLI::App* cmd : {decompose, certify, fig2, fig3, estimate})
        add_common_options(cmd, config);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return liftsvd::kExitConfig;
    }

    if (decompose->parsed()) return liftsvd::run_decompose(config);
    if (certify->parsed()) return liftsvd::run_certify(config);
    if (fig2->parsed()) return liftsvd::run_fig2(config);
    if (fig3->parsed()) return liftsvd::run_fig3(config);
    if (estimate->parsed()) return liftsvd::run_estimate_norms(config);
    return liftsvd::kExitConfig;
}
