#include "liftsvd/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "liftsvd/certify.hpp"
#include "liftsvd/errors.hpp"
#include "liftsvd/factor.hpp"
#include "liftsvd/json_io.hpp"
#include "liftsvd/liftcore.hpp"
#include "liftsvd/norms.hpp"

namespace liftsvd {

namespace {

enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("LIFTSVD_LOG");
        if (!env) return LogLevel::Info;
        const std::string v = env;
        if (v == "error") return LogLevel::Error;
        if (v == "debug") return LogLevel::Debug;
        return LogLevel::Info;
    }();
    return level;
}

void log_info(const std::string& msg) {
    if (log_level() >= LogLevel::Info) std::cerr << "[liftsvd] " << msg << "\n";
}

void log_debug(const std::string& msg) {
    if (log_level() >= LogLevel::Debug) std::cerr << "[liftsvd] " << msg << "\n";
}

void validate_config(const RunConfig& config) {
    if (config.builtin.empty() == config.spec_path.empty())
        throw ConfigError("exactly one of --builtin and --spec is required");
    if (!config.builtin.empty() && config.builtin != "siso" && config.builtin != "mimo")
        throw ConfigError("unknown builtin '" + config.builtin + "' (expected siso or mimo)");
    if (!(config.eta > 0.0 && config.eta < 1.0)) throw ConfigError("--eta must be in (0, 1)");
    if (config.samples < 1) throw ConfigError("--samples must be >= 1");
    if (config.format != "csv" && config.format != "json")
        throw ConfigError("--format must be csv or json");
}

FunctionSpec load_function(const RunConfig& config) {
    if (config.builtin == "siso") return builtin_siso();
    if (config.builtin == "mimo") return builtin_mimo();
    return load_function_spec(config.spec_path);
}

std::filesystem::path output_path(const RunConfig& config, const std::string& name) {
    std::filesystem::create_directories(config.out_dir);
    return std::filesystem::path(config.out_dir) / name;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    out << contents;
    log_info("wrote " + path.string());
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double admissibility_sum(const Decomposition& dec) {
    double sum = 0.0;
    const auto& bounds = dec.function.norm_bounds();
    for (std::size_t i = 0; i < dec.sigma_spec.sigma.size(); ++i) {
        const double b = bounds[static_cast<std::size_t>(dec.sigma_spec.ordering.q[i])];
        if (b > 0.0) sum += (b / dec.sigma_spec.sigma[i]) * (b / dec.sigma_spec.sigma[i]);
    }
    return sum;
}

// All commands share the error-to-exit-code mapping.
template <typename Body>
int guarded(const RunConfig& config, Body&& body) {
    try {
        validate_config(config);
        return body();
    } catch (const BoundViolationError& e) {
        std::ostringstream witness;
        witness << "(";
        for (std::size_t i = 0; i < e.witness().size(); ++i)
            witness << (i ? ", " : "") << fmt(e.witness()[i]);
        witness << ")";
        std::cerr << "bound violation: " << e.what() << "\nwitness x = " << witness.str() << "\n";
        return kExitBoundViolation;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}

}  // namespace

int run_decompose(const RunConfig& config) {
    return guarded(config, [&] {
        const FunctionSpec f = load_function(config);
        const Decomposition dec = make_decomposition(f, config.eta);

        write_file(output_path(config, "decomposition.json"),
                   decomposition_to_json(dec).dump(2) + "\n");

        std::cout << "n = " << f.input_dim() << ", p = " << f.output_dim()
                  << ", m = " << dec.sigma_spec.m << "\n";
        std::cout << "sigma =";
        for (double s : dec.sigma_spec.sigma) std::cout << " " << fmt(s);
        std::cout << "\n";
        std::cout << "admissibility sum = " << fmt(admissibility_sum(dec)) << " (target "
                  << fmt(1.0 - config.eta) << ")\n";
        return kExitOk;
    });
}

int run_certify(const RunConfig& config) {
    return guarded(config, [&] {
        const FunctionSpec f = load_function(config);
        const Decomposition dec = make_decomposition(f, config.eta);
        const std::vector<Certificate> certs =
            run_certificate_suite(dec, f, config.samples, config.seed);

        write_file(output_path(config, "certificates.json"), certificates_to_string(certs));

        bool all_pass = true;
        for (const Certificate& cert : certs) {
            std::cout << (cert.pass ? "PASS " : "FAIL ") << cert.name
                      << "  max_violation=" << fmt(cert.max_violation)
                      << " threshold=" << fmt(cert.threshold) << " samples=" << cert.samples;
            if (cert.name == "envelope")
                std::cout << " margin=" << fmt(1.0 - cert.max_violation);
            std::cout << "\n";
            all_pass = all_pass && cert.pass;
        }
        return all_pass ? kExitOk : kExitCertificateFailure;
    });
}

int run_fig2(const RunConfig& config) {
    return guarded(config, [&] {
        const FunctionSpec f = load_function(config);
        if (f.input_dim() != 1 || f.output_dim() != 1)
            throw ConfigError("fig2 requires n = 1, p = 1");
        const Decomposition dec = make_decomposition(f, config.eta);
        const double sigma1 = dec.sigma_spec.sigma[0];
        const Interval box = f.domain_box()[0];

        constexpr int kGrid = 2001;
        struct Row {
            double x;
            bool valid;
            double fx, rec, v1, v2;
        };
        std::vector<Row> rows;
        rows.reserve(kGrid);
        for (int k = 0; k < kGrid; ++k) {
            const double x = box.lo + (box.hi - box.lo) * k / (kGrid - 1);
            Row row{x, true, 0.0, 0.0, 0.0, 0.0};
            try {
                const LiftedPoint lp = lift({x}, f, dec.sigma_spec);
                row.fx = lp.fx[0];
                row.rec = reconstruct(lp, dec)[0];
                row.v1 = lp.v[0];
                row.v2 = lp.v[1];
            } catch (const DomainError&) {
                row.valid = false;
            }
            rows.push_back(row);
        }
        log_debug("fig2 grid evaluated");

        if (config.format == "json") {
            json out = json::array();
            for (const Row& r : rows) {
                json entry{{"x", r.x},
                           {"envelope_upper", sigma1 * std::abs(r.x)},
                           {"envelope_lower", -sigma1 * std::abs(r.x)}};
                if (r.valid) {
                    entry["f"] = r.fx;
                    entry["reconstruction"] = r.rec;
                    entry["v_1"] = r.v1;
                    entry["v_2"] = r.v2;
                } else {
                    entry["f"] = nullptr;
                    entry["reconstruction"] = nullptr;
                    entry["v_1"] = nullptr;
                    entry["v_2"] = nullptr;
                }
                out.push_back(std::move(entry));
            }
            write_file(output_path(config, "fig2.json"), out.dump(2) + "\n");
        } else {
            std::ostringstream out;
            out << "x,f,reconstruction,envelope_upper,envelope_lower,v_1,v_2\n";
            for (const Row& r : rows) {
                out << fmt(r.x) << ",";
                if (r.valid)
                    out << fmt(r.fx) << "," << fmt(r.rec) << ",";
                else
                    out << ",,";
                out << fmt(sigma1 * std::abs(r.x)) << "," << fmt(-sigma1 * std::abs(r.x)) << ",";
                if (r.valid)
                    out << fmt(r.v1) << "," << fmt(r.v2) << "\n";
                else
                    out << ",\n";
            }
            write_file(output_path(config, "fig2.csv"), out.str());
        }
        return kExitOk;
    });
}

int run_fig3(const RunConfig& config) {
    return guarded(config, [&] {
        const FunctionSpec f = load_function(config);
        if (f.input_dim() != 2 || f.output_dim() != 1)
            throw ConfigError("fig3 requires n = 2, p = 1");
        const Decomposition dec = make_decomposition(f, config.eta);
        const UnitaryMatrix vstar = random_unitary(dec.sigma_spec.m, config.seed);
        const KFactorization kf = compose_K(dec, vstar);

        constexpr int kGrid = 201;
        const Interval bx = f.domain_box()[0];
        const Interval by = f.domain_box()[1];

        struct Row {
            double x1, x2;
            bool valid;
            double fx;
            Vec proj;
        };
        std::vector<Row> rows;
        rows.reserve(kGrid * kGrid);
        for (int i = 0; i < kGrid; ++i) {
            const double x1 = bx.lo + (bx.hi - bx.lo) * i / (kGrid - 1);
            for (int j = 0; j < kGrid; ++j) {
                const double x2 = by.lo + (by.hi - by.lo) * j / (kGrid - 1);
                Row row{x1, x2, true, 0.0, {}};
                try {
                    const Vec x{x1, x2};
                    row.fx = eval_f(f, x)[0];
                    row.proj = matvec(vstar.matrix(), kf.g(x));
                } catch (const DomainError&) {
                    row.valid = false;
                }
                rows.push_back(std::move(row));
            }
        }
        log_debug("fig3 grid evaluated");

        if (config.format == "json") {
            json out = json::array();
            for (const Row& r : rows) {
                json entry{{"x1", r.x1}, {"x2", r.x2}};
                if (r.valid) {
                    entry["f"] = r.fx;
                    entry["proj_v_1"] = r.proj[0];
                    entry["proj_v_2"] = r.proj[1];
                    entry["proj_v_3"] = r.proj[2];
                } else {
                    entry["f"] = nullptr;
                    entry["proj_v_1"] = nullptr;
                    entry["proj_v_2"] = nullptr;
                    entry["proj_v_3"] = nullptr;
                }
                out.push_back(std::move(entry));
            }
            write_file(output_path(config, "fig3.json"), out.dump(2) + "\n");
        } else {
            std::ostringstream out;
            out << "x1,x2,f,proj_v_1,proj_v_2,proj_v_3\n";
            for (const Row& r : rows) {
                out << fmt(r.x1) << "," << fmt(r.x2) << ",";
                if (r.valid)
                    out << fmt(r.fx) << "," << fmt(r.proj[0]) << "," << fmt(r.proj[1]) << ","
                        << fmt(r.proj[2]) << "\n";
                else
                    out << ",,,\n";
            }
            write_file(output_path(config, "fig3.csv"), out.str());
        }
        return kExitOk;
    });
}

int run_estimate_norms(const RunConfig& config) {
    return guarded(config, [&] {
        const FunctionSpec f = load_function(config);
        const std::vector<NormEstimate> estimates =
            estimate_norms(f, config.samples, 8, config.seed);
        const std::vector<BoundViolation> violations = validate_bounds(f, estimates);

        write_file(output_path(config, "norm_estimates.json"),
                   json{{"estimates", estimates}, {"violations", violations}}.dump(2) + "\n");

        for (const NormEstimate& est : estimates)
            std::cout << "component " << est.component << ": lower_bound="
                      << fmt(est.lower_bound) << " declared=" << fmt(est.declared_bound) << "\n";
        for (const BoundViolation& v : violations)
            std::cout << "VIOLATION component " << v.component << ": observed "
                      << fmt(v.lower_bound) << " > declared " << fmt(v.declared_bound) << "\n";
        return violations.empty() ? kExitOk : kExitBoundViolation;
    });
}

}  // namespace liftsvd
