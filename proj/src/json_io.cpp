#include "liftsvd/json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "liftsvd/errors.hpp"

namespace liftsvd {

namespace {

json encode_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

double decode_double(const json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
        throw ConfigError("unexpected numeric string '" + s + "'");
    }
    return j.get<double>();
}

}  // namespace

void to_json(json& j, const Certificate& cert) {
    j = json{{"name", cert.name},
             {"max_violation", encode_double(cert.max_violation)},
             {"threshold", cert.threshold},
             {"samples", cert.samples},
             {"witness", cert.witness},
             {"pass", cert.pass}};
}

void from_json(const json& j, Certificate& cert) {
    cert.name = j.at("name").get<std::string>();
    cert.max_violation = decode_double(j.at("max_violation"));
    cert.threshold = j.at("threshold").get<double>();
    cert.samples = j.at("samples").get<long>();
    cert.witness = j.at("witness").get<Vec>();
    cert.pass = j.at("pass").get<bool>();
}

void to_json(json& j, const NormEstimate& est) {
    j = json{{"component", est.component},
             {"lower_bound", est.lower_bound},
             {"declared_bound", est.declared_bound},
             {"witness", est.witness},
             {"samples_used", est.samples_used},
             {"valid", est.lower_bound <= est.declared_bound * (1.0 + 1e-9)}};
}

void to_json(json& j, const BoundViolation& violation) {
    j = json{{"component", violation.component},
             {"lower_bound", violation.lower_bound},
             {"declared_bound", violation.declared_bound},
             {"witness", violation.witness}};
}

json decomposition_to_json(const Decomposition& dec) {
    std::vector<int> ordering;
    std::vector<int> u_perm;
    for (int qi : dec.sigma_spec.ordering.q) {
        ordering.push_back(qi + 1);
        u_perm.push_back(qi + 1);
    }
    return json{{"sigma", dec.sigma_spec.sigma},
                {"eta", dec.sigma_spec.eta},
                {"m", dec.sigma_spec.m},
                {"ordering", ordering},
                {"U", u_perm}};
}

json matrix_to_json(const Mat& m) {
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", m.data()}};
}

json kfactorization_to_json(const KFactorization& kf) {
    return json{{"K", matrix_to_json(kf.K())},
                {"U", matrix_to_json(kf.decomposition().U)},
                {"Sigma", matrix_to_json(kf.decomposition().Sigma_matrix)},
                {"Vstar", matrix_to_json(kf.Vstar())}};
}

json function_spec_to_json(const FunctionSpec& f) {
    std::vector<std::string> components;
    for (const Expression& e : f.components()) components.push_back(to_string(e));
    json box = json::array();
    for (const Interval& iv : f.domain_box()) box.push_back(json::array({iv.lo, iv.hi}));
    return json{{"n", f.input_dim()},
                {"p", f.output_dim()},
                {"components", components},
                {"norm_bounds", f.norm_bounds()},
                {"domain_box", box}};
}

FunctionSpec function_spec_from_json(const json& j) {
    try {
        const int n = j.at("n").get<int>();
        const int p = j.at("p").get<int>();
        std::vector<Expression> components;
        for (const auto& text : j.at("components"))
            components.push_back(parse(text.get<std::string>(), n));
        Vec bounds = j.at("norm_bounds").get<Vec>();
        std::vector<Interval> box;
        for (const auto& iv : j.at("domain_box"))
            box.push_back(Interval{iv.at(0).get<double>(), iv.at(1).get<double>()});
        return FunctionSpec(n, p, std::move(components), std::move(bounds), std::move(box));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed function spec: ") + e.what());
    } catch (const ParseError& e) {
        throw ConfigError(std::string("bad component expression: ") + e.what());
    }
}

FunctionSpec load_function_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open function spec file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("invalid JSON in '" + path + "': " + e.what());
    }
    return function_spec_from_json(j);
}

std::string certificates_to_string(const std::vector<Certificate>& certs) {
    const json j = certs;
    return j.dump(2) + "\n";
}

}  // namespace liftsvd
