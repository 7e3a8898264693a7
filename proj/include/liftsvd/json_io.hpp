#ifndef LIFTSVD_JSON_IO_HPP
#define LIFTSVD_JSON_IO_HPP

#include <string>
#include <vector>

#include "json.hpp"
#include "liftsvd/certify.hpp"
#include "liftsvd/factor.hpp"
#include "liftsvd/liftcore.hpp"
#include "liftsvd/norms.hpp"

namespace liftsvd {

using nlohmann::json;

// Certificates round-trip losslessly; non-finite violations are encoded
// as the strings "inf" / "-inf" / "nan".
void to_json(json& j, const Certificate& cert);
void from_json(const json& j, Certificate& cert);

void to_json(json& j, const NormEstimate& est);
void to_json(json& j, const BoundViolation& violation);

// {sigma, eta, m, ordering, U} with ordering and U as 1-based index
// arrays (U is the permutation with a one at row U[i] of column i).
json decomposition_to_json(const Decomposition& dec);

// Row-major matrices: {rows, cols, data}.
json matrix_to_json(const Mat& m);
json kfactorization_to_json(const KFactorization& kf);

// Function files: {n, p, components: [string], norm_bounds: [number],
// domain_box: [[lo, hi]]}.
json function_spec_to_json(const FunctionSpec& f);
FunctionSpec function_spec_from_json(const json& j);
FunctionSpec load_function_spec(const std::string& path);

std::string certificates_to_string(const std::vector<Certificate>& certs);

}  // namespace liftsvd

#endif
