#ifndef STEER_JSON_IO_HPP
#define STEER_JSON_IO_HPP

#include <json.hpp>

#include "steer/constructions.hpp"

namespace steer {

using nlohmann::json;

// Repo-wide matrix encoding: row-major array of [re, im] pairs; the
// enclosing object carries the dimensions.
json matrix_to_json(const Cmat& m);
Cmat matrix_from_json(const json& j, int rows, int cols);

json measurement_to_json(const Measurement& m);
Measurement measurement_from_json(const json& j);

// { "dim_b", "inputs", "outcomes", "blocks": { "a,x": matrix } }
json assemblage_to_json(const Assemblage& a);
Assemblage assemblage_from_json(const json& j);

// { "dim_b", "m", "n", "sigma": { "lambda": matrix } }
json lhs_model_to_json(const LhsModel& m);
LhsModel lhs_model_from_json(const json& j);

// { "dim_b", "m", "n", "F": { "a,x": matrix } }
json inequality_to_json(const SteeringInequality& ineq);
SteeringInequality inequality_from_json(const json& j);

// { "mu_star", "sw", "gap", "status", "certificate", "lhs" }
json weight_result_to_json(const WeightResult& r);

}  // namespace steer

#endif
