#pragma once
#include <string>

#include <json.hpp>

#include "escdim/function_model.hpp"

namespace escdim {

// {"family":"F0","kappa":[re,im],"quad_tol":1e-8}
// {"family":"fp","p":1.0,"K":0.0,"quad_tol":1e-8}
// {"family":"exp"}
// {"family":"pushforward","base":{...},"phi":{"a":[re,im],"b":[re,im]},"psi":{...}}
// kappa and affine entries also accept plain numbers (imaginary part 0).
FunctionModel model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const FunctionModel& m);

// Accepts the shorthands "exp" and "F0", or inline JSON starting with '{'.
FunctionModel model_from_string(const std::string& text);

} // namespace escdim
