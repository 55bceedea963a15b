#pragma once

// Configuration documents:
//   {"gates": 4, "bob": [0,1,2,3], "alice": [3,2,1,0],
//    "side_order": ["bob","alice","bob","alice"], "shared_endpoint": false}
// Gates are 0-based; side_order[s] names the walk whose crossing comes first
// along gate s counterclockwise. Unknown fields are rejected.

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "stadium/model.hpp"

namespace stadium {

// Throws SyntaxError (with line and column), SchemaError, or the
// validate_config errors.
StadiumConfig parse_config(std::string_view text);

StadiumConfig config_from_json(const nlohmann::json &doc);

nlohmann::ordered_json config_to_json(const StadiumConfig &config);

// One line, fields in schema order, no trailing newline.
std::string emit_config(const StadiumConfig &config);

// One document per non-empty line; errors name the line.
std::vector<StadiumConfig> parse_config_stream(std::string_view text);

std::string emit_config_stream(const std::vector<StadiumConfig> &configs);

} // namespace stadium
