#pragma once

#include "kwlab/grid.hpp"
#include "kwlab/report.hpp"

namespace kwlab {

/// Binary-free snapshot: grid metadata plus flattened re/im component arrays.
Json field_to_json(const FieldConfiguration& cfg);
FieldConfiguration field_from_json(const Json& j);

Json grid_to_json(const Grid& g);
Grid grid_from_json(const Json& j);

}  // namespace kwlab
