#pragma once

#include "json.hpp"
#include "pgcl/group.h"

namespace pgcl {

inline constexpr const char* kSchema = "pgcl/1";

// {schema, kind: "group", order, identity, table (row-major), labels,
// construction}. Lossless.
nlohmann::json group_to_json(const Group& g);

// Throws SchemaError on malformed documents and InvalidGroup when the table
// is not a group.
Group group_from_json(const nlohmann::json& j);

}  // namespace pgcl
