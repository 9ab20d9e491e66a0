#include "pgcl/serialize.h"

#include "pgcl/errors.h"

namespace pgcl {

nlohmann::json group_to_json(const Group& g) {
  return {{"schema", kSchema},
          {"kind", "group"},
          {"order", g.order()},
          {"identity", g.identity()},
          {"table", std::vector<Elem>(g.table().begin(), g.table().end())},
          {"labels", g.labels()},
          {"construction", g.construction()}};
}

Group group_from_json(const nlohmann::json& j) {
  std::size_t order = 0;
  Elem identity = 0;
  std::vector<Elem> table;
  std::vector<std::string> labels;
  std::string construction;
  try {
    if (!j.is_object()) throw SchemaError("group document must be an object");
    if (j.at("schema") != kSchema) throw SchemaError("unsupported schema version");
    if (j.contains("kind") && j.at("kind") != "group") throw SchemaError("document is not a group");
    order = j.at("order").get<std::size_t>();
    identity = j.at("identity").get<Elem>();
    table = j.at("table").get<std::vector<Elem>>();
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    if (j.contains("construction")) construction = j.at("construction").get<std::string>();
  } catch (const nlohmann::json::exception& ex) {
    throw SchemaError(std::string("malformed group JSON: ") + ex.what());
  }
  if (order == 0 || order > kExtendedMaxOrder) throw SizeExceeded("group order out of range");
  if (table.size() != order * order) throw SchemaError("table size does not match order");
  Group g = Group::from_table(order, std::move(table), std::move(labels), std::move(construction));
  if (g.identity() != identity) throw InvalidGroup("recorded identity does not match the table");
  return g;
}

}  // namespace pgcl
