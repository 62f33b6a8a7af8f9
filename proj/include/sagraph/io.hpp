#pragma once

// JSON graph, covering and family files.

#include <optional>
#include <string>

#include <json.hpp>

#include "sagraph/covering.hpp"
#include "sagraph/families.hpp"
#include "sagraph/graph.hpp"

namespace sagraph {

using json = nlohmann::json;

struct GraphFile {
  GraphBundle bundle;
  /// Present when the graph is a truncation of a known family.
  std::optional<LayeredFamilySpec> family;
  int rows = 0;
};

json family_to_json(const LayeredFamilySpec& spec);
/// Throws InputError on unknown keys or missing parameters.
LayeredFamilySpec family_from_json(const json& j);

json row_formula_to_json(const RowFormula& f);
RowFormula row_formula_from_json(const json& j);

/// {"vertices":[{"id","mu","row"?,"index"?}], "edges":[{"u","v","b","theta"?,"sigma"?}],
///  "potential"?:{id:w}, "frontier"?:[ids], "family"?:{...}, "rows"?:N}
json graph_to_json(const GraphBundle& bundle, const std::optional<LayeredFamilySpec>& family = {},
                   int rows = 0);
/// Structural problems (unknown keys, unknown vertices, wrong types) throw
/// InputError; value problems such as a negative measure are left for
/// validate() to report.
GraphFile graph_from_json(const json& j);

json covering_to_json(const WeightedGraph& g, const GoodCovering& cover);
GoodCovering covering_from_json(const json& j, const WeightedGraph& g);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace sagraph
