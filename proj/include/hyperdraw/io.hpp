#pragma once

// JSON and CSV forms of graphs, drawings, metric reports and experiment results.
// Readers throw Schema errors naming the offending field.

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "hyperdraw/experiments.hpp"

namespace hyperdraw {

using Json = nlohmann::ordered_json;

/// Parses text; syntax errors become Schema errors carrying the line number.
Json parse_json(const std::string& text, const std::string& source = "input");
std::string read_file(const std::string& path);

/// {n, edges, coords?, order?}; `order` is the canonical insertion order.
Json graph_to_json(const GeneratedGraph& g);
GeneratedGraph graph_from_json(const Json& j);

/// {model: "uhp", n, edges, pos, meta}
Json drawing_to_json(const Drawing& d);
Drawing drawing_from_json(const Json& j);

Json metrics_to_json(const Drawing& d, const MetricsReport& r);
/// Header plus one row: n,vv,ve,angular,min_face_area (missing values left empty).
std::string metrics_csv(const Drawing& d, const MetricsReport& r);

Json scaling_to_json(const ScalingResult& r);
Json preset_to_json(const PresetResult& r);

inline constexpr const char* kCsvHeader = "family,layout,n,metric,value";
/// Rows of every sweep in long form, without the header.
void write_csv_rows(std::ostream& os, const ScalingResult& r);

/// {name?, family, params, layout, d?, diameter?, side?, metrics, fit, expected, tolerance?, bound?, min_r2?, seed?}
ExperimentConfig config_from_json(const Json& j);

/// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

}  // namespace hyperdraw
