#pragma once

#include <string>
#include <variant>

#include "gcsa/decompose.hpp"
#include "gcsa/linear.hpp"
#include "gcsa/model.hpp"
#include "gcsa/rank.hpp"

#include <json.hpp>

namespace gcsa {

using LoadedInput = std::variant<GcsModel, LinearSystem>;

/// Parses a model or (when the top-level "linear" key is present) a raw
/// linear system. Throws ParseError on malformed input and ValidationError
/// on violated model invariants.
LoadedInput load_input(const std::string& text);
LoadedInput load_input_file(const std::string& path);

nlohmann::json to_json(const GcsModel& model);
nlohmann::json to_json(const LinearSystem& sys);
nlohmann::json to_json(const AnalysisReport& report);
nlohmann::json to_json(const LinearClassification& c);
nlohmann::json groups_to_json(const std::vector<DependencyGroup>& groups,
                              const std::vector<RowRef>& rows);
nlohmann::json to_json(const WcPartition& partition);

} // namespace gcsa
