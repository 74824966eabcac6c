#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "stieltjes/classifier.hpp"
#include "stieltjes/limits.hpp"
#include "stieltjes/representation.hpp"

namespace stieltjes {

using json = nlohmann::ordered_json;

/// Complex matrices are row-major arrays of [re, im] pairs.
json matrix_to_json(const Mat& m);
/// `field` names the location for ParseError diagnostics.
Mat matrix_from_json(const json& j, const std::string& field);

json to_json(const SupportSet& s);
SupportSet support_from_json(const json& j, const std::string& field);

json to_json(const MatrixMeasure& mu);
/// `fallback` is used when the "support" member is absent.
MatrixMeasure measure_from_json(const json& j, const std::string& field = "measure",
                                std::optional<SupportSet> fallback = std::nullopt);

json to_json(const Representation& rep);
Representation representation_from_json(const json& j);

json to_json(const LimitEstimate& e);
json to_json(const ParamRecord& rec);
json to_json(const Certificate& cert);
json to_json(const GridConfig& g);

/// Parses text; syntax errors become ParseError with line and column.
json parse_json_text(const std::string& text, const std::string& source);
json read_json_file(const std::string& path);
Representation load_representation(const std::string& path);

}  // namespace stieltjes
