#pragma once

#include <json.hpp>

#include "steiner/instability.hpp"

namespace steiner {

/// Canonical dump: two-space indent, sorted keys (nlohmann default),
/// trailing newline. Serialized artifacts are byte-stable.
std::string dump_json(const nlohmann::json& j);

/// Parse wrapper that converts json exceptions into FormatError.
nlohmann::json parse_json(const std::string& text);

nlohmann::json point_config_to_json(const PointConfig& z);
PointConfig point_config_from_json(const nlohmann::json& j);

nlohmann::json mat_to_json(const Mat& m);
Mat mat_from_json(const Field& f, const nlohmann::json& j);

nlohmann::json presentation_to_json(const SteinerPresentation& p);
SteinerPresentation presentation_from_json(const nlohmann::json& j);

nlohmann::json hom_form_to_json(const HomForm& h);
HomForm hom_form_from_json(const nlohmann::json& j);

nlohmann::json proj_point_to_json(const ProjPoint& p);
ProjPoint proj_point_from_json(const Field& f, const nlohmann::json& j);

nlohmann::json w_report_to_json(const WReport& rep);
nlohmann::json validity_to_json(const ValidityReport& rep);
nlohmann::json iso_to_json(const IsoResult& res);
nlohmann::json splitting_to_json(const SplittingType& st);
nlohmann::json torelli_to_json(const TorelliReport& rep);
nlohmann::json unstable_to_json(const UnstableResult& res);

} // namespace steiner
