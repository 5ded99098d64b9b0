#pragma once

#include <filesystem>
#include <json.hpp>
#include <string>

#include "vrid/classifiers/model.hpp"

namespace vrid::classifiers {

inline constexpr int kModelFormatVersion = 1;

/// {"format": "vrid-model", "format_version": 1, "kind", "labels",
///  "n_features", "seed", "parameters"}
nlohmann::json model_to_json(const Model& model);
/// Throws ArgumentError on a wrong format tag, a version
/// mismatch or inconsistent parameters.
ModelPtr model_from_json(const nlohmann::json& j);

void save_model(const Model& model, const std::filesystem::path& path);
/// Throws FormatError when the file is not valid JSON or not a usable model.
ModelPtr load_model(const std::filesystem::path& path);

}  // namespace vrid::classifiers
