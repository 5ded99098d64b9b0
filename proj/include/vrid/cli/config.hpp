#pragma once

#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <string>
#include <vector>

#include "vrid/classifiers/train.hpp"
#include "vrid/features/feature_set.hpp"

namespace vrid::cli {

/// Configuration problems detected before any computation.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CrossGamePair {
  std::string train_game;
  std::string test_game;
};

struct ImportanceConfig {
  features::FeatureSet feature_set = features::FeatureSet::MovementNormHeightAndTraffic;
  classifiers::ModelKind model = classifiers::ModelKind::ExtraTrees;
  std::size_t n_permutations = 200;
  std::size_t max_instances_per_user = 50;
  std::size_t top_k = 3;
};

/// Experiment matrix read from a JSON file (schema in README). Relative
/// paths resolve against the config file's directory.
struct RunConfig {
  std::filesystem::path manifest;
  std::vector<std::string> games;  // empty: every manifest game
  double window_s = 10.0;
  double bin_s = 1.0;
  std::vector<features::FeatureSet> feature_sets{features::FeatureSet::MovementAndTraffic};
  std::vector<classifiers::ModelKind> models{classifiers::ModelKind::ExtraTrees};
  std::vector<std::uint64_t> seeds{0};
  double train_s = 480.0;
  double test_s = 120.0;
  std::vector<std::size_t> vote_k{1};
  std::vector<std::size_t> subset_sizes;  // empty: no subset experiment
  std::size_t subset_unit = 5;
  std::vector<CrossGamePair> cross_game;
  bool game_recognition = false;
  std::filesystem::path output_dir = "vrid_output";
  std::size_t jobs = 1;
  classifiers::ModelOptions model_options;
  ImportanceConfig importance;

  /// The config as given, for embedding in reports.
  nlohmann::json source = nlohmann::json::object();
};

/// Throws ConfigError on malformed JSON, unknown keys, wrong types or
/// invalid values.
RunConfig parse_run_config(const std::string& json_text, const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace vrid::cli
