#pragma once

#include <filesystem>
#include <json.hpp>
#include <string>
#include <vector>

#include "vrid/evaluation/experiment.hpp"

namespace vrid::evaluation {

struct CellFailure {
  std::string cell;
  std::string error;
};

struct SubsetResult {
  std::string game_id;
  features::FeatureSet feature_set = features::FeatureSet::MovementAndTraffic;
  classifiers::ModelKind model = classifiers::ModelKind::ExtraTrees;
  std::vector<SubsetPoint> points;
};

/// Everything one evaluation run produced. `metadata` carries the config,
/// seeds and toolkit version.
struct EvaluationReport {
  nlohmann::json metadata = nlohmann::json::object();
  std::vector<CellResult> cells;
  std::vector<SubsetResult> subsets;
  std::vector<CellResult> cross_game;
  std::vector<CellResult> game_recognition;
  std::vector<CellFailure> failures;
};

/// "<game>__<feature set>__<model>", with "__to__<test game>" for
/// cross-game cells.
std::string cell_key(const CellResult& cell);

/// Cell summary without per-window predictions.
nlohmann::json cell_to_json(const CellResult& cell);
nlohmann::json report_to_json(const EvaluationReport& report);

/// One row per (game, model); accuracy and macro-F1 column pairs per
/// feature set, empty where a cell was not run.
std::string accuracy_table_csv(const EvaluationReport& report);
/// Rows are true labels, columns predicted labels.
std::string confusion_csv(const CellResult& cell);
/// game_id,feature_set,model,k,accuracy
std::string voting_curve_csv(const EvaluationReport& report);
/// game_id,feature_set,model,size,groups,mean_accuracy
std::string subset_curve_csv(const EvaluationReport& report);
/// train_game,test_game,feature_set,model,accuracy,macro_f1
std::string cross_game_csv(const EvaluationReport& report);

/// Writes report.json, accuracy_table.csv, voting_curve.csv,
/// subset_curve.csv, cross_game.csv and confusion/<cell key>.csv, each
/// atomically.
void write_report(const EvaluationReport& report, const std::filesystem::path& out_dir);

}  // namespace vrid::evaluation
