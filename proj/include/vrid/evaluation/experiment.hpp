#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vrid/classifiers/train.hpp"
#include "vrid/evaluation/dataset.hpp"
#include "vrid/evaluation/metrics.hpp"
#include "vrid/features/feature_set.hpp"
#include "vrid/features/scaler.hpp"

namespace vrid::evaluation {

struct ExperimentSpec {
  std::string game_id;
  features::FeatureSet feature_set = features::FeatureSet::MovementAndTraffic;
  classifiers::ModelKind model = classifiers::ModelKind::ExtraTrees;
  std::uint64_t seed = 0;
  double train_s = 480.0;
  double test_s = 120.0;
  /// Voting window sizes to evaluate; each odd and <= the test window count.
  std::vector<std::size_t> vote_k{1};
  classifiers::ModelOptions model_options;
};

/// Test-window predictions of one trace, in temporal order.
struct TracePredictions {
  std::string trace_id;
  std::size_t true_label = 0;
  std::vector<std::size_t> window_index;
  std::vector<std::size_t> predicted;
  Matrix proba;  // windows x labels
};

struct VotePoint {
  std::size_t k = 1;
  double accuracy = 0.0;
};

/// One evaluated (game, feature set, model) cell.
struct CellResult {
  std::string game_id;
  std::string test_game_id;  // differs from game_id for cross-game cells
  features::FeatureSet feature_set = features::FeatureSet::MovementAndTraffic;
  classifiers::ModelKind model = classifiers::ModelKind::ExtraTrees;
  std::uint64_t seed = 0;
  std::vector<std::string> labels;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  double accuracy = 0.0;
  double macro_f1 = 0.0;
  ConfusionMatrix confusion;
  std::vector<VotePoint> voting;
  std::vector<TracePredictions> predictions;
};

/// Standard protocol: per trace, windows inside [0, train_s) train and
/// windows inside [train_s, train_s + test_s) test; scaler fitted on train.
CellResult run_identification(const ExperimentSpec& spec, const Dataset& dataset);

/// Same, restricted to the given users of the experiment's game.
CellResult run_identification(const ExperimentSpec& spec, const Dataset& dataset,
                              std::span<const std::string> users);

/// Scaled train/test matrices of the standard protocol for the experiment's game.
struct PreparedSplit {
  std::vector<std::string> labels;
  features::MinMaxScaler scaler;
  Matrix X_train;
  std::vector<std::size_t> y_train;
  Matrix X_test;
  std::vector<std::size_t> y_test;
};

PreparedSplit prepare_identification_split(const ExperimentSpec& spec, const Dataset& dataset);

/// Rolling majority labels over k consecutive windows (stride 1). Ties go to
/// the label with the largest summed probability, then the lowest index.
std::vector<std::size_t> majority_vote(std::span<const std::size_t> predicted, const Matrix& proba,
                                       std::size_t k);

/// Accuracy over every rolling position of every trace. Throws
/// ArgumentError when k is even, zero, or longer than some trace's test
/// window count.
double majority_vote_eval(std::span<const TracePredictions> predictions, std::size_t k);

struct SubsetGroup {
  std::vector<std::string> users;
  double accuracy = 0.0;
};

struct SubsetPoint {
  std::size_t size = 0;
  std::vector<SubsetGroup> groups;
  double mean_accuracy = 0.0;
};

/// Sorted users are split into U = n / unit consecutive units; a group of
/// size m * unit holds units g, g+1, ..., g+m-1 (mod U) for g in [0, U).
/// Identical groups are trained once. Empty `sizes` means every multiple of
/// unit up to n. Throws ArgumentError when n is not divisible by unit or a
/// size is not a positive multiple of unit <= n.
std::vector<SubsetPoint> user_subset_experiment(const Dataset& dataset, const ExperimentSpec& spec,
                                                std::size_t unit = 5,
                                                std::vector<std::size_t> sizes = {});

/// The cyclic groups used above, as index lists into the sorted users.
std::vector<std::vector<std::size_t>> subset_groups(std::size_t n_users, std::size_t unit,
                                                    std::size_t size);

/// Trains on windows of train_game inside [0, train_s + test_s) and tests
/// on the same span of test_game. Equal games fall back to the standard
/// split. Throws ArgumentError when the user sets differ or have < 2 users.
CellResult cross_game_eval(const Dataset& dataset, const std::string& train_game,
                           const std::string& test_game, const ExperimentSpec& spec);

/// game_id of game-recognition cells.
inline constexpr const char* kAllGames = "all_games";

/// Labels are game ids; every trace contributes its standard train/test
/// split. Throws ArgumentError with fewer than 2 games.
CellResult game_recognition_eval(const Dataset& dataset, const ExperimentSpec& spec);

}  // namespace vrid::evaluation
