#pragma once

#include <cstdint>

#include "vrid/classifiers/forest.hpp"
#include "vrid/classifiers/gbm.hpp"
#include "vrid/classifiers/logistic.hpp"
#include "vrid/classifiers/model.hpp"
#include "vrid/classifiers/qda.hpp"

namespace vrid::classifiers {

struct ModelOptions {
  LogisticOptions logistic;
  QdaOptions qda;
  ForestOptions random_forest = random_forest_defaults();
  ForestOptions extra_trees = extra_trees_defaults();
  GbmOptions gbm;

  /// Sets the parallelism of every learner.
  void set_jobs(std::size_t jobs);
};

/// Trains one model of the given kind. The ensemble trains the five base
/// learners and averages them; member i gets seed derive_seed(seed, i).
ModelPtr train_model(ModelKind kind, const LabeledData& data, const ModelOptions& options,
                     std::uint64_t seed);

}  // namespace vrid::classifiers
