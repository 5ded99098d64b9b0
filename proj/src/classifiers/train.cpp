#include "vrid/classifiers/train.hpp"

#include "vrid/classifiers/ensemble.hpp"
#include "vrid/error.hpp"
#include "vrid/util/rng.hpp"

namespace vrid::classifiers {

void ModelOptions::set_jobs(std::size_t jobs) {
  logistic.jobs = jobs;
  random_forest.jobs = jobs;
  extra_trees.jobs = jobs;
  gbm.jobs = jobs;
}

ModelPtr train_model(ModelKind kind, const LabeledData& data, const ModelOptions& options,
                     std::uint64_t seed) {
  switch (kind) {
    case ModelKind::LogisticRegression:
      return train_logistic_ovr(data, options.logistic);
    case ModelKind::Qda:
      return train_qda(data, options.qda);
    case ModelKind::RandomForest:
      return train_random_forest(data, seed, options.random_forest);
    case ModelKind::ExtraTrees:
      return train_extra_trees(data, seed, options.extra_trees);
    case ModelKind::Gbm:
      return train_gbm(data, options.gbm, seed);
    case ModelKind::Ensemble: {
      constexpr ModelKind kMembers[] = {ModelKind::LogisticRegression, ModelKind::Qda,
                                        ModelKind::RandomForest, ModelKind::ExtraTrees,
                                        ModelKind::Gbm};
      std::vector<ModelPtr> members;
      for (std::size_t i = 0; i < std::size(kMembers); ++i) {
        members.push_back(train_model(kMembers[i], data, options, derive_seed(seed, i)));
      }
      return std::make_shared<EnsembleModel>(std::move(members), seed);
    }
  }
  throw ArgumentError("train_model: unknown model kind");
}

}  // namespace vrid::classifiers
