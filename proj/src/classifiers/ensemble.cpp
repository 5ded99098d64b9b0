#include "vrid/classifiers/ensemble.hpp"

#include <algorithm>

#include "vrid/classifiers/serialize.hpp"
#include "vrid/error.hpp"

namespace vrid::classifiers {
namespace {

const Model& checked_first(const std::vector<ModelPtr>& members) {
  if (members.empty()) throw ArgumentError("ensemble: no member models");
  for (const auto& m : members) {
    if (!m) throw ArgumentError("ensemble: null member model");
    if (m->labels() != members.front()->labels()) {
      throw ArgumentError("ensemble: member label sets differ");
    }
    if (m->n_features() != members.front()->n_features()) {
      throw ArgumentError("ensemble: member feature counts differ");
    }
  }
  return *members.front();
}

}  // namespace

EnsembleModel::EnsembleModel(std::vector<ModelPtr> members, std::uint64_t seed)
    : Model(checked_first(members).labels(), checked_first(members).n_features(), seed),
      members_(std::move(members)) {}

void EnsembleModel::compute_proba(std::span<const double> x, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  std::vector<double> p(out.size());
  for (const auto& m : members_) {
    m->predict_proba(x, p);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += p[k];
  }
  const double inv = 1.0 / static_cast<double>(members_.size());
  for (double& v : out) v *= inv;
}

nlohmann::json EnsembleModel::parameters() const {
  nlohmann::json members = nlohmann::json::array();
  for (const auto& m : members_) members.push_back(model_to_json(*m));
  return {{"members", std::move(members)}};
}

std::vector<double> ensemble_soft_vote(std::span<const ModelPtr> models,
                                       std::span<const double> x) {
  EnsembleModel e(std::vector<ModelPtr>(models.begin(), models.end()));
  return e.predict_proba(x);
}

}  // namespace vrid::classifiers
