#include "vrid/evaluation/dataset.hpp"

#include <algorithm>

#include "vrid/error.hpp"
#include "vrid/util/parallel.hpp"

namespace vrid::evaluation {

const ingestion::GameInfo* Dataset::find_game(const std::string& id) const {
  for (const auto& g : games) {
    if (g.id == id) return &g;
  }
  return nullptr;
}

const features::TraceFeatures* Dataset::find(const std::string& user_id,
                                             const std::string& game_id) const {
  for (const auto& t : traces) {
    if (t.user_id == user_id && t.game_id == game_id) return &t;
  }
  return nullptr;
}

std::vector<const features::TraceFeatures*> Dataset::game_traces(const std::string& game_id) const {
  if (!find_game(game_id)) throw ArgumentError("unknown game '" + game_id + "'");
  std::vector<const features::TraceFeatures*> out;
  for (const auto& t : traces) {
    if (t.game_id == game_id) out.push_back(&t);
  }
  std::sort(out.begin(), out.end(),
            [](const auto* a, const auto* b) { return a->user_id < b->user_id; });
  return out;
}

std::vector<std::string> Dataset::users(const std::string& game_id) const {
  std::vector<std::string> out;
  for (const auto* t : game_traces(game_id)) out.push_back(t->user_id);
  return out;
}

Dataset load_dataset(const ingestion::DatasetManifest& manifest,
                     const features::FeaturizeOptions& options, std::size_t jobs) {
  Dataset ds;
  ds.games = manifest.games;
  ds.window_s = options.window_s;
  ds.traces.resize(manifest.entries.size());
  parallel_for(manifest.entries.size(), jobs, [&](std::size_t i) {
    ds.traces[i] =
        features::featurize_trace(ingestion::load_trace(manifest, manifest.entries[i]), options);
  });
  return ds;
}

Dataset synthetic_dataset(const ingestion::CohortOptions& cohort,
                          const features::FeaturizeOptions& options) {
  Dataset ds;
  for (const auto& g : cohort.games) ds.games.push_back({g.id, g.category});
  ds.window_s = options.window_s;
  ingestion::generate_synthetic_cohort(cohort, [&](Trace&& trace) {
    ds.traces.push_back(features::featurize_trace(std::move(trace), options));
  });
  return ds;
}

}  // namespace vrid::evaluation
