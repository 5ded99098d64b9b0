#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "vrid/features/featurize.hpp"
#include "vrid/ingestion/manifest.hpp"
#include "vrid/ingestion/synth.hpp"

namespace vrid::evaluation {

/// Featurized traces of a cohort plus the game catalogue.
struct Dataset {
  std::vector<ingestion::GameInfo> games;
  std::vector<features::TraceFeatures> traces;
  double window_s = 10.0;

  const ingestion::GameInfo* find_game(const std::string& id) const;
  const features::TraceFeatures* find(const std::string& user_id, const std::string& game_id) const;
  /// Traces of one game ordered by user id. Throws ArgumentError for an
  /// unknown game.
  std::vector<const features::TraceFeatures*> game_traces(const std::string& game_id) const;
  /// Sorted user ids with a trace in the game.
  std::vector<std::string> users(const std::string& game_id) const;
};

/// Loads and featurizes every manifest entry, up to `jobs` traces at a time.
Dataset load_dataset(const ingestion::DatasetManifest& manifest,
                     const features::FeaturizeOptions& options = {}, std::size_t jobs = 1);

/// Generates and featurizes a synthetic cohort one trace at a time.
Dataset synthetic_dataset(const ingestion::CohortOptions& cohort,
                          const features::FeaturizeOptions& options = {});

}  // namespace vrid::evaluation
