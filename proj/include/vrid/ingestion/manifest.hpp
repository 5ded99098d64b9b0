#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vrid/core/types.hpp"

namespace vrid::ingestion {

struct GameInfo {
  std::string id;
  std::string category;  // "fast" or "slow"
};

struct ManifestEntry {
  std::string user_id;
  std::string game_id;
  std::filesystem::path movement_path;  // relative paths resolve against base_dir
  std::filesystem::path traffic_path;
  std::optional<double> duration_s;
};

/// JSON file listing games (with fast/slow category) and one entry per
/// (user, game) trace:
///
///   {"format_version": 1,
///    "games":  [{"id": "beat_saber", "category": "fast"}],
///    "traces": [{"user_id": "u01", "game_id": "beat_saber",
///                "movement": "movement/u01_beat_saber.csv",
///                "traffic": "traffic/u01_beat_saber.csv",
///                "duration_s": 600.0}]}
///
/// `duration_s` is optional; without it the duration is inferred from the
/// last movement sample plus one nominal sample period (or the last packet,
/// whichever is later).
struct DatasetManifest {
  std::vector<GameInfo> games;
  std::vector<ManifestEntry> entries;
  std::filesystem::path base_dir;

  const GameInfo* find_game(const std::string& id) const;
  std::filesystem::path resolve(const std::filesystem::path& p) const;
};

inline constexpr int kManifestFormatVersion = 1;

/// Parses and validates a manifest: unknown keys rejected, (user, game) pairs
/// unique, every game declared, every referenced file present.
/// Throws FormatError (line 0 = structural problem).
DatasetManifest load_manifest(const std::filesystem::path& path);
DatasetManifest parse_manifest(const std::string& json_text, const std::filesystem::path& base_dir,
                               const std::string& source = "<memory>", bool check_files = true);

std::string manifest_to_json(const DatasetManifest& manifest);

/// Parses both CSVs of an entry into a Trace (not yet rebased or canonicalized).
Trace load_trace(const DatasetManifest& manifest, const ManifestEntry& entry);

}  // namespace vrid::ingestion
