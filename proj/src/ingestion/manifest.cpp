#include "vrid/ingestion/manifest.hpp"

#include <algorithm>
#include <json.hpp>
#include <set>

#include "vrid/error.hpp"
#include "vrid/ingestion/csv.hpp"
#include "vrid/util/files.hpp"

namespace vrid::ingestion {

using nlohmann::json;

const GameInfo* DatasetManifest::find_game(const std::string& id) const {
  auto it = std::find_if(games.begin(), games.end(), [&](const GameInfo& g) { return g.id == id; });
  return it == games.end() ? nullptr : &*it;
}

std::filesystem::path DatasetManifest::resolve(const std::filesystem::path& p) const {
  return p.is_absolute() ? p : base_dir / p;
}

namespace {

[[noreturn]] void fail(const std::string& source, const std::string& what) {
  throw FormatError(source, 0, what);
}

void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                  std::initializer_list<const char*> required, const std::string& where,
                  const std::string& source) {
  if (!obj.is_object()) fail(source, where + ": expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* k) { return it.key() == k; }) == allowed.end()) {
      fail(source, where + ": unknown key '" + it.key() + "'");
    }
  }
  for (const char* k : required) {
    if (!obj.contains(k)) fail(source, where + ": missing key '" + std::string(k) + "'");
  }
}

std::string get_string(const json& obj, const char* key, const std::string& where,
                       const std::string& source) {
  const auto& v = obj.at(key);
  if (!v.is_string()) fail(source, where + "." + key + ": expected a string");
  return v.get<std::string>();
}

}  // namespace

DatasetManifest parse_manifest(const std::string& json_text, const std::filesystem::path& base_dir,
                               const std::string& source, bool check_files) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(source, std::string("invalid JSON: ") + e.what());
  }
  require_keys(doc, {"format_version", "games", "traces"}, {"format_version", "games", "traces"},
               "manifest", source);
  if (!doc["format_version"].is_number_integer() ||
      doc["format_version"].get<int>() != kManifestFormatVersion) {
    fail(source, "unsupported manifest format_version (expected " +
                     std::to_string(kManifestFormatVersion) + ")");
  }

  DatasetManifest m;
  m.base_dir = base_dir;
  if (!doc["games"].is_array()) fail(source, "games: expected an array");
  for (std::size_t i = 0; i < doc["games"].size(); ++i) {
    const auto& g = doc["games"][i];
    const std::string where = "games[" + std::to_string(i) + "]";
    require_keys(g, {"id", "category"}, {"id", "category"}, where, source);
    GameInfo info{get_string(g, "id", where, source), get_string(g, "category", where, source)};
    if (info.category != "fast" && info.category != "slow") {
      fail(source, where + ".category: expected 'fast' or 'slow'");
    }
    if (m.find_game(info.id)) fail(source, where + ": duplicate game id '" + info.id + "'");
    m.games.push_back(std::move(info));
  }

  if (!doc["traces"].is_array()) fail(source, "traces: expected an array");
  std::set<std::pair<std::string, std::string>> seen;
  for (std::size_t i = 0; i < doc["traces"].size(); ++i) {
    const auto& t = doc["traces"][i];
    const std::string where = "traces[" + std::to_string(i) + "]";
    require_keys(t, {"user_id", "game_id", "movement", "traffic", "duration_s"},
                 {"user_id", "game_id", "movement", "traffic"}, where, source);
    ManifestEntry e;
    e.user_id = get_string(t, "user_id", where, source);
    e.game_id = get_string(t, "game_id", where, source);
    e.movement_path = get_string(t, "movement", where, source);
    e.traffic_path = get_string(t, "traffic", where, source);
    if (t.contains("duration_s")) {
      if (!t["duration_s"].is_number() || !(t["duration_s"].get<double>() > 0.0)) {
        fail(source, where + ".duration_s: expected a positive number");
      }
      e.duration_s = t["duration_s"].get<double>();
    }
    if (!m.find_game(e.game_id)) fail(source, where + ": undeclared game '" + e.game_id + "'");
    if (!seen.emplace(e.user_id, e.game_id).second) {
      fail(source, where + ": duplicate (user, game) pair (" + e.user_id + ", " + e.game_id + ")");
    }
    if (check_files) {
      for (const auto& p : {e.movement_path, e.traffic_path}) {
        if (!std::filesystem::exists(m.resolve(p))) {
          fail(source, where + ": file not found: " + m.resolve(p).string());
        }
      }
    }
    m.entries.push_back(std::move(e));
  }
  return m;
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw FormatError(path.string(), 0, "manifest not found");
  }
  return parse_manifest(read_file(path), path.parent_path(), path.string());
}

std::string manifest_to_json(const DatasetManifest& manifest) {
  json doc;
  doc["format_version"] = kManifestFormatVersion;
  doc["games"] = json::array();
  for (const auto& g : manifest.games)
    doc["games"].push_back({{"id", g.id}, {"category", g.category}});
  doc["traces"] = json::array();
  for (const auto& e : manifest.entries) {
    json t = {{"user_id", e.user_id},
              {"game_id", e.game_id},
              {"movement", e.movement_path.generic_string()},
              {"traffic", e.traffic_path.generic_string()}};
    if (e.duration_s) t["duration_s"] = *e.duration_s;
    doc["traces"].push_back(std::move(t));
  }
  return doc.dump(2) + "\n";
}

Trace load_trace(const DatasetManifest& manifest, const ManifestEntry& entry) {
  Trace trace;
  trace.user_id = entry.user_id;
  trace.game_id = entry.game_id;
  trace.movement = read_movement_csv(manifest.resolve(entry.movement_path));
  trace.traffic = read_packet_csv(manifest.resolve(entry.traffic_path));
  if (entry.duration_s) {
    trace.duration = *entry.duration_s;
  } else {
    double end = 0.0;
    if (!trace.movement.empty()) end = trace.movement.back().t + 1.0 / kNominalSampleRate;
    if (!trace.traffic.empty()) end = std::max(end, trace.traffic.back().t);
    trace.duration = end;
  }
  return trace;
}

}  // namespace vrid::ingestion
