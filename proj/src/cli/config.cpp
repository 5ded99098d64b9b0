#include "vrid/cli/config.hpp"

#include <set>

#include "vrid/error.hpp"
#include "vrid/util/files.hpp"

namespace vrid::cli {
namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

template <class T>
T get(const json& obj, const std::string& key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + ": wrong type");
  }
}

std::size_t get_count(const json& obj, const std::string& key, const std::string& where,
                      std::size_t min_value) {
  const json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < static_cast<long long>(min_value)) {
    throw ConfigError(where + "." + key + ": expected an integer >= " + std::to_string(min_value));
  }
  return v.get<std::size_t>();
}

std::vector<std::size_t> get_count_list(const json& obj, const std::string& key) {
  const json& v = obj.at(key);
  if (!v.is_array()) throw ConfigError("config." + key + ": expected an array of integers");
  std::vector<std::size_t> out;
  for (const auto& e : v) {
    if (!e.is_number_unsigned()) throw ConfigError("config." + key + ": expected integers >= 0");
    out.push_back(e.get<std::size_t>());
  }
  return out;
}

double get_positive(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number() || !(v.get<double>() > 0.0)) {
    throw ConfigError(where + "." + key + ": expected a number > 0");
  }
  return v.get<double>();
}

template <class T, class Parse>
std::vector<T> get_named_list(const json& obj, const std::string& key, Parse parse) {
  const auto names = get<std::vector<std::string>>(obj, key, "config");
  if (names.empty()) throw ConfigError("config." + key + ": must not be empty");
  std::vector<T> out;
  for (const auto& n : names) {
    try {
      out.push_back(parse(n));
    } catch (const ArgumentError& e) {
      throw ConfigError("config." + key + ": " + e.what());
    }
  }
  return out;
}

void parse_model_params(const json& p, classifiers::ModelOptions& o) {
  const std::string w = "config.model_params";
  check_keys(p, w, {"lr", "qda", "rf", "extra_trees", "gbm"});
  if (p.contains("lr")) {
    const json& q = p["lr"];
    check_keys(q, w + ".lr", {"lambda", "tol", "max_iter"});
    if (q.contains("lambda")) {
      o.logistic.lambda = get<double>(q, "lambda", w + ".lr");
      if (o.logistic.lambda < 0.0) throw ConfigError(w + ".lr.lambda: must be >= 0");
    }
    if (q.contains("tol")) o.logistic.tol = get_positive(q, "tol", w + ".lr");
    if (q.contains("max_iter")) o.logistic.max_iter = get_count(q, "max_iter", w + ".lr", 1);
  }
  if (p.contains("qda")) {
    const json& q = p["qda"];
    check_keys(q, w + ".qda", {"ridge"});
    if (q.contains("ridge")) o.qda.ridge = get_positive(q, "ridge", w + ".qda");
  }
  for (const char* name : {"rf", "extra_trees"}) {
    if (!p.contains(name)) continue;
    const json& q = p[name];
    auto& f = std::string(name) == "rf" ? o.random_forest : o.extra_trees;
    check_keys(q, w + "." + name, {"n_trees", "max_features"});
    if (q.contains("n_trees")) f.n_trees = get_count(q, "n_trees", w + "." + name, 1);
    if (q.contains("max_features")) {
      f.max_features = get_count(q, "max_features", w + "." + name, 1);
    }
  }
  if (p.contains("gbm")) {
    const json& q = p["gbm"];
    const std::string wg = w + ".gbm";
    check_keys(q, wg, {"n_rounds", "learning_rate", "max_leaves", "min_samples_leaf"});
    if (q.contains("n_rounds")) o.gbm.n_rounds = get_count(q, "n_rounds", wg, 1);
    if (q.contains("learning_rate")) o.gbm.learning_rate = get_positive(q, "learning_rate", wg);
    if (q.contains("max_leaves")) o.gbm.max_leaves = get_count(q, "max_leaves", wg, 2);
    if (q.contains("min_samples_leaf")) {
      o.gbm.min_samples_leaf = get_count(q, "min_samples_leaf", wg, 1);
    }
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(j, "config",
             {"manifest", "games", "window_s", "bin_s", "feature_sets", "models", "seeds",
              "train_s", "test_s", "vote_k", "subset_sizes", "subset_unit", "cross_game",
              "game_recognition", "output_dir", "jobs", "model_params", "importance"});
  RunConfig c;
  c.source = j;
  if (!j.contains("manifest")) throw ConfigError("config: missing required key 'manifest'");
  c.manifest = resolve(base_dir, get<std::string>(j, "manifest", "config"));
  if (j.contains("games")) c.games = get<std::vector<std::string>>(j, "games", "config");
  if (j.contains("window_s")) c.window_s = get_positive(j, "window_s", "config");
  if (j.contains("bin_s")) c.bin_s = get_positive(j, "bin_s", "config");
  if (j.contains("feature_sets")) {
    c.feature_sets = get_named_list<features::FeatureSet>(
        j, "feature_sets", [](const std::string& n) { return features::parse_feature_set(n); });
  }
  if (j.contains("models")) {
    c.models = get_named_list<classifiers::ModelKind>(
        j, "models", [](const std::string& n) { return classifiers::parse_model_kind(n); });
  }
  if (j.contains("seeds")) {
    if (!j["seeds"].is_array() || j["seeds"].empty()) {
      throw ConfigError("config.seeds: expected a non-empty array of integers");
    }
    c.seeds.clear();
    for (const auto& s : j["seeds"]) {
      if (!s.is_number_unsigned()) throw ConfigError("config.seeds: expected integers >= 0");
      c.seeds.push_back(s.get<std::uint64_t>());
    }
  }
  if (j.contains("train_s")) c.train_s = get_positive(j, "train_s", "config");
  if (j.contains("test_s")) c.test_s = get_positive(j, "test_s", "config");
  if (j.contains("vote_k")) {
    c.vote_k = get_count_list(j, "vote_k");
    if (c.vote_k.empty()) throw ConfigError("config.vote_k: must not be empty");
    for (auto k : c.vote_k) {
      if (k == 0 || k % 2 == 0) throw ConfigError("config.vote_k: values must be odd and >= 1");
    }
  }
  if (j.contains("subset_unit")) c.subset_unit = get_count(j, "subset_unit", "config", 1);
  if (j.contains("subset_sizes")) {
    c.subset_sizes = get_count_list(j, "subset_sizes");
    for (auto s : c.subset_sizes) {
      if (s == 0 || s % c.subset_unit != 0) {
        throw ConfigError("config.subset_sizes: values must be positive multiples of subset_unit");
      }
    }
  }
  if (j.contains("cross_game")) {
    if (!j["cross_game"].is_array()) throw ConfigError("config.cross_game: expected an array");
    for (const auto& p : j["cross_game"]) {
      check_keys(p, "config.cross_game[]", {"train", "test"});
      if (!p.contains("train") || !p.contains("test")) {
        throw ConfigError("config.cross_game[]: needs 'train' and 'test'");
      }
      c.cross_game.push_back({get<std::string>(p, "train", "config.cross_game[]"),
                              get<std::string>(p, "test", "config.cross_game[]")});
    }
  }
  if (j.contains("game_recognition")) {
    c.game_recognition = get<bool>(j, "game_recognition", "config");
  }
  c.output_dir = j.contains("output_dir")
                     ? resolve(base_dir, get<std::string>(j, "output_dir", "config"))
                     : base_dir / c.output_dir;
  if (j.contains("jobs")) c.jobs = get_count(j, "jobs", "config", 0);
  if (j.contains("model_params")) parse_model_params(j["model_params"], c.model_options);
  if (j.contains("importance")) {
    const json& q = j["importance"];
    const std::string w = "config.importance";
    check_keys(q, w, {"feature_set", "model", "n_permutations", "max_instances_per_user", "top_k"});
    try {
      if (q.contains("feature_set")) {
        c.importance.feature_set =
            features::parse_feature_set(get<std::string>(q, "feature_set", w));
      }
      if (q.contains("model")) {
        c.importance.model = classifiers::parse_model_kind(get<std::string>(q, "model", w));
      }
    } catch (const ArgumentError& e) {
      throw ConfigError(w + ": " + e.what());
    }
    if (q.contains("n_permutations")) {
      c.importance.n_permutations = get_count(q, "n_permutations", w, 1);
    }
    if (q.contains("max_instances_per_user")) {
      c.importance.max_instances_per_user = get_count(q, "max_instances_per_user", w, 1);
    }
    if (q.contains("top_k")) c.importance.top_k = get_count(q, "top_k", w, 1);
  }
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception& e) {
    throw ConfigError("cannot read config " + path.string() + ": " + e.what());
  }
  return parse_run_config(text, path.parent_path().empty() ? "." : path.parent_path());
}

}  // namespace vrid::cli
