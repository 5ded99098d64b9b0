#include "vrid/cli/app.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <optional>

#include "vrid/cli/config.hpp"
#include "vrid/error.hpp"
#include "vrid/evaluation/dataset.hpp"
#include "vrid/evaluation/report.hpp"
#include "vrid/importance/shapley.hpp"
#include "vrid/ingestion/manifest.hpp"
#include "vrid/ingestion/synth.hpp"
#include "vrid/util/files.hpp"
#include "vrid/util/log.hpp"
#include "vrid/util/parallel.hpp"

namespace vrid::cli {
namespace {

namespace fs = std::filesystem;
using classifiers::ModelKind;
using features::FeatureSet;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::optional<std::string> env(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  return std::string(v);
}

std::size_t resolve_jobs(int flag, std::optional<std::size_t> configured) {
  if (flag >= 0) return static_cast<std::size_t>(flag);
  if (const auto v = env("VRID_JOBS")) {
    try {
      std::size_t pos = 0;
      const long long n = std::stoll(*v, &pos);
      if (pos != v->size() || n < 0) throw std::invalid_argument("");
      return static_cast<std::size_t>(n);
    } catch (const std::exception&) {
      throw UsageError("VRID_JOBS must be a non-negative integer, got '" + *v + "'");
    }
  }
  return configured.value_or(1);
}

fs::path resolve_output(const std::string& flag, const fs::path& fallback) {
  if (!flag.empty()) return flag;
  if (const auto v = env("VRID_OUTPUT_DIR")) return *v;
  return fallback;
}

nlohmann::json run_metadata(const RunConfig& config) {
  return {{"toolkit", "vrid"},
          {"version", VRID_VERSION},
          {"config", config.source},
          {"seeds", config.seeds}};
}

struct LoadedInputs {
  RunConfig config;
  ingestion::DatasetManifest manifest;
  std::vector<std::string> games;
};

LoadedInputs load_inputs(const std::string& config_path) {
  LoadedInputs in;
  in.config = load_run_config(config_path);
  in.manifest = ingestion::load_manifest(in.config.manifest);
  in.games = in.config.games;
  if (in.games.empty()) {
    for (const auto& g : in.manifest.games) in.games.push_back(g.id);
  }
  for (const auto& g : in.games) {
    if (!in.manifest.find_game(g)) throw ConfigError("config.games: unknown game '" + g + "'");
  }
  for (const auto& p : in.config.cross_game) {
    for (const auto* g : {&p.train_game, &p.test_game}) {
      if (!in.manifest.find_game(*g)) {
        throw ConfigError("config.cross_game: unknown game '" + *g + "'");
      }
    }
  }
  return in;
}

evaluation::ExperimentSpec base_spec(const RunConfig& c) {
  evaluation::ExperimentSpec s;
  s.train_s = c.train_s;
  s.test_s = c.test_s;
  s.vote_k = c.vote_k;
  s.model_options = c.model_options;
  s.model_options.set_jobs(1);
  return s;
}

std::string describe(const std::string& what, const evaluation::ExperimentSpec& s) {
  return what + " " + s.game_id + "/" + std::string(features::to_string(s.feature_set)) + "/" +
         std::string(classifiers::to_string(s.model)) + "/seed=" + std::to_string(s.seed);
}

// ---- synth ----

struct SynthArgs {
  std::size_t users = 10;
  double minutes = 10.0;
  std::uint64_t seed = 0;
  bool clone = false;
  std::size_t games = 1;
  std::string out;
};

int cmd_synth(const SynthArgs& a, std::ostream& out) {
  ingestion::CohortOptions o;
  o.n_users = a.users;
  o.minutes = a.minutes;
  o.seed = a.seed;
  o.clone = a.clone;
  if (a.games == 0) throw UsageError("--games must be >= 1");
  if (a.games > 1) {
    o.games.clear();
    for (std::size_t g = 0; g < a.games; ++g) {
      ingestion::SynthGameProfile p;
      p.id = "game" + std::to_string(g + 1);
      p.category = g % 2 == 0 ? "fast" : "slow";
      p.downlink_rate_offset = 300.0 * static_cast<double>(g);
      o.games.push_back(p);
    }
  }
  const fs::path dir = resolve_output(a.out, "synthetic");
  const auto manifest = ingestion::write_synthetic_cohort(o, dir);
  out << "wrote " << manifest.entries.size() << " traces (" << a.users << " users x "
      << o.games.size() << " games) to " << dir.string() << "\n";
  return kExitOk;
}

// ---- featurize ----

struct FeaturizeArgs {
  std::string manifest;
  std::string feature_set = "movement_traffic";
  double window = 10.0;
  double bin = 1.0;
  bool normalize_height = false;
  std::string out;
  int jobs = -1;
};

int cmd_featurize(const FeaturizeArgs& a, std::ostream& out) {
  FeatureSet set = features::parse_feature_set(a.feature_set);
  if (a.normalize_height) {
    if (set == FeatureSet::Movement) set = FeatureSet::MovementNormHeight;
    if (set == FeatureSet::MovementAndTraffic) set = FeatureSet::MovementNormHeightAndTraffic;
  }
  const auto manifest = ingestion::load_manifest(a.manifest);
  features::FeaturizeOptions opts;
  opts.window_s = a.window;
  opts.bin_s = a.bin;
  const auto ds = evaluation::load_dataset(manifest, opts, resolve_jobs(a.jobs, std::nullopt));
  const fs::path dir = resolve_output(a.out, "features");
  for (const auto& g : manifest.games) {
    std::vector<features::TraceFeatures> traces;
    for (const auto* t : ds.game_traces(g.id)) traces.push_back(*t);
    std::size_t rows = 0;
    for (const auto& t : traces) rows += t.windows.size();
    const fs::path path = dir / (g.id + "__" + std::string(features::to_string(set)) + ".csv");
    write_file_atomic(path, features::feature_matrix_csv(traces, set));
    out << g.id << ": " << rows << " rows x " << 3 + features::feature_count(set) << " columns -> "
        << path.string() << "\n";
  }
  return kExitOk;
}

// ---- evaluate ----

int cmd_evaluate(const std::string& config_path, int jobs_flag, std::ostream& out,
                 std::ostream& err) {
  const auto in = load_inputs(config_path);
  const RunConfig& c = in.config;
  const std::size_t jobs = resolve_jobs(jobs_flag, c.jobs);
  features::FeaturizeOptions fo;
  fo.window_s = c.window_s;
  fo.bin_s = c.bin_s;
  const auto ds = evaluation::load_dataset(in.manifest, fo, jobs);

  enum class Kind { Cell, Subset, CrossGame, Recognition };
  struct Task {
    Kind kind;
    evaluation::ExperimentSpec spec;
    std::string test_game;
  };
  std::vector<Task> tasks;
  const auto base = base_spec(c);
  for (std::uint64_t seed : c.seeds) {
    for (FeatureSet fs : c.feature_sets) {
      for (ModelKind m : c.models) {
        auto s = base;
        s.seed = seed;
        s.feature_set = fs;
        s.model = m;
        for (const auto& g : in.games) {
          s.game_id = g;
          tasks.push_back({Kind::Cell, s, g});
          if (!c.subset_sizes.empty()) tasks.push_back({Kind::Subset, s, g});
        }
        for (const auto& p : c.cross_game) {
          s.game_id = p.train_game;
          tasks.push_back({Kind::CrossGame, s, p.test_game});
        }
        if (c.game_recognition) {
          s.game_id = evaluation::kAllGames;
          tasks.push_back({Kind::Recognition, s, evaluation::kAllGames});
        }
      }
    }
  }

  struct Outcome {
    std::optional<evaluation::CellResult> cell;
    std::optional<evaluation::SubsetResult> subset;
    std::string error;
  };
  std::vector<Outcome> outcomes(tasks.size());
  parallel_for(tasks.size(), jobs, [&](std::size_t i) {
    const Task& t = tasks[i];
    try {
      switch (t.kind) {
        case Kind::Cell:
          outcomes[i].cell = evaluation::run_identification(t.spec, ds);
          break;
        case Kind::Subset: {
          evaluation::SubsetResult r{t.spec.game_id, t.spec.feature_set, t.spec.model, {}};
          auto spec = t.spec;
          spec.vote_k = {1};
          r.points = evaluation::user_subset_experiment(ds, spec, c.subset_unit, c.subset_sizes);
          outcomes[i].subset = std::move(r);
          break;
        }
        case Kind::CrossGame:
          outcomes[i].cell = evaluation::cross_game_eval(ds, t.spec.game_id, t.test_game, t.spec);
          break;
        case Kind::Recognition:
          outcomes[i].cell = evaluation::game_recognition_eval(ds, t.spec);
          break;
      }
    } catch (const std::exception& e) {
      outcomes[i].error = e.what();
    }
  });

  evaluation::EvaluationReport report;
  report.metadata = run_metadata(c);
  report.metadata["n_traces"] = ds.traces.size();
  static const char* kNames[] = {"identification", "subsets", "cross_game", "game_recognition"};
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const Task& t = tasks[i];
    auto& o = outcomes[i];
    if (!o.error.empty()) {
      std::string what = describe(kNames[static_cast<int>(t.kind)], t.spec);
      if (t.kind == Kind::CrossGame) what += " -> " + t.test_game;
      report.failures.push_back({what, o.error});
      continue;
    }
    switch (t.kind) {
      case Kind::Cell:
        report.cells.push_back(std::move(*o.cell));
        break;
      case Kind::Subset:
        report.subsets.push_back(std::move(*o.subset));
        break;
      case Kind::CrossGame:
        report.cross_game.push_back(std::move(*o.cell));
        break;
      case Kind::Recognition:
        report.game_recognition.push_back(std::move(*o.cell));
        break;
    }
  }
  const fs::path dir = resolve_output("", c.output_dir);
  evaluation::write_report(report, dir);
  for (const auto& cell : report.cells) {
    out << evaluation::cell_key(cell) << ": accuracy " << cell.accuracy << ", macro-F1 "
        << cell.macro_f1 << "\n";
  }
  for (const auto& cell : report.cross_game) {
    out << evaluation::cell_key(cell) << ": accuracy " << cell.accuracy << "\n";
  }
  for (const auto& cell : report.game_recognition) {
    out << "game recognition " << features::to_string(cell.feature_set) << "/"
        << classifiers::to_string(cell.model) << ": accuracy " << cell.accuracy << "\n";
  }
  out << "report written to " << dir.string() << "\n";
  if (!report.failures.empty()) {
    err << report.failures.size() << " of " << tasks.size() << " cells failed:\n";
    for (const auto& f : report.failures) err << "  " << f.cell << ": " << f.error << "\n";
    return kExitCellFailure;
  }
  return kExitOk;
}

// ---- importance ----

int cmd_importance(const std::string& config_path, int top, int jobs_flag, std::ostream& out,
                   std::ostream& err) {
  const auto in = load_inputs(config_path);
  const RunConfig& c = in.config;
  const std::size_t jobs = resolve_jobs(jobs_flag, c.jobs);
  const std::size_t k = top > 0 ? static_cast<std::size_t>(top) : c.importance.top_k;
  if (k > features::feature_count(c.importance.feature_set)) {
    throw UsageError("--top exceeds the feature count of " +
                     std::string(features::to_string(c.importance.feature_set)));
  }
  features::FeaturizeOptions fo;
  fo.window_s = c.window_s;
  fo.bin_s = c.bin_s;
  const auto ds = evaluation::load_dataset(in.manifest, fo, jobs);
  const fs::path dir = resolve_output("", c.output_dir);

  std::vector<std::pair<std::string, importance::AttributionResult>> results;
  std::vector<std::pair<std::string, std::string>> failures;
  nlohmann::json games = nlohmann::json::array();
  for (const auto& game : in.games) {
    auto spec = base_spec(c);
    spec.game_id = game;
    spec.seed = c.seeds.front();
    spec.feature_set = c.importance.feature_set;
    spec.model = c.importance.model;
    spec.model_options.set_jobs(jobs);
    try {
      const auto split = evaluation::prepare_identification_split(spec, ds);
      const classifiers::LabeledData data{split.X_train, split.y_train, split.labels};
      const auto model = classifiers::train_model(spec.model, data, spec.model_options, spec.seed);
      importance::AttributionOptions ao;
      ao.n_permutations = c.importance.n_permutations;
      ao.max_instances_per_label = c.importance.max_instances_per_user;
      ao.seed = spec.seed;
      ao.jobs = jobs;
      auto result = importance::shapley_attribution(*model, split.X_test, split.y_test,
                                                    importance::column_means(split.X_train),
                                                    features::feature_names(spec.feature_set), ao);
      write_file_atomic(dir / "importance" / (game + "__attribution.csv"),
                        importance::attribution_csv(result));
      nlohmann::json top_j = nlohmann::json::array();
      for (const auto& [name, value] : importance::top_k_features(result, k)) {
        top_j.push_back({{"feature", name}, {"value", value}});
        out << game << ": " << name << " " << value << "\n";
      }
      games.push_back({{"game_id", game},
                       {"n_instances", result.n_instances},
                       {"n_permutations", result.n_permutations},
                       {"baseline", result.baseline},
                       {"top", top_j}});
      results.emplace_back(game, std::move(result));
    } catch (const std::exception& e) {
      failures.emplace_back(game, e.what());
    }
  }
  if (!results.empty()) {
    write_file_atomic(dir / "importance" / ("top" + std::to_string(k) + ".csv"),
                      importance::top_k_table_csv(results, k));
  }
  nlohmann::json report;
  report["metadata"] = run_metadata(c);
  report["feature_set"] = std::string(features::to_string(c.importance.feature_set));
  report["model"] = std::string(classifiers::to_string(c.importance.model));
  report["top_k"] = k;
  report["games"] = games;
  report["failures"] = nlohmann::json::array();
  for (const auto& [g, e] : failures) report["failures"].push_back({{"game_id", g}, {"error", e}});
  write_file_atomic(dir / "importance" / "importance.json", report.dump(2) + "\n");
  if (!failures.empty()) {
    err << failures.size() << " of " << in.games.size() << " games failed:\n";
    for (const auto& [g, e] : failures) err << "  " << g << ": " << e << "\n";
    return kExitCellFailure;
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"VR user identification from movement and network traffic", "vrid"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(VRID_VERSION));
  bool quiet = false, verbose = false;
  app.add_flag("-q,--quiet", quiet, "Only report errors");
  app.add_flag("-v,--verbose", verbose, "Debug logging");

  SynthArgs synth;
  auto* s = app.add_subcommand("synth", "Write a synthetic cohort (manifest + trace CSVs)");
  s->add_option("--users", synth.users, "Number of users")->capture_default_str();
  s->add_option("--minutes", synth.minutes, "Minutes per trace")->capture_default_str();
  s->add_option("--seed", synth.seed, "Cohort seed")->capture_default_str();
  s->add_flag("--clone", synth.clone, "Give every user the same profile");
  s->add_option("--games", synth.games, "Number of games with distinct traffic")
      ->capture_default_str();
  s->add_option("--out", synth.out, "Output directory (default $VRID_OUTPUT_DIR or ./synthetic)");

  FeaturizeArgs feat;
  auto* f = app.add_subcommand("featurize", "Write per-game feature matrices");
  f->add_option("--manifest", feat.manifest, "Dataset manifest")->required();
  f->add_option("--feature-set", feat.feature_set, "Feature set")->capture_default_str();
  f->add_option("--window", feat.window, "Window length in seconds")->capture_default_str();
  f->add_option("--bin", feat.bin, "Traffic bin length in seconds")->capture_default_str();
  f->add_flag("--normalize-height", feat.normalize_height, "Use height-normalized movement");
  f->add_option("--out", feat.out, "Output directory (default $VRID_OUTPUT_DIR or ./features)");
  f->add_option("--jobs", feat.jobs, "Worker threads (0 = all cores)");

  std::string eval_config;
  int eval_jobs = -1;
  auto* e = app.add_subcommand("evaluate", "Run the experiment matrix of a config");
  e->add_option("--config", eval_config, "Run config (JSON)")->required();
  e->add_option("--jobs", eval_jobs, "Parallel cells (0 = all cores)");

  std::string imp_config;
  int imp_top = 0, imp_jobs = -1;
  auto* im = app.add_subcommand("importance", "Shapley feature attribution per game");
  im->add_option("--config", imp_config, "Run config (JSON)")->required();
  im->add_option("--top", imp_top, "Top features per game (default from config, 3)");
  im->add_option("--jobs", imp_jobs, "Worker threads (0 = all cores)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& ex) {
    app.exit(ex, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& ex) {
    app.exit(ex, out, err);
    return kExitOk;
  } catch (const CLI::CallForVersion& ex) {
    app.exit(ex, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    app.exit(ex, out, err);
    return kExitUsage;
  }
  log::set_level(quiet ? log::Level::Error : verbose ? log::Level::Debug : log::Level::Info);

  try {
    if (*s) return cmd_synth(synth, out);
    if (*f) return cmd_featurize(feat, out);
    if (*e) return cmd_evaluate(eval_config, eval_jobs, out, err);
    if (*im) return cmd_importance(imp_config, imp_top, imp_jobs, out, err);
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace vrid::cli
