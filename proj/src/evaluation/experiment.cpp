#include "vrid/evaluation/experiment.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "vrid/error.hpp"
#include "vrid/features/scaler.hpp"

namespace vrid::evaluation {
namespace {

using features::TraceFeatures;
using features::WindowFeatures;

struct Slice {
  const TraceFeatures* trace = nullptr;
  std::size_t label = 0;
  std::vector<const WindowFeatures*> windows;
};

struct SplitSlices {
  std::vector<Slice> train;
  std::vector<Slice> test;
};

std::string trace_id(const TraceFeatures& t) { return t.user_id + "/" + t.game_id; }

SplitSlices split_trace(const TraceFeatures& t, std::size_t label, double train_s, double test_s) {
  std::vector<double> starts;
  for (const auto& w : t.windows) starts.push_back(w.start);
  SplitIndices idx;
  try {
    idx = split_train_test(starts, t.duration, t.window_s, train_s, test_s);
  } catch (const InsufficientDurationError& e) {
    throw InsufficientDurationError(trace_id(t) + ": " + e.what(), e.shortfall());
  }
  SplitSlices out;
  out.train.push_back({&t, label, {}});
  out.test.push_back({&t, label, {}});
  for (auto i : idx.train) out.train.back().windows.push_back(&t.windows[i]);
  for (auto i : idx.test) out.test.back().windows.push_back(&t.windows[i]);
  return out;
}

Matrix stack(std::span<const Slice> slices, features::FeatureSet fs, std::vector<std::size_t>* y) {
  Matrix X;
  std::size_t rows = 0;
  for (const auto& s : slices) rows += s.windows.size();
  X.reserve_rows(rows);
  for (const auto& s : slices) {
    for (const auto* w : s.windows) {
      X.append_row(features::assemble(*w, fs));
      if (y) y->push_back(s.label);
    }
  }
  return X;
}

CellResult fit_and_evaluate(const ExperimentSpec& spec, std::vector<std::string> labels,
                            std::span<const Slice> train, std::span<const Slice> test) {
  std::vector<std::size_t> y_train;
  Matrix X_train = stack(train, spec.feature_set, &y_train);
  if (X_train.rows() == 0) throw ArgumentError("no training windows");
  const auto scaler = features::fit_minmax(X_train);
  scaler.apply_inplace(X_train);

  const classifiers::LabeledData data{X_train, y_train, labels};
  const auto model = classifiers::train_model(spec.model, data, spec.model_options, spec.seed);

  CellResult cell;
  cell.game_id = spec.game_id;
  cell.test_game_id = spec.game_id;
  cell.feature_set = spec.feature_set;
  cell.model = spec.model;
  cell.seed = spec.seed;
  cell.n_train = X_train.rows();
  cell.confusion = ConfusionMatrix(labels.size());
  std::vector<std::size_t> y_true, y_pred;
  for (const auto& s : test) {
    TracePredictions tp;
    tp.trace_id = trace_id(*s.trace);
    tp.true_label = s.label;
    Matrix X = stack(std::span(&s, 1), spec.feature_set, nullptr);
    if (X.rows() == 0) continue;
    scaler.apply_inplace(X);
    tp.proba = model->predict_proba(X);
    for (std::size_t r = 0; r < X.rows(); ++r) {
      tp.window_index.push_back(s.windows[r]->window_index);
      tp.predicted.push_back(classifiers::argmax(tp.proba.row(r)));
      y_true.push_back(s.label);
      y_pred.push_back(tp.predicted.back());
      cell.confusion.add(s.label, tp.predicted.back());
    }
    cell.predictions.push_back(std::move(tp));
  }
  if (y_true.empty()) throw ArgumentError("no test windows");
  cell.n_test = y_true.size();
  cell.accuracy = accuracy(y_true, y_pred);
  cell.macro_f1 = cell.confusion.macro_f1();
  cell.labels = std::move(labels);
  for (std::size_t k : spec.vote_k) {
    cell.voting.push_back({k, majority_vote_eval(cell.predictions, k)});
  }
  return cell;
}

void check_vote_k(std::size_t k) {
  if (k == 0 || k % 2 == 0) {
    throw ArgumentError("voting window k must be odd and >= 1, got " + std::to_string(k));
  }
}

}  // namespace

CellResult run_identification(const ExperimentSpec& spec, const Dataset& dataset) {
  const auto users = dataset.users(spec.game_id);
  return run_identification(spec, dataset, users);
}

namespace {

SplitSlices identification_slices(const ExperimentSpec& spec, const Dataset& dataset,
                                  std::span<const std::string> users,
                                  std::vector<std::string>& labels) {
  labels.assign(users.begin(), users.end());
  std::sort(labels.begin(), labels.end());
  if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) {
    throw ArgumentError("duplicate user in identification set");
  }
  if (labels.size() < 2) throw ArgumentError("need at least 2 users");
  std::vector<Slice> train, test;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    const auto* t = dataset.find(labels[k], spec.game_id);
    if (!t)
      throw ArgumentError("no trace for user '" + labels[k] + "' in game '" + spec.game_id + "'");
    auto s = split_trace(*t, k, spec.train_s, spec.test_s);
    train.push_back(std::move(s.train.front()));
    test.push_back(std::move(s.test.front()));
  }
  return {std::move(train), std::move(test)};
}

}  // namespace

CellResult run_identification(const ExperimentSpec& spec, const Dataset& dataset,
                              std::span<const std::string> users) {
  for (std::size_t k : spec.vote_k) check_vote_k(k);
  std::vector<std::string> labels;
  const auto slices = identification_slices(spec, dataset, users, labels);
  return fit_and_evaluate(spec, std::move(labels), slices.train, slices.test);
}

PreparedSplit prepare_identification_split(const ExperimentSpec& spec, const Dataset& dataset) {
  PreparedSplit out;
  const auto users = dataset.users(spec.game_id);
  const auto slices = identification_slices(spec, dataset, users, out.labels);
  out.X_train = stack(slices.train, spec.feature_set, &out.y_train);
  out.X_test = stack(slices.test, spec.feature_set, &out.y_test);
  if (out.X_train.rows() == 0 || out.X_test.rows() == 0) {
    throw ArgumentError("split has no training or no test windows");
  }
  out.scaler = features::fit_minmax(out.X_train);
  out.scaler.apply_inplace(out.X_train);
  out.scaler.apply_inplace(out.X_test);
  return out;
}

std::vector<std::size_t> majority_vote(std::span<const std::size_t> predicted, const Matrix& proba,
                                       std::size_t k) {
  check_vote_k(k);
  const std::size_t n = predicted.size();
  if (proba.rows() != n) throw ArgumentError("majority_vote: predictions and proba rows differ");
  if (k > n) {
    throw ArgumentError("voting window " + std::to_string(k) + " exceeds " + std::to_string(n) +
                        " test windows");
  }
  const std::size_t K = proba.cols();
  std::vector<std::size_t> votes(K);
  std::vector<double> mass(K);
  std::vector<std::size_t> out;
  out.reserve(n - k + 1);
  for (std::size_t start = 0; start + k <= n; ++start) {
    std::fill(votes.begin(), votes.end(), 0);
    std::fill(mass.begin(), mass.end(), 0.0);
    for (std::size_t i = start; i < start + k; ++i) {
      ++votes[predicted[i]];
      for (std::size_t c = 0; c < K; ++c) mass[c] += proba(i, c);
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < K; ++c) {
      if (votes[c] > votes[best] || (votes[c] == votes[best] && mass[c] > mass[best])) best = c;
    }
    out.push_back(best);
  }
  return out;
}

double majority_vote_eval(std::span<const TracePredictions> predictions, std::size_t k) {
  check_vote_k(k);
  if (predictions.empty()) throw ArgumentError("majority_vote_eval: no predictions");
  std::size_t hits = 0, total = 0;
  for (const auto& tp : predictions) {
    for (std::size_t label : majority_vote(tp.predicted, tp.proba, k)) {
      hits += label == tp.true_label ? 1 : 0;
      ++total;
    }
  }
  return static_cast<double>(hits) / static_cast<double>(total);
}

std::vector<std::vector<std::size_t>> subset_groups(std::size_t n_users, std::size_t unit,
                                                    std::size_t size) {
  if (unit == 0 || n_users % unit != 0) {
    throw ArgumentError("user count " + std::to_string(n_users) + " is not divisible by unit " +
                        std::to_string(unit));
  }
  if (size == 0 || size % unit != 0 || size > n_users) {
    throw ArgumentError("subset size " + std::to_string(size) + " must be a positive multiple of " +
                        std::to_string(unit) + " up to " + std::to_string(n_users));
  }
  const std::size_t U = n_users / unit, m = size / unit;
  std::vector<std::vector<std::size_t>> groups(U);
  for (std::size_t g = 0; g < U; ++g) {
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t u = (g + j) % U;
      for (std::size_t i = 0; i < unit; ++i) groups[g].push_back(u * unit + i);
    }
    std::sort(groups[g].begin(), groups[g].end());
  }
  return groups;
}

std::vector<SubsetPoint> user_subset_experiment(const Dataset& dataset, const ExperimentSpec& spec,
                                                std::size_t unit, std::vector<std::size_t> sizes) {
  const auto users = dataset.users(spec.game_id);
  const std::size_t n = users.size();
  if (unit == 0 || n % unit != 0) {
    throw ArgumentError("user count " + std::to_string(n) + " is not divisible by unit " +
                        std::to_string(unit));
  }
  if (sizes.empty()) {
    for (std::size_t s = unit; s <= n; s += unit) sizes.push_back(s);
  }
  std::map<std::vector<std::size_t>, double> cache;
  std::vector<SubsetPoint> out;
  for (std::size_t size : sizes) {
    SubsetPoint point;
    point.size = size;
    double sum = 0.0;
    for (const auto& members : subset_groups(n, unit, size)) {
      SubsetGroup group;
      for (auto i : members) group.users.push_back(users[i]);
      auto it = cache.find(members);
      if (it == cache.end()) {
        it = cache.emplace(members, run_identification(spec, dataset, group.users).accuracy).first;
      }
      group.accuracy = it->second;
      sum += group.accuracy;
      point.groups.push_back(std::move(group));
    }
    point.mean_accuracy = sum / static_cast<double>(point.groups.size());
    out.push_back(std::move(point));
  }
  return out;
}

CellResult cross_game_eval(const Dataset& dataset, const std::string& train_game,
                           const std::string& test_game, const ExperimentSpec& spec) {
  ExperimentSpec s = spec;
  s.game_id = train_game;
  const auto users = dataset.users(train_game);
  if (users != dataset.users(test_game)) {
    throw ArgumentError("games '" + train_game + "' and '" + test_game + "' have different users");
  }
  if (users.size() < 2) throw ArgumentError("need at least 2 users");
  if (train_game == test_game) return run_identification(s, dataset);
  for (std::size_t k : s.vote_k) check_vote_k(k);

  auto full_span = [&](const std::string& game, std::size_t label) {
    auto split = split_trace(*dataset.find(users[label], game), label, s.train_s, s.test_s);
    Slice all = split.train.front();
    const auto& rest = split.test.front().windows;
    all.windows.insert(all.windows.end(), rest.begin(), rest.end());
    return all;
  };
  std::vector<Slice> train, test;
  for (std::size_t k = 0; k < users.size(); ++k) {
    train.push_back(full_span(train_game, k));
    test.push_back(full_span(test_game, k));
  }
  CellResult cell = fit_and_evaluate(s, users, train, test);
  cell.test_game_id = test_game;
  return cell;
}

CellResult game_recognition_eval(const Dataset& dataset, const ExperimentSpec& spec) {
  if (dataset.games.size() < 2) throw ArgumentError("game recognition needs at least 2 games");
  std::vector<std::string> labels;
  for (const auto& g : dataset.games) labels.push_back(g.id);
  std::sort(labels.begin(), labels.end());
  std::vector<Slice> train, test;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    for (const auto* t : dataset.game_traces(labels[k])) {
      auto s = split_trace(*t, k, spec.train_s, spec.test_s);
      train.push_back(std::move(s.train.front()));
      test.push_back(std::move(s.test.front()));
    }
  }
  ExperimentSpec s = spec;
  s.game_id = kAllGames;
  return fit_and_evaluate(s, std::move(labels), train, test);
}

}  // namespace vrid::evaluation
