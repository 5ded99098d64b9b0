// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "vrid/classifiers/forest.hpp"
#include "vrid/classifiers/gbm.hpp"
#include "vrid/classifiers/logistic.hpp"
#include "vrid/classifiers/qda.hpp"
#include "vrid/classifiers/train.hpp"
#include "vrid/evaluation/dataset.hpp"
#include "vrid/evaluation/experiment.hpp"
#include "vrid/features/extract.hpp"
#include "vrid/features/featurize.hpp"
#include "vrid/features/stats.hpp"
#include "vrid/features/traffic.hpp"
#include "vrid/importance/shapley.hpp"
#include "vrid/ingestion/synth.hpp"
#include "vrid/util/log.hpp"

using namespace vrid;
using classifiers::ModelKind;
using features::FeatureSet;

namespace {

// Pinned tolerances.
constexpr double kStatsTol = 1e-9;
constexpr double kQdaTol = 1e-10;
constexpr double kGradRelTol = 1e-4;
constexpr double kLossSlack = 1e-9;
constexpr double kSeparableMin = 0.95;
constexpr double kCloneMax = 0.25;
constexpr double kSubsetSlack = 0.05;
constexpr double kExactMcTol = 0.01;
constexpr double kEfficiencySe = 3.0;
constexpr double kEfficiencyEps = 1e-12;

// Runtime budgets in seconds.
constexpr double kBudget[] = {0, 1, 1, 30, 180, 60, 600, 120, 60};

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int g_failures = 0;

void criterion(int n, const std::string& title, const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.ok = false;
    c.detail << " [exception: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(secs < kBudget[n], "runtime budget " + std::to_string(kBudget[n]) + " s");
  if (!c.ok) ++g_failures;
  std::printf("%s %d: %s%s (%.2f s)\n", c.ok ? "PASS" : "FAIL", n, title.c_str(),
              c.detail.str().c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

ingestion::CohortOptions cohort(std::size_t users, double minutes, std::uint64_t seed,
                                bool clone = false) {
  ingestion::CohortOptions o;
  o.n_users = users;
  o.minutes = minutes;
  o.seed = seed;
  o.clone = clone;
  return o;
}

evaluation::ExperimentSpec spec_for(const std::string& game) {
  evaluation::ExperimentSpec s;
  s.game_id = game;
  s.feature_set = FeatureSet::MovementAndTraffic;
  s.model = ModelKind::ExtraTrees;
  s.seed = 0;
  return s;
}

const evaluation::Dataset& separable() {
  static const evaluation::Dataset ds = evaluation::synthetic_dataset(cohort(10, 10, 7));
  return ds;
}

// Expected names, built from the documented layout rather than the library's list.
std::vector<std::string> expected_movement_names() {
  const char* devices[] = {"head", "left", "right"};
  const char* chans[] = {"px", "py", "pz", "qw", "qx", "qy", "qz"};
  const char* derivs[] = {"raw", "vel", "acc"};
  const char* stats[] = {"mean", "min", "max", "q25", "q50", "q75", "std"};
  const char* geom[] = {"dist_left_head",  "dist_right_head",  "dist_left_right",
                        "angle_left_head", "angle_right_head", "angle_left_right"};
  std::vector<std::string> out;
  for (auto d : devices) {
    for (auto c : chans) {
      for (auto v : derivs) {
        for (auto s : stats) out.push_back(std::string("mv.") + d + "_" + c + "." + v + "." + s);
      }
    }
  }
  for (auto g : geom) {
    for (auto s : stats) out.push_back(std::string("mv.") + g + ".raw." + s);
  }
  return out;
}

std::vector<std::string> expected_traffic_names() {
  const char* base[] = {"mean_size", "bytes", "ul_count", "dl_count"};
  const char* stats[] = {"mean", "min", "max", "q25", "q50", "q75", "std"};
  std::vector<std::string> out;
  for (auto b : base) {
    for (auto s : stats) out.push_back(std::string("tr.") + b + ".raw." + s);
  }
  return out;
}

void c1_feature_shape(Check& c) {
  const auto trace = ingestion::generate_trace(ingestion::SynthUserProfile{},
                                               ingestion::SynthGameProfile{}, "u00", 1.0, 1);
  const Trace prepared = prepare_trace(trace);
  const auto windows = window_trace(prepared, 10.0);
  const auto heights = trace_height_means(prepared);
  const auto mv_names = expected_movement_names();
  const auto tr_names = expected_traffic_names();
  for (const auto& w : windows) {
    const auto mv = features::movement_features(w, false, heights);
    const auto mvn = features::movement_features(w, true, heights);
    const auto tr = features::traffic_features(w);
    c.expect(mv.values.size() == 483 && mvn.values.size() == 483, "movement length 483");
    c.expect(tr.values.size() == 28, "traffic length 28");
    c.expect(*mv.names == mv_names, "movement name order");
    c.expect(*tr.names == tr_names, "traffic name order");
  }
  auto combined = mv_names;
  combined.insert(combined.end(), tr_names.begin(), tr_names.end());
  c.expect(features::feature_names(FeatureSet::MovementAndTraffic) == combined,
           "combined name order");
  const auto tf = features::featurize_trace(trace);
  for (FeatureSet fs : features::kAllFeatureSets) {
    const std::size_t want = fs == FeatureSet::Traffic    ? 28
                             : features::uses_traffic(fs) ? 511
                                                          : 483;
    c.expect(features::assemble(tf.windows[0], fs).size() == want,
             std::string(features::to_string(fs)) + " length");
  }
  c.detail << " 483/28/511 over " << windows.size() << " windows";
}

struct StatsFixture {
  std::vector<double> data;
  std::array<double, 7> expect;  // mean min max q25 q50 q75 std
};

void c2_statistics(Check& c) {
  // Expected values computed independently (numpy mean/percentile/std).
  const std::vector<StatsFixture> fixtures{
      {{1.0, 2.0, 3.0, 4.0}, {2.5, 1, 4, 1.75, 2.5, 3.25, 1.1180339887498949}},
      {{5.0, 5.0, 5.0}, {5, 5, 5, 5, 5, 5, 0}},
      {{7.0}, {7, 7, 7, 7, 7, 7, 0}},
      {{0.0, 10.0}, {5, 0, 10, 2.5, 5, 7.5, 5}},
      {{1.0, 3.0}, {2, 1, 3, 1.5, 2, 2.5, 1}},
      {{-1.0, 0.0, 1.0}, {0, -1, 1, -0.5, 0, 0.5, 0.81649658092772603}},
      {{2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0}, {5, 2, 9, 4, 4.5, 5.5, 2}},
      {{1.0, 2.0, 3.0, 4.0, 5.0}, {3, 1, 5, 2, 3, 4, 1.4142135623730951}},
      {{10.0, 20.0, 30.0, 40.0, 50.0, 60.0}, {35, 10, 60, 22.5, 35, 47.5, 17.078251276599332}},
      {{3.0, 1.0, 2.0}, {2, 1, 3, 1.5, 2, 2.5, 0.81649658092772603}},
      {{0.5, 0.25, 0.125},
       {0.29166666666666669, 0.125, 0.5, 0.1875, 0.25, 0.375, 0.15590239111558088}},
      {{-5.0, -3.0, -1.0}, {-3, -5, -1, -4, -3, -2, 1.6329931618554521}},
      {{100.0, 0.0, 50.0, 25.0, 75.0}, {50, 0, 100, 25, 50, 75, 35.355339059327378}},
      {{1.0, 1.0, 2.0, 3.0, 5.0, 8.0, 13.0},
       {4.7142857142857144, 1, 13, 1.5, 3, 6.5, 4.0957917676661282}},
      {{0.0, 0.0, 0.0, 1.0}, {0.25, 0, 1, 0, 0, 0.25, 0.4330127018922193}},
      {{2.5, 3.5}, {3, 2.5, 3.5, 2.75, 3, 3.25, 0.5}},
      {{9.0, 8.0, 7.0, 6.0, 5.0, 4.0, 3.0, 2.0, 1.0, 0.0},
       {4.5, 0, 9, 2.25, 4.5, 6.75, 2.8722813232690143}},
      {{1000.0, 1001.0}, {1000.5, 1000, 1001, 1000.25, 1000.5, 1000.75, 0.5}},
      {{-2.0, 2.0, -2.0, 2.0}, {0, -2, 2, -2, 0, 2, 2}},
      {{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7},
       {0.39999999999999997, 0.10000000000000001, 0.69999999999999996, 0.25, 0.40000000000000002,
        0.55000000000000004, 0.19999999999999998}},
      {{4.0, 1.0, 8.0, 2.0, 6.0, 3.0}, {4, 1, 8, 2.25, 3.5, 5.5, 2.3804761428476167}},
      {{1.0, 4.0, 9.0, 16.0, 25.0}, {11, 1, 25, 4, 9, 16, 8.6486993241758618}},
  };
  double worst = 0;
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    const auto got = features::summary_stats(fixtures[i].data).values();
    for (std::size_t k = 0; k < 7; ++k) {
      const double err = std::abs(got[k] - fixtures[i].expect[k]);
      worst = std::max(worst, err);
      c.expect(err <= kStatsTol, "fixture " + std::to_string(i) + " stat " + std::to_string(k));
    }
  }
  c.detail << " " << fixtures.size() << " fixtures, max abs err " << worst;
}

void c3_classifiers(Check& c) {
  // QDA against direct density evaluation.
  double worst_qda = 0;
  for (std::size_t d = 1; d <= 3; ++d) {
    for (std::size_t K = 2; K <= 4; ++K) {
      std::mt19937_64 gen(d * 31 + K);
      std::normal_distribution<double> nd;
      Matrix X;
      std::vector<std::size_t> y;
      for (std::size_t k = 0; k < K; ++k) {
        for (int i = 0; i < 15; ++i) {
          std::vector<double> row(d);
          for (std::size_t j = 0; j < d; ++j) row[j] = 2.0 * k + nd(gen) * (1.0 + 0.3 * j);
          if (d > 1) row[1] += 0.6 * row[0];
          X.append_row(row);
          y.push_back(k);
        }
      }
      std::vector<std::string> labels;
      for (std::size_t k = 0; k < K; ++k) labels.push_back("u" + std::to_string(k));
      const auto m = classifiers::train_qda({X, y, labels});
      for (std::size_t i = 0; i < X.rows(); ++i) {
        const auto got = m->predict_proba(X.row(i));
        const auto want = test::qda_oracle(X, y, K, classifiers::QdaOptions{}.ridge, X.row(i));
        for (std::size_t k = 0; k < K; ++k)
          worst_qda = std::max(worst_qda, std::abs(got[k] - want[k]));
      }
    }
  }
  c.expect(worst_qda <= kQdaTol, "qda density agreement");

  // Logistic gradient against central differences.
  std::mt19937_64 gen(5);
  std::normal_distribution<double> nd;
  Matrix X(20, 10);
  for (double& v : X.data()) v = nd(gen);
  std::vector<double> t(20), p(11), grad(11), scratch(11);
  for (std::size_t i = 0; i < 20; ++i) t[i] = X(i, 0) + 0.5 * X(i, 1) > 0 ? 1.0 : 0.0;
  for (double& v : p) v = 0.5 * nd(gen);
  classifiers::binary_logistic_objective(X, t, 1.0, p, grad);
  double worst_grad = 0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    auto up = p, dn = p;
    up[j] += 1e-6;
    dn[j] -= 1e-6;
    const double fd = (classifiers::binary_logistic_objective(X, t, 1.0, up, scratch) -
                       classifiers::binary_logistic_objective(X, t, 1.0, dn, scratch)) /
                      2e-6;
    worst_grad = std::max(worst_grad, std::abs(fd - grad[j]) / std::max(std::abs(fd), 1e-8));
  }
  c.expect(worst_grad < kGradRelTol, "logistic gradient");

  // GBM loss over 100 rounds.
  Matrix B;
  std::vector<std::size_t> yb;
  for (std::size_t k = 0; k < 4; ++k) {
    for (int i = 0; i < 25; ++i) {
      std::vector<double> row(5);
      for (double& v : row) v = 0.8 * k + nd(gen);
      B.append_row(row);
      yb.push_back(k);
    }
  }
  const std::vector<std::string> four{"a", "b", "c", "d"};
  classifiers::GbmOptions go;
  go.n_rounds = 100;
  const auto gbm = classifiers::train_gbm({B, yb, four}, go);
  const auto& loss = gbm->training_loss();
  bool monotone = loss.size() == 101;
  for (std::size_t r = 1; r < loss.size(); ++r)
    monotone = monotone && loss[r] <= loss[r - 1] + kLossSlack;
  c.expect(monotone, "gbm loss non-increasing");

  // Forest determinism.
  for (ModelKind kind : {ModelKind::RandomForest, ModelKind::ExtraTrees}) {
    auto o = kind == ModelKind::RandomForest ? classifiers::random_forest_defaults()
                                             : classifiers::extra_trees_defaults();
    o.n_trees = 50;
    const auto a = classifiers::train_forest(kind, {B, yb, four}, o, 11);
    const auto b = classifiers::train_forest(kind, {B, yb, four}, o, 11);
    c.expect(a->trees() == b->trees() && a->predict_proba(B) == b->predict_proba(B),
             std::string(classifiers::to_string(kind)) + " determinism");
  }
  c.detail << " qda max err " << worst_qda << ", grad rel err " << worst_grad << ", gbm loss "
           << fmt(loss.front()) << " -> " << fmt(loss.back());
}

void c4_separable(Check& c) {
  const auto cell = evaluation::run_identification(spec_for("synth"), separable());
  c.expect(cell.n_test == 120, "12 test windows per user");
  c.expect(cell.accuracy >= kSeparableMin, "separable accuracy");
  const auto clone_ds = evaluation::synthetic_dataset(cohort(10, 10, 7, true));
  const auto clone = evaluation::run_identification(spec_for("synth"), clone_ds);
  c.expect(clone.accuracy <= kCloneMax, "clone accuracy");
  c.detail << " separable " << fmt(cell.accuracy) << ", clone " << fmt(clone.accuracy);
}

void c5_voting(Check& c) {
  auto spec = spec_for("synth");
  spec.vote_k = {1, 3, 5, 7, 9, 11};
  const auto cell = evaluation::run_identification(spec, separable());
  c.expect(evaluation::majority_vote_eval(cell.predictions, 1) == cell.accuracy, "k=1 identity");
  c.expect(cell.voting.front().accuracy == cell.accuracy, "reported k=1");
  c.expect(cell.voting.back().k == 11 && cell.voting.back().accuracy >= cell.accuracy,
           "k=11 >= k=1");
  std::mt19937_64 gen(12);
  std::uniform_int_distribution<std::size_t> lab(0, 4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  bool agree = true;
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<std::size_t> pred(12);
    Matrix P(12, 5);
    for (std::size_t i = 0; i < 12; ++i) {
      pred[i] = lab(gen) % (rep % 4 + 2);
      double s = 0;
      for (double& v : P.row(i)) s += (v = u(gen));
      for (double& v : P.row(i)) v /= s;
    }
    for (std::size_t k = 1; k <= 11; k += 2) {
      agree = agree && evaluation::majority_vote(pred, P, k) == test::brute_force_vote(pred, P, k);
    }
  }
  c.expect(agree, "rolling majority vs enumeration");
  c.detail << " k=1 " << fmt(cell.voting.front().accuracy) << ", k=11 "
           << fmt(cell.voting.back().accuracy);
}

void c6_subsets(Check& c) {
  const auto ds = evaluation::synthetic_dataset(cohort(30, 10, 7));
  const auto points = evaluation::user_subset_experiment(ds, spec_for("synth"), 5);
  c.expect(points.size() == 6, "six sizes");
  for (std::size_t i = 0; i < points.size(); ++i) {
    c.expect(points[i].size == 5 * (i + 1), "size order");
    c.expect(points[i].groups.size() == 6, "six groups at size " + std::to_string(points[i].size));
    if (i > 0) {
      c.expect(points[i].mean_accuracy <= points[i - 1].mean_accuracy + kSubsetSlack,
               "non-increasing at size " + std::to_string(points[i].size));
    }
    c.detail << " " << points[i].size << ":" << fmt(points[i].mean_accuracy);
  }
}

// Probability-valued toy game with a three-way interaction.
double toy_game(std::span<const double> z) {
  return 1.0 / (1.0 + std::exp(-(z[0] * z[1] * z[2] + 0.5 * z[3] - 0.3 * z[1] * z[3])));
}

void c7_shapley(Check& c) {
  const std::vector<double> x{1.0, 2.0, 0.7, -1.5}, b{-0.5, 0.3, -1.0, 0.2};
  // Small trained classifiers on 4 features act as the other toy models.
  Matrix X;
  std::vector<std::size_t> y;
  std::mt19937_64 gen(7);
  std::normal_distribution<double> nd;
  for (std::size_t k = 0; k < 3; ++k) {
    for (int i = 0; i < 30; ++i) {
      std::vector<double> row(4);
      for (double& v : row) v = 0.7 * k + nd(gen);
      X.append_row(row);
      y.push_back(k);
    }
  }
  const std::vector<std::string> three{"a", "b", "c"};
  auto et_opts = classifiers::extra_trees_defaults();
  et_opts.n_trees = 50;
  const classifiers::ModelPtr et = classifiers::train_extra_trees({X, y, three}, 3, et_opts);
  classifiers::GbmOptions go;
  go.n_rounds = 30;
  const classifiers::ModelPtr gbm = classifiers::train_gbm({X, y, three}, go);
  const auto xm = std::vector<double>(X.row(5).begin(), X.row(5).end());
  const auto bm = importance::column_means(X);

  struct Game {
    importance::ValueFunction f;
    std::vector<double> x, b;
  };
  const std::vector<Game> games{
      {toy_game, x, b},
      {[&](std::span<const double> z) { return et->predict_proba(z)[0]; }, xm, bm},
      {[&](std::span<const double> z) { return gbm->predict_proba(z)[0]; }, xm, bm},
  };
  double worst = 0;
  std::string per_game;
  for (const auto& g : games) {
    const auto ex = importance::shapley_exact(g.f, g.x, g.b);
    const auto mc = importance::shapley_monte_carlo(g.f, g.x, g.b, 5000, 1);
    double err = 0;
    for (std::size_t j = 0; j < 4; ++j) err = std::max(err, std::abs(ex.values[j] - mc.values[j]));
    worst = std::max(worst, err);
    per_game += (per_game.empty() ? "" : "/") + fmt(err);
    const double gain = g.f(g.x) - g.f(g.b);
    c.expect(std::abs(std::accumulate(ex.values.begin(), ex.values.end(), 0.0) - gain) <= 1e-12,
             "exact efficiency");
    for (std::size_t n : {10u, 100u}) {
      const auto est = importance::shapley_monte_carlo(g.f, g.x, g.b, n, 2);
      double var = 0;
      for (double se : est.std_error) var += se * se;
      const double sum = std::accumulate(est.values.begin(), est.values.end(), 0.0);
      c.expect(std::abs(sum - gain) <= kEfficiencySe * std::sqrt(var) + kEfficiencyEps,
               "monte carlo efficiency");
    }
  }
  c.expect(worst <= kExactMcTol, "exact vs monte carlo");

  // Identical users except for their downlink packet rate.
  ingestion::CohortOptions o = cohort(5, 4, 21);
  std::vector<ingestion::SynthUserProfile> profiles(5);
  for (std::size_t u = 0; u < 5; ++u) profiles[u].downlink_rate = 200.0 + 200.0 * u;
  o.profiles = profiles;
  const auto ds = evaluation::synthetic_dataset(o);
  auto spec = spec_for("synth");
  spec.feature_set = FeatureSet::MovementNormHeightAndTraffic;
  spec.train_s = 160;
  spec.test_s = 80;
  spec.model_options.extra_trees.n_trees = 100;
  const auto split = evaluation::prepare_identification_split(spec, ds);
  const auto model = classifiers::train_model(
      spec.model, {split.X_train, split.y_train, split.labels}, spec.model_options, 0);
  importance::AttributionOptions ao;
  ao.n_permutations = 10;
  ao.max_instances_per_label = 2;
  const auto res = importance::shapley_attribution(*model, split.X_test, split.y_test,
                                                   importance::column_means(split.X_train),
                                                   features::feature_names(spec.feature_set), ao);
  const auto top = importance::top_k_features(res, 3);
  c.expect(top[0].first.rfind("tr.", 0) == 0, "traffic feature ranks first");
  c.detail << " exact-vs-mc err " << per_game << ", top " << top[0].first;
}

void c8_normalization(Check& c) {
  const auto split = evaluation::prepare_identification_split(spec_for("synth"), separable());
  bool in_range = true;
  for (double v : split.X_train.data()) in_range = in_range && v >= 0.0 && v <= 1.0;
  c.expect(in_range, "training features in [0,1]");

  const auto trace = ingestion::generate_trace(ingestion::SynthUserProfile{},
                                               ingestion::SynthGameProfile{}, "u00", 2.0, 4);
  const auto base = features::featurize_trace(trace);
  std::size_t compared = 0;
  for (double factor : {2.0, 0.5, 4.0}) {
    Trace scaled = trace;
    for (auto& s : scaled.movement) {
      for (Device d : kDevices) s.pose(d).position.y *= factor;
    }
    const auto other = features::featurize_trace(scaled);
    bool same = base.windows.size() == other.windows.size();
    for (std::size_t w = 0; same && w < base.windows.size(); ++w) {
      for (std::size_t f = 0; f < kPoseChannels * 21; ++f) {
        same = same && base.windows[w].movement_norm[f] == other.windows[w].movement_norm[f];
        ++compared;
      }
    }
    c.expect(same, "height-normalized invariance at factor " + fmt(factor));
  }
  c.detail << " " << split.X_train.rows() << " training rows in range, " << compared
           << " normalized values identical";
}

}  // namespace

int main() {
  log::set_level(log::Level::Error);
  criterion(1, "feature vector shapes and name order", c1_feature_shape);
  criterion(2, "summary statistics fixtures", c2_statistics);
  criterion(3, "classifier oracles", c3_classifiers);
  criterion(4, "separable and clone cohorts", c4_separable);
  criterion(5, "majority voting", c5_voting);
  criterion(6, "user subset scaling", c6_subsets);
  criterion(7, "shapley attribution", c7_shapley);
  criterion(8, "scaling and height normalization", c8_normalization);
  std::printf("%d of 8 criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
