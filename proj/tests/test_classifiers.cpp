#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "test_helpers.hpp"
#include "vrid/classifiers/ensemble.hpp"
#include "vrid/classifiers/forest.hpp"
#include "vrid/classifiers/gbm.hpp"
#include "vrid/classifiers/logistic.hpp"
#include "vrid/classifiers/optim.hpp"
#include "vrid/classifiers/qda.hpp"
#include "vrid/classifiers/serialize.hpp"
#include "vrid/classifiers/train.hpp"
#include "vrid/error.hpp"
#include "vrid/util/files.hpp"
#include "vrid/util/rng.hpp"

using namespace vrid;
using namespace vrid::classifiers;

namespace {

const std::vector<std::string> kTwo{"a", "b"};
const std::vector<std::string> kThree{"a", "b", "c"};

/// Returns a fixed distribution regardless of the input.
class FixedModel final : public Model {
 public:
  FixedModel(std::vector<std::string> labels, std::vector<double> p)
      : Model(std::move(labels), 1, 0), p_(std::move(p)) {}
  ModelKind kind() const noexcept override { return ModelKind::LogisticRegression; }
  nlohmann::json parameters() const override { return {}; }

 protected:
  void compute_proba(std::span<const double>, std::span<double> out) const override {
    std::copy(p_.begin(), p_.end(), out.begin());
  }

 private:
  std::vector<double> p_;
};

double accuracy_on(const Model& m, const Matrix& X, const std::vector<std::size_t>& y) {
  const auto pred = m.predict(X);
  std::size_t ok = 0;
  for (std::size_t i = 0; i < y.size(); ++i) ok += pred[i] == y[i];
  return static_cast<double>(ok) / static_cast<double>(y.size());
}

}  // namespace

TEST_SUITE("classifiers") {
  TEST_CASE("logistic objective gradient matches central differences") {
    std::mt19937_64 gen(3);
    std::normal_distribution<double> nd;
    Matrix X(20, 10);
    for (double& v : X.data()) v = nd(gen);
    std::vector<double> t(20), p(11), grad(11), scratch(11);
    for (std::size_t i = 0; i < 20; ++i) t[i] = (i * 7) % 3 == 0 ? 1.0 : 0.0;
    for (double& v : p) v = 0.3 * nd(gen);
    binary_logistic_objective(X, t, 0.5, p, grad);
    const double h = 1e-6;
    for (std::size_t j = 0; j < p.size(); ++j) {
      auto up = p, dn = p;
      up[j] += h;
      dn[j] -= h;
      const double fd = (binary_logistic_objective(X, t, 0.5, up, scratch) -
                         binary_logistic_objective(X, t, 0.5, dn, scratch)) /
                        (2 * h);
      CAPTURE(j);
      CHECK(std::abs(fd - grad[j]) / std::max(1e-8, std::abs(fd) + std::abs(grad[j])) < 1e-4);
    }
    std::vector<double> zero(11, 0.0);
    CHECK(binary_logistic_objective(X, t, 0.5, zero, grad) == doctest::Approx(std::log(2.0)));
  }

  TEST_CASE("logistic model with zero weights is uniform") {
    LogisticModel m(kTwo, 0, Matrix(2, 3), {0.0, 0.0}, {true, true}, 1.0);
    const auto p = m.predict_proba(std::vector<double>{1.0, -2.0, 5.0});
    CHECK(p[0] == 0.5);
    CHECK(p[1] == 0.5);
    CHECK_THROWS_AS(m.predict_proba(std::vector<double>{1.0}), ArgumentError);
  }

  TEST_CASE("logistic regression learns the sign of a separable feature") {
    Matrix X;
    std::vector<std::size_t> y;
    for (int i = -10; i <= 10; ++i) {
      if (i == 0) continue;
      X.append_row(std::vector<double>{static_cast<double>(i) / 10.0});
      y.push_back(i > 0 ? 1 : 0);
    }
    const auto m = train_logistic_ovr({X, y, kTwo});
    CHECK(m->converged());
    CHECK(m->weights()(1, 0) > 0.0);
    CHECK(m->weights()(0, 0) < 0.0);
    CHECK(accuracy_on(*m, X, y) == 1.0);
  }

  TEST_CASE("lbfgs minimizes a convex quadratic") {
    const Objective f = [](std::span<const double> x, std::span<double> g) {
      g[0] = 2 * (x[0] - 3);
      g[1] = 20 * (x[1] + 1);
      return (x[0] - 3) * (x[0] - 3) + 10 * (x[1] + 1) * (x[1] + 1);
    };
    const auto r = lbfgs_minimize(f, {0.0, 0.0});
    CHECK(r.converged);
    CHECK(r.x[0] == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(r.x[1] == doctest::Approx(-1.0).epsilon(1e-6));
  }

  TEST_CASE("qda on mirrored classes is even at the midpoint") {
    Matrix X;
    std::vector<std::size_t> y;
    std::mt19937_64 gen(8);
    std::normal_distribution<double> nd;
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < 30; ++i) pts.push_back({-2 + nd(gen), nd(gen)});
    for (const auto& p : pts) {
      X.append_row(p);
      y.push_back(0);
    }
    for (const auto& p : pts) {
      X.append_row(std::vector<double>{-p[0], -p[1]});
      y.push_back(1);
    }
    const auto m = train_qda({X, y, kTwo});
    const auto mid = m->predict_proba(std::vector<double>{0.0, 0.0});
    CHECK(mid[0] == doctest::Approx(0.5).epsilon(1e-9));
    const std::vector<double> mean0{m->means()(0, 0), m->means()(0, 1)};
    CHECK(m->predict_proba(mean0)[0] > 0.99);
  }

  TEST_CASE("qda posteriors match independently computed Gaussian densities") {
    for (std::size_t d : {1u, 2u, 3u}) {
      for (std::size_t K : {2u, 3u, 4u}) {
        std::vector<std::size_t> y;
        Matrix X = test::gaussian_blobs(12, K, d, 1.5, static_cast<unsigned>(d * 10 + K), y);
        // shear so covariances are not diagonal
        for (std::size_t i = 0; i < X.rows(); ++i) {
          if (d > 1) X(i, 1) += 0.5 * X(i, 0) * static_cast<double>(y[i] + 1);
        }
        std::vector<std::string> names;
        for (std::size_t k = 0; k < K; ++k) names.push_back("u" + std::to_string(k));
        QdaOptions o;
        o.ridge = 1e-3;
        const auto m = train_qda({X, y, names}, o);
        for (std::size_t i = 0; i < X.rows(); i += 5) {
          const auto got = m->predict_proba(X.row(i));
          const auto expect = test::qda_oracle(X, y, K, o.ridge, X.row(i));
          for (std::size_t k = 0; k < K; ++k) {
            CAPTURE(d);
            CAPTURE(K);
            CHECK(std::abs(got[k] - expect[k]) < 1e-9);
          }
        }
      }
    }
  }

  TEST_CASE("qda needs two rows per class") {
    Matrix X;
    X.append_row(std::vector<double>{0.0});
    X.append_row(std::vector<double>{1.0});
    X.append_row(std::vector<double>{2.0});
    const std::vector<std::size_t> y{0, 0, 1};
    CHECK_THROWS_WITH_AS(train_qda({X, y, kTwo}), doctest::Contains("'b'"), FitError);
  }

  TEST_CASE("forest probabilities average the leaf distributions") {
    // stump on feature 0 at 0.5, and a stump on feature 1 at 2.0
    DecisionTree t1({{0, 0.5, 1, 2, 0}, {-1, 0, -1, -1, 0}, {-1, 0, -1, -1, 3}},
                    {0.0, 0.0, 1.0, 1.0, 0.0, 0.0}, 3);
    DecisionTree t2({{1, 2.0, 1, 2, 0}, {-1, 0, -1, -1, 0}, {-1, 0, -1, -1, 3}},
                    {0.5, 0.5, 0.0, 0.0, 0.0, 1.0}, 3);
    ForestModel f(ModelKind::RandomForest, kThree, 2, 0, {t1, t2});
    const std::vector<std::vector<double>> xs{{0, 0}, {1, 0}, {0, 3}, {1, 3}, {0.5, 2.0}};
    const std::vector<std::vector<double>> expect{
        {0.25, 0.25, 0.5}, {0.75, 0.25, 0.0}, {0.0, 0.0, 1.0}, {0.5, 0.0, 0.5}, {0.25, 0.25, 0.5}};
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const auto p = f.predict_proba(xs[i]);
      for (std::size_t k = 0; k < 3; ++k) CHECK(p[k] == doctest::Approx(expect[i][k]));
    }
  }

  TEST_CASE("forests are deterministic for a seed") {
    std::vector<std::size_t> y;
    const Matrix X = test::gaussian_blobs(20, 3, 4, 1.0, 4, y);
    ForestOptions o = random_forest_defaults();
    o.n_trees = 10;
    const auto a = train_random_forest({X, y, kThree}, 5, o);
    const auto b = train_random_forest({X, y, kThree}, 5, o);
    const auto c = train_random_forest({X, y, kThree}, 6, o);
    CHECK(a->trees() == b->trees());
    CHECK(a->trees() != c->trees());
    o.jobs = 3;
    CHECK(train_random_forest({X, y, kThree}, 5, o)->trees() == a->trees());
    ForestOptions e = extra_trees_defaults();
    e.n_trees = 10;
    CHECK(train_extra_trees({X, y, kThree}, 2, e)->trees() ==
          train_extra_trees({X, y, kThree}, 2, e)->trees());
  }

  TEST_CASE("a single unbootstrapped tree separates two points") {
    Matrix X;
    X.append_row(std::vector<double>{0.0, 1.0});
    X.append_row(std::vector<double>{1.0, 1.0});
    const std::vector<std::size_t> y{0, 1};
    for (SplitRule rule : {SplitRule::Best, SplitRule::Random}) {
      ForestOptions o;
      o.n_trees = 1;
      o.bootstrap = false;
      o.rule = rule;
      const auto f = train_forest(ModelKind::RandomForest, {X, y, kTwo}, o, 1);
      CHECK(f->trees()[0].leaf_count() == 2);
      CHECK(f->predict_proba(X.row(0))[0] == 1.0);
      CHECK(f->predict_proba(X.row(1))[1] == 1.0);
    }
  }

  TEST_CASE("constant features give a single leaf with class frequencies") {
    Matrix X(4, 2, 3.0);
    const std::vector<std::size_t> y{0, 1, 1, 1};
    CounterRng rng(1);
    ClassificationTreeOptions o;
    const auto t = grow_classification_tree(transpose(X), y, 2, {0, 1, 2, 3}, o, rng);
    REQUIRE(t.nodes().size() == 1);
    const auto v = t.leaf_value(X.row(0));
    CHECK(v[0] == 0.25);
    CHECK(v[1] == 0.75);
  }

  TEST_CASE("extra trees classify separated blobs") {
    std::vector<std::size_t> ytr, yte;
    const Matrix Xtr = test::gaussian_blobs(50, 2, 2, 6.0, 1, ytr);
    const Matrix Xte = test::gaussian_blobs(50, 2, 2, 6.0, 2, yte);
    ForestOptions o = extra_trees_defaults();
    o.n_trees = 50;
    const auto m = train_extra_trees({Xtr, ytr, kTwo}, 0, o);
    CHECK(accuracy_on(*m, Xte, yte) >= 0.95);
  }

  TEST_CASE("gradient tree leaves are the scaled Newton step") {
    Matrix X;
    for (int i = 0; i < 10; ++i) X.append_row(std::vector<double>{static_cast<double>(i)});
    const Matrix Xt = transpose(X);
    std::vector<double> g(10), h(10, 0.25);
    for (int i = 0; i < 10; ++i) g[i] = i < 5 ? -1.0 : 1.0;
    GbmOptions o;
    o.max_leaves = 2;
    const auto t = grow_gradient_tree(Xt, presort_columns(Xt), g, h, o, 0.1);
    REQUIRE(t.leaf_count() == 2);
    CHECK(t.nodes()[0].threshold == 4.5);
    CHECK(t.leaf_value(X.row(0))[0] == doctest::Approx(0.4));
    CHECK(t.leaf_value(X.row(9))[0] == doctest::Approx(-0.4));
  }

  TEST_CASE("gbm starts uniform and never increases training loss") {
    std::vector<std::size_t> y;
    const Matrix X = test::gaussian_blobs(15, 3, 3, 1.0, 6, y);
    GbmOptions o;
    o.n_rounds = 0;
    const auto m0 = train_gbm({X, y, kThree}, o);
    const auto p0 = m0->predict_proba(X.row(0));
    for (double p : p0) CHECK(p == doctest::Approx(1.0 / 3.0));
    CHECK(m0->training_loss()[0] == doctest::Approx(std::log(3.0)));

    o.n_rounds = 30;
    const auto m = train_gbm({X, y, kThree}, o);
    const auto& loss = m->training_loss();
    REQUIRE(loss.size() == 31);
    for (std::size_t r = 1; r < loss.size(); ++r) CHECK(loss[r] <= loss[r - 1] + 1e-9);
    CHECK(loss.back() < loss.front());
  }

  TEST_CASE("gbm fits six separable points") {
    Matrix X;
    for (double v : {0.0, 1.0, 2.0, 10.0, 11.0, 12.0}) X.append_row(std::vector<double>{v});
    const std::vector<std::size_t> y{0, 0, 0, 1, 1, 1};
    GbmOptions o;
    o.n_rounds = 20;
    o.min_samples_leaf = 1;
    const auto m = train_gbm({X, y, kTwo}, o);
    CHECK(accuracy_on(*m, X, y) == 1.0);
  }

  TEST_CASE("softmax keeps the ranking and normalizes") {
    std::vector<double> s{1.0, 3.0, 2.0};
    std::vector<double> big{10.0, 30.0, 20.0};
    softmax(s);
    softmax(big);
    CHECK(s[0] + s[1] + s[2] == doctest::Approx(1.0));
    CHECK(argmax(s) == 1);
    CHECK(argmax(big) == 1);
    std::vector<double> huge{1000.0, 1001.0};
    softmax(huge);
    CHECK(std::isfinite(huge[0]));
    CHECK(huge[1] == doctest::Approx(1.0 / (1.0 + std::exp(-1.0))));
    CHECK(argmax(std::vector<double>{2.0, 2.0, 1.0}) == 0);
  }

  TEST_CASE("ensemble averages member probabilities") {
    const ModelPtr a = std::make_shared<FixedModel>(kTwo, std::vector<double>{0.6, 0.4});
    const ModelPtr b = std::make_shared<FixedModel>(kTwo, std::vector<double>{0.2, 0.8});
    EnsembleModel e({a, b});
    const auto p = e.predict_proba(std::vector<double>{0.0});
    CHECK(p[0] == doctest::Approx(0.4));
    CHECK(p[1] == doctest::Approx(0.6));
    Matrix X(1, 1);
    CHECK(e.predict(X)[0] == 1);
    const std::vector<ModelPtr> both{a, b};
    CHECK(ensemble_soft_vote(both, std::vector<double>{0.0})[1] == doctest::Approx(0.6));

    const ModelPtr other = std::make_shared<FixedModel>(std::vector<std::string>{"a", "c"},
                                                        std::vector<double>{0.5, 0.5});
    CHECK_THROWS_AS(EnsembleModel({a, other}), ArgumentError);
    CHECK_THROWS_AS(EnsembleModel(std::vector<ModelPtr>{}), ArgumentError);
    CHECK_THROWS_AS(EnsembleModel({a, nullptr}), ArgumentError);
  }

  TEST_CASE("every model kind yields row-stochastic output and round-trips") {
    std::vector<std::size_t> y;
    const Matrix X = test::gaussian_blobs(10, 3, 3, 2.0, 9, y);
    ModelOptions o;
    o.random_forest.n_trees = 5;
    o.extra_trees.n_trees = 5;
    o.gbm.n_rounds = 5;
    const auto dir = test::temp_dir("models");
    for (ModelKind kind : {ModelKind::LogisticRegression, ModelKind::Qda, ModelKind::RandomForest,
                           ModelKind::ExtraTrees, ModelKind::Gbm, ModelKind::Ensemble}) {
      CAPTURE(to_string(kind));
      const auto m = train_model(kind, {X, y, kThree}, o, 4);
      CHECK(m->kind() == kind);
      const Matrix P = m->predict_proba(X);
      for (std::size_t i = 0; i < P.rows(); ++i) {
        double s = 0;
        for (double v : P.row(i)) {
          CHECK(v >= 0.0);
          s += v;
        }
        CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
      }
      const auto j = model_to_json(*m);
      const auto back = model_from_json(j);
      CHECK(model_to_json(*back).dump() == j.dump());
      CHECK(back->predict_proba(X) == P);
      const auto path = dir / (std::string(to_string(kind)) + ".json");
      save_model(*m, path);
      CHECK(load_model(path)->predict_proba(X) == P);
      CHECK_THROWS_AS(m->predict_proba(std::vector<double>{1.0}), ArgumentError);
      CHECK(parse_model_kind(to_string(kind)) == kind);
    }
  }

  TEST_CASE("model format checks") {
    std::vector<std::size_t> y;
    const Matrix X = test::gaussian_blobs(5, 2, 2, 2.0, 1, y);
    auto j = model_to_json(*train_qda({X, y, kTwo}));
    j["format_version"] = kModelFormatVersion + 1;
    CHECK_THROWS_AS(model_from_json(j), ArgumentError);
    j["format"] = "other";
    CHECK_THROWS_AS(model_from_json(j), ArgumentError);
    const auto dir = test::temp_dir("bad_model");
    write_file_atomic(dir / "m.json", "{not json");
    CHECK_THROWS_AS(load_model(dir / "m.json"), FormatError);
    CHECK_THROWS_AS(parse_model_kind("svm"), ArgumentError);
  }

  TEST_CASE("training data validation") {
    Matrix X(3, 1);
    const std::vector<std::size_t> bad{0, 1, 5};
    CHECK_THROWS_AS(train_logistic_ovr({X, bad, kTwo}), ArgumentError);
    const std::vector<std::string> one{"a"};
    const std::vector<std::size_t> zeros{0, 0, 0};
    CHECK_THROWS_AS(train_gbm({X, zeros, one}), ArgumentError);
    X(0, 0) = std::nan("");
    const std::vector<std::size_t> y{0, 1, 1};
    CHECK_THROWS_AS(train_extra_trees({X, y, kTwo}, 0), ArgumentError);
  }
}
