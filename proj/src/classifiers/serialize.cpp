#include "vrid/classifiers/serialize.hpp"

#include "vrid/classifiers/ensemble.hpp"
#include "vrid/classifiers/forest.hpp"
#include "vrid/classifiers/gbm.hpp"
#include "vrid/classifiers/logistic.hpp"
#include "vrid/classifiers/qda.hpp"
#include "vrid/error.hpp"
#include "vrid/util/files.hpp"

namespace vrid::classifiers {

nlohmann::json model_to_json(const Model& model) {
  return {{"format", "vrid-model"},
          {"format_version", kModelFormatVersion},
          {"kind", std::string(to_string(model.kind()))},
          {"labels", model.labels()},
          {"n_features", model.n_features()},
          {"seed", model.seed()},
          {"parameters", model.parameters()}};
}

ModelPtr model_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object() || j.value("format", std::string()) != "vrid-model") {
      throw ArgumentError("not a vrid model document");
    }
    const int version = j.at("format_version").get<int>();
    if (version != kModelFormatVersion) {
      throw ArgumentError("unsupported model format_version " + std::to_string(version) +
                          " (expected " + std::to_string(kModelFormatVersion) + ")");
    }
    const ModelKind kind = parse_model_kind(j.at("kind").get<std::string>());
    auto labels = j.at("labels").get<std::vector<std::string>>();
    const auto n_features = j.at("n_features").get<std::size_t>();
    const auto seed = j.at("seed").get<std::uint64_t>();
    const auto& p = j.at("parameters");
    ModelPtr model;
    switch (kind) {
      case ModelKind::LogisticRegression:
        model = LogisticModel::from_parameters(std::move(labels), n_features, seed, p);
        break;
      case ModelKind::Qda:
        model = QdaModel::from_parameters(std::move(labels), n_features, seed, p);
        break;
      case ModelKind::RandomForest:
      case ModelKind::ExtraTrees:
        model = ForestModel::from_parameters(kind, std::move(labels), n_features, seed, p);
        break;
      case ModelKind::Gbm:
        model = GbmModel::from_parameters(std::move(labels), n_features, seed, p);
        break;
      case ModelKind::Ensemble: {
        std::vector<ModelPtr> members;
        for (const auto& m : p.at("members")) members.push_back(model_from_json(m));
        model = std::make_shared<EnsembleModel>(std::move(members), seed);
        break;
      }
    }
    if (model->labels() != j.at("labels").get<std::vector<std::string>>() ||
        model->n_features() != n_features) {
      throw ArgumentError("model parameters disagree with the envelope");
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("malformed model document: ") + e.what());
  }
}

void save_model(const Model& model, const std::filesystem::path& path) {
  write_file_atomic(path, model_to_json(model).dump() + "\n");
}

ModelPtr load_model(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path.string(), 0, std::string("invalid JSON: ") + e.what());
  }
  try {
    return model_from_json(j);
  } catch (const ArgumentError& e) {
    throw FormatError(path.string(), 0, e.what());
  }
}

}  // namespace vrid::classifiers
