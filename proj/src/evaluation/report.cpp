#include "vrid/evaluation/report.hpp"

#include <algorithm>

#include "vrid/util/files.hpp"
#include "vrid/util/format.hpp"

namespace vrid::evaluation {
namespace {

using classifiers::to_string;
using features::to_string;

std::string num(double v) {
  std::string s;
  append_fixed(s, v, 6);
  return s;
}

nlohmann::json confusion_json(const ConfusionMatrix& c) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t t = 0; t < c.n_labels(); ++t) {
    std::vector<std::size_t> row;
    for (std::size_t p = 0; p < c.n_labels(); ++p) row.push_back(c(t, p));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::string cell_key(const CellResult& cell) {
  std::string key = cell.game_id + "__" + std::string(to_string(cell.feature_set)) + "__" +
                    std::string(to_string(cell.model));
  if (cell.test_game_id != cell.game_id) key += "__to__" + cell.test_game_id;
  return key;
}

nlohmann::json cell_to_json(const CellResult& cell) {
  nlohmann::json j;
  j["game_id"] = cell.game_id;
  j["test_game_id"] = cell.test_game_id;
  j["feature_set"] = std::string(to_string(cell.feature_set));
  j["model"] = std::string(to_string(cell.model));
  j["seed"] = cell.seed;
  j["labels"] = cell.labels;
  j["n_train_windows"] = cell.n_train;
  j["n_test_windows"] = cell.n_test;
  j["accuracy"] = cell.accuracy;
  j["macro_f1"] = cell.macro_f1;
  std::vector<double> precision, recall;
  for (std::size_t k = 0; k < cell.confusion.n_labels(); ++k) {
    precision.push_back(cell.confusion.precision(k));
    recall.push_back(cell.confusion.recall(k));
  }
  j["precision"] = precision;
  j["recall"] = recall;
  j["confusion"] = confusion_json(cell.confusion);
  j["voting"] = nlohmann::json::array();
  for (const auto& v : cell.voting) j["voting"].push_back({{"k", v.k}, {"accuracy", v.accuracy}});
  return j;
}

nlohmann::json report_to_json(const EvaluationReport& report) {
  nlohmann::json j;
  j["metadata"] = report.metadata;
  j["cells"] = nlohmann::json::array();
  for (const auto& c : report.cells) j["cells"].push_back(cell_to_json(c));
  j["subsets"] = nlohmann::json::array();
  for (const auto& s : report.subsets) {
    nlohmann::json points = nlohmann::json::array();
    for (const auto& p : s.points) {
      nlohmann::json groups = nlohmann::json::array();
      for (const auto& g : p.groups)
        groups.push_back({{"users", g.users}, {"accuracy", g.accuracy}});
      points.push_back({{"size", p.size}, {"mean_accuracy", p.mean_accuracy}, {"groups", groups}});
    }
    j["subsets"].push_back({{"game_id", s.game_id},
                            {"feature_set", std::string(to_string(s.feature_set))},
                            {"model", std::string(to_string(s.model))},
                            {"points", points}});
  }
  j["cross_game"] = nlohmann::json::array();
  for (const auto& c : report.cross_game) j["cross_game"].push_back(cell_to_json(c));
  j["game_recognition"] = nlohmann::json::array();
  for (const auto& c : report.game_recognition) j["game_recognition"].push_back(cell_to_json(c));
  j["failures"] = nlohmann::json::array();
  for (const auto& f : report.failures) {
    j["failures"].push_back({{"cell", f.cell}, {"error", f.error}});
  }
  return j;
}

std::string accuracy_table_csv(const EvaluationReport& report) {
  std::vector<std::pair<std::string, classifiers::ModelKind>> rows;
  for (const auto& c : report.cells) {
    const std::pair key{c.game_id, c.model};
    if (std::find(rows.begin(), rows.end(), key) == rows.end()) rows.push_back(key);
  }
  std::string out = "game_id,model";
  for (auto fs : features::kAllFeatureSets) {
    out += ',' + std::string(to_string(fs)) + ".accuracy";
    out += ',' + std::string(to_string(fs)) + ".macro_f1";
  }
  out += '\n';
  for (const auto& [game, model] : rows) {
    out += game + ',' + std::string(to_string(model));
    for (auto fs : features::kAllFeatureSets) {
      const auto it = std::find_if(report.cells.begin(), report.cells.end(), [&](const auto& c) {
        return c.game_id == game && c.model == model && c.feature_set == fs;
      });
      if (it == report.cells.end()) {
        out += ",,";
      } else {
        out += ',' + num(it->accuracy) + ',' + num(it->macro_f1);
      }
    }
    out += '\n';
  }
  return out;
}

std::string confusion_csv(const CellResult& cell) {
  std::string out = "true\\predicted";
  for (const auto& l : cell.labels) out += ',' + l;
  out += '\n';
  for (std::size_t t = 0; t < cell.confusion.n_labels(); ++t) {
    out += cell.labels[t];
    for (std::size_t p = 0; p < cell.confusion.n_labels(); ++p) {
      out += ',' + std::to_string(cell.confusion(t, p));
    }
    out += '\n';
  }
  return out;
}

std::string voting_curve_csv(const EvaluationReport& report) {
  std::string out = "game_id,feature_set,model,k,accuracy\n";
  for (const auto& c : report.cells) {
    for (const auto& v : c.voting) {
      out += c.game_id + ',' + std::string(to_string(c.feature_set)) + ',' +
             std::string(to_string(c.model)) + ',' + std::to_string(v.k) + ',' + num(v.accuracy) +
             '\n';
    }
  }
  return out;
}

std::string subset_curve_csv(const EvaluationReport& report) {
  std::string out = "game_id,feature_set,model,size,groups,mean_accuracy\n";
  for (const auto& s : report.subsets) {
    for (const auto& p : s.points) {
      out += s.game_id + ',' + std::string(to_string(s.feature_set)) + ',' +
             std::string(to_string(s.model)) + ',' + std::to_string(p.size) + ',' +
             std::to_string(p.groups.size()) + ',' + num(p.mean_accuracy) + '\n';
    }
  }
  return out;
}

std::string cross_game_csv(const EvaluationReport& report) {
  std::string out = "train_game,test_game,feature_set,model,accuracy,macro_f1\n";
  for (const auto& c : report.cross_game) {
    out += c.game_id + ',' + c.test_game_id + ',' + std::string(to_string(c.feature_set)) + ',' +
           std::string(to_string(c.model)) + ',' + num(c.accuracy) + ',' + num(c.macro_f1) + '\n';
  }
  return out;
}

void write_report(const EvaluationReport& report, const std::filesystem::path& out_dir) {
  write_file_atomic(out_dir / "report.json", report_to_json(report).dump(2) + "\n");
  write_file_atomic(out_dir / "accuracy_table.csv", accuracy_table_csv(report));
  write_file_atomic(out_dir / "voting_curve.csv", voting_curve_csv(report));
  write_file_atomic(out_dir / "subset_curve.csv", subset_curve_csv(report));
  write_file_atomic(out_dir / "cross_game.csv", cross_game_csv(report));
  for (const auto* list : {&report.cells, &report.cross_game, &report.game_recognition}) {
    for (const auto& c : *list) {
      write_file_atomic(out_dir / "confusion" / (cell_key(c) + ".csv"), confusion_csv(c));
    }
  }
}

}  // namespace vrid::evaluation
