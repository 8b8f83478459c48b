#include "rmq/tree_io.hpp"

#include "rmq/error.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace rmq {

using nlohmann::json;

namespace {

constexpr double kSumTolerance = 1e-10;

std::string at(const std::string& base, std::size_t i) { return base + "/" + std::to_string(i); }

const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw SchemaError("expected an object", path);
  const auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(std::string("missing field '") + key + "'", path);
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw SchemaError("expected a number", path);
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw SchemaError("expected a finite number", path);
  return x;
}

std::vector<double> numbers(const json& v, const std::string& path) {
  if (!v.is_array()) throw SchemaError("expected an array", path);
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], at(path, i)));
  return out;
}

std::size_t count(const json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw SchemaError("expected a nonnegative integer", path);
  }
  return v.get<std::size_t>();
}

double sum(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s;
}

Level parse_level(const json& node, const std::string& path, std::size_t k,
                  std::size_t prev_size) {
  Level level;
  level.t = number(field(node, "t", path), path + "/t");

  const std::string grid_path = path + "/grid";
  std::vector<double> points = numbers(field(node, "grid", path), grid_path);
  if (points.empty()) throw SchemaError("grid is empty", grid_path);
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i] > points[i - 1])) {
      throw SchemaError("grid is not strictly increasing", at(grid_path, i));
    }
  }
  level.grid = Grid(std::move(points));

  const std::string weights_path = path + "/weights";
  level.weights = numbers(field(node, "weights", path), weights_path);
  if (level.weights.size() != level.grid.size()) {
    throw SchemaError("weights and grid differ in length", weights_path);
  }
  for (std::size_t i = 0; i < level.weights.size(); ++i) {
    if (level.weights[i] < 0.0) throw SchemaError("negative weight", at(weights_path, i));
  }
  const double total = sum(level.weights);
  if (std::abs(total - 1.0) > kSumTolerance) {
    std::ostringstream msg;
    msg << std::setprecision(17) << "weights of level " << k << " sum to " << total;
    throw SchemaError(msg.str(), weights_path);
  }

  const std::string tr_path = path + "/transition";
  const auto tr = node.find("transition");
  if (tr != node.end() && !tr->is_null()) {
    if (k == 0) throw SchemaError("level 0 has no transition", tr_path);
    if (!tr->is_array() || tr->size() != prev_size) {
      throw SchemaError("expected " + std::to_string(prev_size) + " rows", tr_path);
    }
    Matrix m(prev_size, level.grid.size());
    for (std::size_t i = 0; i < prev_size; ++i) {
      const std::string row_path = at(tr_path, i);
      const std::vector<double> row = numbers((*tr)[i], row_path);
      if (row.size() != level.grid.size()) {
        throw SchemaError("expected " + std::to_string(level.grid.size()) + " columns", row_path);
      }
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (row[j] < 0.0) throw SchemaError("negative probability", at(row_path, j));
        m(i, j) = row[j];
      }
      if (std::abs(sum(row) - 1.0) > kSumTolerance) {
        throw SchemaError("row is not stochastic", row_path);
      }
    }
    level.transition_from_prev = std::move(m);
  }

  const auto stats = node.find("stats");
  if (stats != node.end() && !stats->is_null()) {
    const std::string stats_path = path + "/stats";
    const json& it = field(*stats, "iterations", stats_path);
    if (!it.is_number_integer()) throw SchemaError("expected an integer", stats_path + "/iterations");
    level.stats.iterations = it.get<int>();
    level.stats.gradient_norm =
        number(field(*stats, "gradient_norm", stats_path), stats_path + "/gradient_norm");
    level.stats.distortion =
        number(field(*stats, "distortion", stats_path), stats_path + "/distortion");
  }
  return level;
}

}  // namespace

json tree_to_json(const QuantizationTree& tree) {
  json params = json::object();
  for (const auto& [key, value] : tree.model.params) params[key] = value;
  json levels = json::array();
  for (const Level& level : tree.levels) {
    json node;
    node["t"] = level.t;
    node["grid"] = level.grid.values();
    node["weights"] = level.weights;
    if (level.transition_from_prev) {
      json rows = json::array();
      const Matrix& m = *level.transition_from_prev;
      for (std::size_t i = 0; i < m.rows(); ++i) {
        const auto row = m.row(i);
        rows.push_back(std::vector<double>(row.begin(), row.end()));
      }
      node["transition"] = std::move(rows);
    } else {
      node["transition"] = nullptr;
    }
    node["stats"] = {{"iterations", level.stats.iterations},
                     {"gradient_norm", level.stats.gradient_norm},
                     {"distortion", level.stats.distortion}};
    levels.push_back(std::move(node));
  }
  return json{{"model", {{"name", tree.model.name}, {"params", std::move(params)}}},
              {"x0", tree.x0},
              {"T", tree.maturity},
              {"n", tree.steps},
              {"levels", std::move(levels)}};
}

QuantizationTree tree_from_json(const json& doc) {
  QuantizationTree tree;
  const json& model = field(doc, "model", "");
  const json& name = field(model, "name", "/model");
  if (!name.is_string()) throw SchemaError("expected a string", "/model/name");
  tree.model.name = name.get<std::string>();
  const json& params = field(model, "params", "/model");
  if (!params.is_object()) throw SchemaError("expected an object", "/model/params");
  for (const auto& [key, value] : params.items()) {
    tree.model.params[key] = number(value, "/model/params/" + key);
  }
  tree.x0 = number(field(doc, "x0", ""), "/x0");
  tree.maturity = number(field(doc, "T", ""), "/T");
  if (!(tree.maturity > 0.0)) throw SchemaError("T must be positive", "/T");
  tree.steps = count(field(doc, "n", ""), "/n");
  if (tree.steps == 0) throw SchemaError("n must be at least 1", "/n");

  const json& levels = field(doc, "levels", "");
  if (!levels.is_array()) throw SchemaError("expected an array", "/levels");
  if (levels.size() != tree.steps + 1) {
    throw SchemaError("expected n+1 = " + std::to_string(tree.steps + 1) + " levels", "/levels");
  }
  std::size_t prev_size = 0;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    tree.levels.push_back(parse_level(levels[k], at("/levels", k), k, prev_size));
    prev_size = tree.levels.back().grid.size();
  }
  return tree;
}

std::string serialize_tree(const QuantizationTree& tree, int indent) {
  return tree_to_json(tree).dump(indent);
}

QuantizationTree parse_tree(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what(), "");
  }
  return tree_from_json(doc);
}

void write_tree_file(const std::filesystem::path& path, const QuantizationTree& tree) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << serialize_tree(tree) << '\n';
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

QuantizationTree read_tree_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_tree(buffer.str());
}

void write_tree_csv(std::ostream& out, const QuantizationTree& tree) {
  out << "level,index,x,weight\n";
  const auto old = out.precision(std::numeric_limits<double>::max_digits10);
  for (std::size_t k = 0; k < tree.levels.size(); ++k) {
    const Level& level = tree.levels[k];
    for (std::size_t i = 0; i < level.grid.size(); ++i) {
      out << k << ',' << i << ',' << level.grid[i] << ',' << level.weights[i] << '\n';
    }
  }
  out.precision(old);
}

}  // namespace rmq
