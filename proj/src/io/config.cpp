// Copyright 2026 The genesim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "genesim/io/config.hpp"

#include <map>
#include <set>
#include <utility>

#include <yaml-cpp/yaml.h>

#include "genesim/error.hpp"

namespace genesim::io {

namespace {

using nlohmann::json;

json scalar_to_json(const YAML::Node& node) {
  const std::string& text = node.Scalar();
  // Quoted scalars carry the "!" tag and stay strings.
  if (node.Tag() == "!") return text;
  if (text == "~" || text == "null" || text == "Null" || text == "NULL") return nullptr;
  if (text == "true" || text == "True" || text == "TRUE") return true;
  if (text == "false" || text == "False" || text == "FALSE") return false;
  if (const auto v = parse_number(text)) {
    if (text.find_first_of(".eE") == std::string::npos) {
      try {
        return std::stoll(text);
      } catch (const std::exception&) {
      }
    }
    return *v;
  }
  return text;
}

json node_to_json(const YAML::Node& node) {
  switch (node.Type()) {
    case YAML::NodeType::Null:
    case YAML::NodeType::Undefined:
      return nullptr;
    case YAML::NodeType::Scalar:
      return scalar_to_json(node);
    case YAML::NodeType::Sequence: {
      json arr = json::array();
      for (const auto& item : node) arr.push_back(node_to_json(item));
      return arr;
    }
    case YAML::NodeType::Map: {
      json obj = json::object();
      for (const auto& kv : node) obj[kv.first.as<std::string>()] = node_to_json(kv.second);
      return obj;
    }
  }
  return nullptr;
}

/// Collects schema issues while walking a document.
class Reader {
 public:
  std::vector<Issue> issues;

  void fail(const std::string& where, const std::string& what) { issues.push_back({where + ": " + what, {}, {}}); }

  void reject_unknown(const json& obj, const std::string& where, std::set<std::string> known) {
    for (const auto& [key, value] : obj.items()) {
      if (!known.contains(key)) fail(where, "unknown key '" + key + "'");
    }
  }

  std::optional<std::string> string(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key) || obj[key].is_null()) return std::nullopt;
    const auto& v = obj[key];
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number()) return v.dump();
    fail(where + "." + key, "expected a string");
    return std::nullopt;
  }

  std::optional<double> number(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key) || obj[key].is_null()) return std::nullopt;
    const auto& v = obj[key];
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
      if (const auto parsed = parse_number(v.get<std::string>())) return parsed;
    }
    fail(where + "." + key, "expected a number");
    return std::nullopt;
  }

  std::optional<std::size_t> count(const json& obj, const std::string& key, const std::string& where) {
    const auto v = number(obj, key, where);
    if (!v) return std::nullopt;
    if (*v < 0 || *v != static_cast<double>(static_cast<std::size_t>(*v))) {
      fail(where + "." + key, "expected a non-negative integer");
      return std::nullopt;
    }
    return static_cast<std::size_t>(*v);
  }

  /// A pair of weights given as [a, b] or {first_name: a, second_name: b}.
  std::optional<std::pair<double, double>> weights(const json& obj, const std::string& key, const std::string& where,
                                                   const char* first_name, const char* second_name) {
    if (!obj.contains(key) || obj[key].is_null()) return std::nullopt;
    const auto& v = obj[key];
    const std::string at = where + "." + key;
    if (v.is_array()) {
      if (v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        fail(at, "expected two numbers");
        return std::nullopt;
      }
      return std::pair{v[0].get<double>(), v[1].get<double>()};
    }
    if (v.is_object()) {
      reject_unknown(v, at, {first_name, second_name});
      const auto a = number(v, first_name, at);
      const auto b = number(v, second_name, at);
      return std::pair{a.value_or(0.0), b.value_or(0.0)};
    }
    fail(at, "expected a list or a map of weights");
    return std::nullopt;
  }
};

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_relative() && !base.empty() ? base / path : path;
}

}  // namespace

CsvOptions RunConfig::csv_options() const {
  CsvOptions opts;
  opts.row_name_column = row_name_column;
  for (const auto& c : columns) {
    if (c.kind == FitnessKind::overlap) opts.label_columns.insert(c.name);
  }
  return opts;
}

std::vector<FeatureSpec> RunConfig::feature_specs(const RawTable& table) const {
  std::vector<Issue> issues;
  std::map<std::string, const ColumnConfig*> by_name;
  for (const auto& c : columns) {
    if (!by_name.emplace(c.name, &c).second) issues.push_back({"column configured more than once", {}, c.name});
  }
  std::vector<FeatureSpec> specs;
  std::set<std::string> used;
  for (std::size_t j = 0; j < table.cols(); ++j) {
    const auto& name = table.column_names()[j];
    const auto it = by_name.find(name);
    if (it == by_name.end()) {
      issues.push_back({"data column has no fitness entry in the config", {}, name});
      continue;
    }
    used.insert(name);
    specs.push_back({j, it->second->kind, it->second->labels});
  }
  for (const auto& c : columns) {
    if (!used.contains(c.name) && table.find_column(c.name) == std::nullopt) {
      issues.push_back({"configured column not found in the data", {}, c.name});
    }
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return specs;
}

SimConfig RunConfig::simulation_config(const RawTable& table) const {
  SimConfig out = sim;
  if (sim.initial_gamma && static_cast<std::size_t>(sim.initial_gamma->size()) == columns.size()) {
    VectorXd reordered(static_cast<Index>(table.cols()));
    for (std::size_t k = 0; k < columns.size(); ++k) {
      const auto j = table.find_column(columns[k].name);
      if (!j) throw ValidationError(Issue{"configured column not found in the data", {}, columns[k].name});
      reordered(static_cast<Index>(*j)) = (*sim.initial_gamma)(static_cast<Index>(k));
    }
    out.initial_gamma = std::move(reordered);
  }
  return out;
}

nlohmann::json RunConfig::echo() const {
  json cols = json::array();
  for (const auto& c : columns) {
    json col = {{"name", c.name}, {"fitness", std::string(to_string(c.kind))}};
    if (c.kind == FitnessKind::overlap) col["labels"] = c.labels;
    cols.push_back(std::move(col));
  }
  json out = {
      {"columns", std::move(cols)},
      {"strategy",
       {{"mode", sim.mix.mode == MixMode::fixed ? "fixed" : "self_consistent"},
        {"gene_alphas", {{"dominant", sim.mix.dominant}, {"altruistic", sim.mix.altruistic}}},
        {"organism_alphas", {{"balanced", sim.mix.balanced}, {"selfish", sim.mix.selfish}}}}},
      {"epsilon", sim.epsilon},
      {"max_iterations", sim.max_iterations},
      {"clamp_policy", sim.clamp_policy == ClampPolicy::on ? "on" : "off"},
      {"gene_effect_scale", sim.gene_effect_scale == GeneEffectScale::mean ? "mean" : "per_equation"},
      {"selfish_normalization",
       sim.selfish_normalization == SelfishNormalization::organism_fitness ? "organism_fitness" : "per_equation"},
      {"row_name_column", row_name_column ? json(*row_name_column) : json(nullptr)},
  };
  if (sim.initial_gamma) {
    out["initial_gamma"] = std::vector<double>(sim.initial_gamma->data(),
                                               sim.initial_gamma->data() + sim.initial_gamma->size());
  } else {
    out["initial_gamma"] = "uniform";
  }
  return out;
}

RunConfig parse_run_config(const nlohmann::json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw ValidationError("config: expected a mapping at the top level");
  Reader rd;
  RunConfig cfg;
  rd.reject_unknown(doc, "config",
                    {"data", "row_name_column", "columns", "strategy", "initial_gamma", "epsilon", "max_iterations",
                     "outputs", "clamp_policy", "gene_effect_scale", "selfish_normalization", "workers"});

  if (const auto data = rd.string(doc, "data", "config")) cfg.data = resolve(base_dir, *data);
  cfg.row_name_column = rd.string(doc, "row_name_column", "config");

  if (!doc.contains("columns") || !doc["columns"].is_array() || doc["columns"].empty()) {
    rd.fail("config.columns", "expected a non-empty list of columns");
  } else {
    for (std::size_t k = 0; k < doc["columns"].size(); ++k) {
      const auto& c = doc["columns"][k];
      const std::string at = "config.columns[" + std::to_string(k) + "]";
      if (!c.is_object()) {
        rd.fail(at, "expected a mapping");
        continue;
      }
      rd.reject_unknown(c, at, {"name", "fitness", "labels"});
      ColumnConfig col;
      const auto name = rd.string(c, "name", at);
      if (!name || name->empty()) rd.fail(at, "missing column name");
      col.name = name.value_or("");
      const auto fitness = rd.string(c, "fitness", at);
      if (!fitness) {
        rd.fail(at, "missing fitness function");
      } else if (const auto kind = parse_fitness_kind(*fitness)) {
        col.kind = *kind;
      } else {
        rd.fail(at, "unknown fitness function '" + *fitness + "'");
      }
      if (c.contains("labels")) {
        if (!c["labels"].is_array()) {
          rd.fail(at + ".labels", "expected a list");
        } else {
          for (const auto& l : c["labels"]) col.labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
        }
      }
      if (col.kind == FitnessKind::overlap && col.labels.empty()) {
        rd.fail(at, "overlap fitness needs a non-empty labels list");
      }
      cfg.columns.push_back(std::move(col));
    }
  }

  if (doc.contains("strategy")) {
    const auto& s = doc["strategy"];
    if (!s.is_object()) {
      rd.fail("config.strategy", "expected a mapping");
    } else {
      rd.reject_unknown(s, "config.strategy", {"mode", "gene_alphas", "organism_alphas"});
      const auto mode = rd.string(s, "mode", "config.strategy").value_or("fixed");
      if (mode == "self_consistent") {
        cfg.sim.mix = StrategyMix::self_consistent();
      } else if (mode != "fixed") {
        rd.fail("config.strategy.mode", "expected 'fixed' or 'self_consistent'");
      }
      if (const auto g = rd.weights(s, "gene_alphas", "config.strategy", "dominant", "altruistic")) {
        cfg.sim.mix.dominant = g->first;
        cfg.sim.mix.altruistic = g->second;
      }
      if (const auto o = rd.weights(s, "organism_alphas", "config.strategy", "balanced", "selfish")) {
        cfg.sim.mix.balanced = o->first;
        cfg.sim.mix.selfish = o->second;
      }
    }
  }

  if (doc.contains("initial_gamma") && !doc["initial_gamma"].is_null()) {
    const auto& g = doc["initial_gamma"];
    if (g.is_string() && g.get<std::string>() == "uniform") {
      // default
    } else if (!g.is_array() || g.empty()) {
      rd.fail("config.initial_gamma", "expected a list of numbers or 'uniform'");
    } else {
      VectorXd gamma(static_cast<Index>(g.size()));
      bool ok = true;
      for (std::size_t k = 0; k < g.size(); ++k) {
        if (!g[k].is_number()) ok = false;
        gamma(static_cast<Index>(k)) = g[k].is_number() ? g[k].get<double>() : 0.0;
      }
      if (!ok) rd.fail("config.initial_gamma", "expected numbers");
      cfg.sim.initial_gamma = std::move(gamma);
    }
  }

  if (const auto eps = rd.number(doc, "epsilon", "config")) cfg.sim.epsilon = *eps;
  if (const auto it = rd.count(doc, "max_iterations", "config")) cfg.sim.max_iterations = *it;
  if (const auto w = rd.count(doc, "workers", "config")) cfg.sim.workers = static_cast<unsigned>(*w);
  if (const auto c = rd.string(doc, "clamp_policy", "config")) {
    if (*c == "on") cfg.sim.clamp_policy = ClampPolicy::on;
    else if (*c == "off") cfg.sim.clamp_policy = ClampPolicy::off;
    else rd.fail("config.clamp_policy", "expected 'on' or 'off'");
  }
  if (const auto s = rd.string(doc, "gene_effect_scale", "config")) {
    if (*s == "mean") cfg.sim.gene_effect_scale = GeneEffectScale::mean;
    else if (*s == "per_equation") cfg.sim.gene_effect_scale = GeneEffectScale::per_equation;
    else rd.fail("config.gene_effect_scale", "expected 'mean' or 'per_equation'");
  }
  if (const auto s = rd.string(doc, "selfish_normalization", "config")) {
    if (*s == "organism_fitness") cfg.sim.selfish_normalization = SelfishNormalization::organism_fitness;
    else if (*s == "per_equation") cfg.sim.selfish_normalization = SelfishNormalization::per_equation;
    else rd.fail("config.selfish_normalization", "expected 'organism_fitness' or 'per_equation'");
  }

  if (doc.contains("outputs") && !doc["outputs"].is_null()) {
    const auto& o = doc["outputs"];
    if (!o.is_object()) {
      rd.fail("config.outputs", "expected a mapping");
    } else {
      rd.reject_unknown(o, "config.outputs", {"trace", "summary"});
      if (const auto t = rd.string(o, "trace", "config.outputs")) cfg.trace_output = resolve(base_dir, *t);
      if (const auto s = rd.string(o, "summary", "config.outputs")) cfg.summary_output = resolve(base_dir, *s);
    }
  }

  if (rd.issues.empty()) {
    try {
      cfg.sim.validate(static_cast<Index>(cfg.columns.size()));
    } catch (const ValidationError& e) {
      rd.issues.insert(rd.issues.end(), e.issues().begin(), e.issues().end());
    }
  }
  if (!rd.issues.empty()) throw ValidationError(std::move(rd.issues));
  return cfg;
}

nlohmann::json yaml_to_json(std::string_view yaml_text) {
  try {
    return node_to_json(YAML::Load(std::string(yaml_text)));
  } catch (const YAML::Exception& e) {
    throw ValidationError(std::string("config: malformed YAML: ") + e.what());
  }
}

RunConfig load_run_config(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  json doc;
  if (path.extension() == ".json") {
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ValidationError(std::string("config: malformed JSON: ") + e.what());
    }
  } else {
    doc = yaml_to_json(text);
  }
  return parse_run_config(doc, path.parent_path());
}

}  // namespace genesim::io
