#include "mofs/config.hpp"

#include <cmath>
#include <set>

#include "json.hpp"
#include "mofs/errors.hpp"

namespace mofs {

namespace {

using ordered_json = nlohmann::ordered_json;

const std::set<std::string> kKnownKeys = {
    "population_size", "clone_budget",   "n_b",      "n_s",   "n_p",
    "termination_mode", "max_generations", "smoler_weights", "smoler_N",
    "cv_folds",        "gamma",          "ridge",    "seed"};

int require_int(const ordered_json& v, const std::string& key) {
  if (!v.is_number_integer() && !v.is_number_unsigned())
    throw ConfigError("config key '" + key + "' must be an integer");
  return v.get<int>();
}

double require_number(const ordered_json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
  return v.get<double>();
}

}  // namespace

void Config::validate() const {
  if (population_size < 2) throw ConfigError("population_size must be >= 2");
  if (resolved_clone_budget() < population_size)
    throw ConfigError("clone_budget must be >= population_size");
  if (n_b < 2) throw ConfigError("n_b must be >= 2");
  if (n_s < 1) throw ConfigError("n_s must be >= 1");
  if (n_p < 0) throw ConfigError("n_p must be >= 0");
  if (termination_mode != "metc" && termination_mode != "etc")
    throw ConfigError("termination_mode must be 'metc' or 'etc'");
  if (max_generations < 0) throw ConfigError("max_generations must be >= 0");
  double weight_sum = 0.0;
  for (double w : smoler_weights) {
    if (w < 0.0 || w > 1.0) throw ConfigError("smoler_weights entries must lie in [0, 1]");
    weight_sum += w;
  }
  if (std::abs(weight_sum - 1.0) > 1e-9)
    throw ConfigError("smoler_weights must sum to 1");
  if (smoler_n < 2) throw ConfigError("smoler_N must be >= 2");
  if (cv_folds < 2) throw ConfigError("cv_folds must be >= 2");
  if (gamma < 0.0) throw ConfigError("gamma must be >= 0 (0 selects the default)");
  if (ridge <= 0.0) throw ConfigError("ridge must be > 0");
}

Config config_from_json_text(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  for (const auto& [key, value] : doc.items())
    if (!kKnownKeys.count(key)) throw ConfigError("unknown config key '" + key + "'");

  Config cfg;
  if (doc.contains("population_size"))
    cfg.population_size = require_int(doc["population_size"], "population_size");
  if (doc.contains("clone_budget"))
    cfg.clone_budget = require_int(doc["clone_budget"], "clone_budget");
  if (doc.contains("n_b")) cfg.n_b = require_int(doc["n_b"], "n_b");
  if (doc.contains("n_s")) cfg.n_s = require_int(doc["n_s"], "n_s");
  if (doc.contains("n_p")) cfg.n_p = require_int(doc["n_p"], "n_p");
  if (doc.contains("termination_mode")) {
    if (!doc["termination_mode"].is_string())
      throw ConfigError("termination_mode must be a string");
    cfg.termination_mode = doc["termination_mode"].get<std::string>();
  }
  if (doc.contains("max_generations"))
    cfg.max_generations = require_int(doc["max_generations"], "max_generations");
  if (doc.contains("smoler_weights")) {
    const auto& w = doc["smoler_weights"];
    if (!w.is_array() || w.size() != 4)
      throw ConfigError("smoler_weights must be an array of 4 numbers");
    for (std::size_t i = 0; i < 4; ++i)
      cfg.smoler_weights[i] = require_number(w[i], "smoler_weights");
  }
  if (doc.contains("smoler_N")) cfg.smoler_n = require_int(doc["smoler_N"], "smoler_N");
  if (doc.contains("cv_folds")) cfg.cv_folds = require_int(doc["cv_folds"], "cv_folds");
  if (doc.contains("gamma")) cfg.gamma = require_number(doc["gamma"], "gamma");
  if (doc.contains("ridge")) cfg.ridge = require_number(doc["ridge"], "ridge");
  if (doc.contains("seed")) {
    const auto& s = doc["seed"];
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0))
      throw ConfigError("seed must be a nonnegative integer");
    cfg.seed = s.get<std::uint64_t>();
  }
  cfg.validate();
  return cfg;
}

std::string config_to_json_text(const Config& cfg) {
  ordered_json doc;
  doc["population_size"] = cfg.population_size;
  doc["clone_budget"] = cfg.resolved_clone_budget();
  doc["n_b"] = cfg.n_b;
  doc["n_s"] = cfg.n_s;
  doc["n_p"] = cfg.n_p;
  doc["termination_mode"] = cfg.termination_mode;
  doc["max_generations"] = cfg.max_generations;
  doc["smoler_weights"] = cfg.smoler_weights;
  doc["smoler_N"] = cfg.smoler_n;
  doc["cv_folds"] = cfg.cv_folds;
  doc["gamma"] = cfg.gamma;
  doc["ridge"] = cfg.ridge;
  doc["seed"] = cfg.seed;
  return doc.dump();
}

}  // namespace mofs
