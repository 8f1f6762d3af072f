#include "mofs/pipeline.hpp"

#include <fstream>
#include <numeric>

#include "json.hpp"
#include "mofs/errors.hpp"

namespace mofs {

namespace {

using ordered_json = nlohmann::ordered_json;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex16(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

std::string run_id_for(const Config& cfg) {
  return "mofs-" + hex16(fnv1a(config_to_json_text(cfg)));
}

ordered_json fitness_json(const Fitness& f) {
  ordered_json m;
  m["sen"] = f.sensitivity;
  m["spe"] = f.specificity;
  m["auc"] = f.auc;
  m["acc"] = f.accuracy;
  return m;
}

Fitness fitness_from_json(const ordered_json& m) {
  Fitness f;
  f.sensitivity = m.at("sen").get<double>();
  f.specificity = m.at("spe").get<double>();
  f.auc = m.at("auc").get<double>();
  f.accuracy = m.at("acc").get<double>();
  return f;
}

std::vector<int> all_rows(const Dataset& data) {
  std::vector<int> rows(data.n_samples);
  std::iota(rows.begin(), rows.end(), 0);
  return rows;
}

}  // namespace

RunResult run_pipeline(const Dataset& data, const Dataset* test, const Config& cfg) {
  cfg.validate();
  if (test != nullptr) {
    if (test->n_features != data.n_features ||
        test->feature_names != data.feature_names)
      throw DataError("test dataset carries different feature columns");
  }

  const EvolveResult evolved = evolve(data, cfg);
  const Population& terminal = evolved.snapshots.back().population;

  RunResult result;
  result.config = cfg;
  result.config.clone_budget = cfg.resolved_clone_budget();  // report effective values
  result.generations_run = static_cast<int>(evolved.snapshots.size()) - 1;
  result.terminated_by = evolved.terminated_by_criterion ? "metc" : "cap";
  for (std::size_t i = 1; i < evolved.snapshots.size(); ++i)
    result.dissimilarity_trace.push_back(*evolved.snapshots[i].dissimilarity_to_prev);

  const auto fronts = nondominated_fronts(terminal.members);
  for (int idx : fronts.front()) result.pareto_front.push_back(terminal.members[idx]);

  Weights weights;
  weights.omega = cfg.smoler_weights;
  const SelectionResult selection = utility_select(result.pareto_front, weights,
                                                   cfg.smoler_n);
  const Solution& chosen = result.pareto_front[selection.index];
  result.selected.index = selection.index;
  result.selected.mask = chosen.mask;
  result.selected.fitness = chosen.fitness;
  result.selected.utility = selection.utility;
  result.selected.feature_indices = chosen.mask.selected_indices();

  const double gamma = resolve_gamma(cfg.gamma, chosen.mask.count());
  if (test != nullptr) {
    const ClassifierModel model = fit_model(data, all_rows(data), chosen.mask, gamma,
                                            cfg.ridge);
    const std::vector<double> scores = predict_scores(model, *test, all_rows(*test));
    result.confusion = confusion(scores, test->y, 0.0);
  } else {
    const FoldPlan folds = pipeline_folds(data, cfg);
    const CvScores cv = cross_val_scores(chosen.mask, data, folds, gamma, cfg.ridge);
    result.confusion = confusion(cv.scores, cv.labels, 0.0);
  }
  return result;
}

std::string report_text(const RunResult& result) {
  ordered_json doc;
  doc["run_id"] = run_id_for(result.config);
  doc["seed"] = result.config.seed;
  doc["config"] = ordered_json::parse(config_to_json_text(result.config));
  doc["generations_run"] = result.generations_run;
  doc["terminated_by"] = result.terminated_by;
  doc["dissimilarity_trace"] = result.dissimilarity_trace;

  ordered_json front = ordered_json::array();
  for (const auto& sol : result.pareto_front) {
    ordered_json entry;
    entry["mask"] = sol.mask.to_string();
    entry["sen"] = sol.fitness.sensitivity;
    entry["spe"] = sol.fitness.specificity;
    entry["auc"] = sol.fitness.auc;
    entry["acc"] = sol.fitness.accuracy;
    front.push_back(std::move(entry));
  }
  doc["pareto_front"] = std::move(front);

  ordered_json selected;
  selected["index"] = result.selected.index;
  selected["utility"] = result.selected.utility;
  selected["feature_indices"] = result.selected.feature_indices;
  selected["metrics"] = fitness_json(result.selected.fitness);
  doc["selected"] = std::move(selected);

  ordered_json cm;
  cm["tp"] = result.confusion.tp;
  cm["fp"] = result.confusion.fp;
  cm["tn"] = result.confusion.tn;
  cm["fn"] = result.confusion.fn;
  doc["confusion"] = std::move(cm);
  return doc.dump(2) + "\n";
}

void emit_report(const RunResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << report_text(result);
  if (!out) throw DataError("write failed for '" + path + "'");
}

RunResult run_result_from_report(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("report is not valid JSON: ") + e.what());
  }
  RunResult result;
  result.config = config_from_json_text(doc.at("config").dump());
  result.generations_run = doc.at("generations_run").get<int>();
  result.terminated_by = doc.at("terminated_by").get<std::string>();
  result.dissimilarity_trace = doc.at("dissimilarity_trace").get<std::vector<double>>();
  for (const auto& entry : doc.at("pareto_front")) {
    Solution sol;
    sol.mask = FeatureMask::from_string(entry.at("mask").get<std::string>());
    sol.fitness = fitness_from_json(entry);
    sol.evaluated = true;
    result.pareto_front.push_back(std::move(sol));
  }
  const auto& selected = doc.at("selected");
  result.selected.index = selected.at("index").get<std::size_t>();
  result.selected.utility = selected.at("utility").get<double>();
  result.selected.feature_indices = selected.at("feature_indices").get<std::vector<int>>();
  result.selected.fitness = fitness_from_json(selected.at("metrics"));
  result.selected.mask = result.pareto_front.at(result.selected.index).mask;
  const auto& cm = doc.at("confusion");
  result.confusion.tp = cm.at("tp").get<std::int64_t>();
  result.confusion.fp = cm.at("fp").get<std::int64_t>();
  result.confusion.tn = cm.at("tn").get<std::int64_t>();
  result.confusion.fn = cm.at("fn").get<std::int64_t>();
  return result;
}

std::vector<SweepRow> sweep(const Dataset& data, const Config& cfg,
                            const std::string& param) {
  cfg.validate();
  if (param != "weights" && param != "refpoints")
    throw ConfigError("sweep param must be 'weights' or 'refpoints'");

  const EvolveResult evolved = evolve(data, cfg);
  const Population& terminal = evolved.snapshots.back().population;
  const auto fronts = nondominated_fronts(terminal.members);
  std::vector<Solution> pareto;
  for (int idx : fronts.front()) pareto.push_back(terminal.members[idx]);

  std::vector<SweepRow> rows;
  auto add_row = [&](const std::array<double, 4>& omega, int n_ref) {
    Weights w;
    w.omega = omega;
    const SelectionResult sel = utility_select(pareto, w, n_ref);
    SweepRow row;
    row.omega = omega;
    row.n_ref = n_ref;
    row.selected_index = sel.index;
    row.utility = sel.utility;
    row.fitness = pareto[sel.index].fitness;
    row.feature_indices = pareto[sel.index].mask.selected_indices();
    rows.push_back(std::move(row));
  };

  if (param == "weights") {
    for (int step = 0; step < 4; ++step) {
      const double w1 = 0.25 + 0.05 * step;
      const double w3 = (1.0 - 2.0 * w1) / 2.0;
      add_row({w1, w1, w3, w3}, cfg.smoler_n);
    }
  } else {
    for (int n_ref = 5; n_ref <= 11; ++n_ref) add_row(cfg.smoler_weights, n_ref);
  }
  return rows;
}

std::string sweep_report_text(const Config& cfg, const std::string& param,
                              const std::vector<SweepRow>& rows) {
  ordered_json doc;
  doc["run_id"] = run_id_for(cfg);
  doc["seed"] = cfg.seed;
  doc["param"] = param;
  doc["config"] = ordered_json::parse(config_to_json_text(cfg));
  ordered_json out_rows = ordered_json::array();
  for (const auto& row : rows) {
    ordered_json r;
    r["omega"] = row.omega;
    r["refpoints"] = row.n_ref;
    r["selected_index"] = row.selected_index;
    r["utility"] = row.utility;
    r["metrics"] = fitness_json(row.fitness);
    r["feature_indices"] = row.feature_indices;
    out_rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(out_rows);
  return doc.dump(2) + "\n";
}

}  // namespace mofs
