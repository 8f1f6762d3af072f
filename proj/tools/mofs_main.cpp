#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mofs/baselines.hpp"
#include "mofs/config.hpp"
#include "mofs/errors.hpp"
#include "mofs/pipeline.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw mofs::ConfigError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw mofs::DataError("cannot write '" + path + "'");
  out << text;
  if (!out) throw mofs::DataError("write failed for '" + path + "'");
}

ordered_json metrics_json(const mofs::Fitness& f) {
  ordered_json m;
  m["sen"] = f.sensitivity;
  m["spe"] = f.specificity;
  m["auc"] = f.auc;
  m["acc"] = f.accuracy;
  return m;
}

ordered_json confusion_json(const mofs::ConfusionMatrix& cm) {
  ordered_json j;
  j["tp"] = cm.tp;
  j["fp"] = cm.fp;
  j["tn"] = cm.tn;
  j["fn"] = cm.fn;
  return j;
}

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

MeanStd mean_std(const std::vector<double>& values) {
  MeanStd out;
  if (values.empty()) return out;
  for (double v : values) out.mean += v;
  out.mean /= static_cast<double>(values.size());
  for (double v : values) out.std += (v - out.mean) * (v - out.mean);
  out.std = std::sqrt(out.std / static_cast<double>(values.size()));
  return out;
}

int run_command(const std::string& data_path, const std::string& label_col,
                const std::string& test_path, const std::string& group_col,
                const std::string& config_path, bool seed_given, std::uint64_t seed,
                int repeats, const std::string& out_path) {
  mofs::Config cfg;
  if (!config_path.empty()) cfg = mofs::config_from_json_text(read_file(config_path));
  if (seed_given) cfg.seed = seed;
  cfg.validate();
  if (repeats < 1) throw mofs::ConfigError("--repeats must be >= 1");

  const mofs::Dataset data = mofs::load_csv(data_path, label_col, group_col);
  mofs::Dataset test;
  const mofs::Dataset* test_ptr = nullptr;
  if (!test_path.empty()) {
    test = mofs::load_csv(test_path, label_col, group_col);
    test_ptr = &test;
  }

  if (repeats == 1) {
    const mofs::RunResult result = mofs::run_pipeline(data, test_ptr, cfg);
    mofs::emit_report(result, out_path);
    return 0;
  }

  // Repeat i runs with seed + i; the report carries every run plus
  // mean/std aggregates of the selected solution's metrics.
  ordered_json doc;
  doc["seed"] = cfg.seed;
  doc["repeats"] = repeats;
  ordered_json runs = ordered_json::array();
  std::vector<double> sen, spe, auc, acc;
  for (int i = 0; i < repeats; ++i) {
    mofs::Config run_cfg = cfg;
    run_cfg.seed = cfg.seed + static_cast<std::uint64_t>(i);
    const mofs::RunResult result = mofs::run_pipeline(data, test_ptr, run_cfg);
    runs.push_back(ordered_json::parse(mofs::report_text(result)));
    sen.push_back(result.selected.fitness.sensitivity);
    spe.push_back(result.selected.fitness.specificity);
    auc.push_back(result.selected.fitness.auc);
    acc.push_back(result.selected.fitness.accuracy);
  }
  doc["runs"] = std::move(runs);
  ordered_json aggregate;
  auto put = [&](const char* key, const std::vector<double>& values) {
    const MeanStd ms = mean_std(values);
    aggregate[key] = ordered_json{{"mean", ms.mean}, {"std", ms.std}};
  };
  put("sen", sen);
  put("spe", spe);
  put("auc", auc);
  put("acc", acc);
  doc["aggregate"] = std::move(aggregate);
  write_file(out_path, doc.dump(2) + "\n");
  return 0;
}

int baseline_command(const std::string& method, const std::string& data_path,
                     const std::string& label_col, std::uint64_t seed,
                     const std::string& out_path) {
  const mofs::Dataset data = mofs::load_csv(data_path, label_col);
  const mofs::Config cfg{.seed = seed};
  const mofs::FoldPlan folds = mofs::pipeline_folds(data, cfg);

  ordered_json doc;
  doc["seed"] = seed;
  doc["method"] = method;

  mofs::FeatureMask mask;
  if (method == "sfs") {
    mask = mofs::sfs_auc(data, folds, static_cast<int>(data.n_features));
  } else if (method == "relief") {
    const mofs::Ranking ranking =
        mofs::relief_rank(data, seed, static_cast<int>(data.n_samples));
    mask = mofs::top_k_mask(ranking, std::min<int>(15, static_cast<int>(data.n_features)));
    ordered_json rank_json;
    rank_json["weights"] = ranking.weights;
    rank_json["order"] = ranking.order;
    doc["ranking"] = std::move(rank_json);
  } else {
    throw mofs::ConfigError("baseline method must be 'sfs' or 'relief'");
  }

  const mofs::Fitness fit = mofs::evaluate_mask(mask, data, folds);
  const double gamma = mofs::resolve_gamma(0.0, mask.count());
  const mofs::CvScores cv = mofs::cross_val_scores(mask, data, folds, gamma, 1.0);

  ordered_json selected;
  selected["mask"] = mask.to_string();
  selected["feature_indices"] = mask.selected_indices();
  selected["metrics"] = metrics_json(fit);
  doc["selected"] = std::move(selected);
  doc["confusion"] = confusion_json(mofs::confusion(cv.scores, cv.labels, 0.0));
  write_file(out_path, doc.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-objective feature selection"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run the full selection pipeline");
  std::string run_data, run_label, run_test, run_group, run_config, run_out;
  std::uint64_t run_seed = 0;
  int run_repeats = 1;
  run->add_option("--data", run_data, "Training CSV")->required();
  run->add_option("--label-col", run_label, "Label column name")->required();
  run->add_option("--test", run_test, "Held-out CSV with the same columns");
  run->add_option("--group-col", run_group, "Group column kept whole across splits");
  run->add_option("--config", run_config, "JSON config file");
  auto* run_seed_opt = run->add_option("--seed", run_seed, "Overrides the config seed");
  run->add_option("--repeats", run_repeats, "Number of runs with derived seeds");
  run->add_option("--out", run_out, "Report path")->required();

  // datagen
  auto* datagen = app.add_subcommand("datagen", "Write a synthetic CSV dataset");
  std::uint64_t gen_samples = 0, gen_informative = 0, gen_redundant = 0, gen_noise = 0;
  double gen_delta = 0.0, gen_rho = 0.0;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  datagen->add_option("--samples", gen_samples, "Sample count")->required();
  datagen->add_option("--informative", gen_informative, "Informative features")->required();
  datagen->add_option("--redundant", gen_redundant, "Redundant features")->required();
  datagen->add_option("--noise", gen_noise, "Noise features")->required();
  datagen->add_option("--delta", gen_delta, "Class mean shift")->required();
  datagen->add_option("--rho", gen_rho, "Redundancy correlation in [0,1)")->required();
  datagen->add_option("--seed", gen_seed, "Generator seed")->required();
  datagen->add_option("--out", gen_out, "Output CSV path")->required();

  // baseline
  auto* baseline = app.add_subcommand("baseline", "Run a reference method");
  std::string base_method, base_data, base_label, base_out;
  std::uint64_t base_seed = 1;
  baseline->add_option("--method", base_method, "sfs or relief")->required();
  baseline->add_option("--data", base_data, "Training CSV")->required();
  baseline->add_option("--label-col", base_label, "Label column name")->required();
  baseline->add_option("--seed", base_seed, "Fold/probe seed");
  baseline->add_option("--out", base_out, "Report path")->required();

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Selector sensitivity sweep");
  std::string sweep_param, sweep_data, sweep_label, sweep_out;
  std::uint64_t sweep_seed = 1;
  sweep_cmd->add_option("--param", sweep_param, "weights or refpoints")->required();
  sweep_cmd->add_option("--data", sweep_data, "Training CSV")->required();
  sweep_cmd->add_option("--label-col", sweep_label, "Label column name")->required();
  sweep_cmd->add_option("--seed", sweep_seed, "Run seed");
  sweep_cmd->add_option("--out", sweep_out, "Report path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed())
      return run_command(run_data, run_label, run_test, run_group, run_config,
                         run_seed_opt->count() > 0, run_seed, run_repeats, run_out);
    if (datagen->parsed()) {
      mofs::SyntheticSpec spec;
      spec.n_samples = gen_samples;
      spec.n_informative = gen_informative;
      spec.n_redundant = gen_redundant;
      spec.n_noise = gen_noise;
      spec.delta = gen_delta;
      spec.rho = gen_rho;
      spec.seed = gen_seed;
      mofs::write_csv(mofs::generate_synthetic(spec), gen_out);
      return 0;
    }
    if (baseline->parsed())
      return baseline_command(base_method, base_data, base_label, base_seed, base_out);
    if (sweep_cmd->parsed()) {
      mofs::Config cfg;
      cfg.seed = sweep_seed;
      const mofs::Dataset data = mofs::load_csv(sweep_data, sweep_label);
      const auto rows = mofs::sweep(data, cfg, sweep_param);
      write_file(sweep_out, mofs::sweep_report_text(cfg, sweep_param, rows));
      return 0;
    }
  } catch (const mofs::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const mofs::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
