#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace mofs {

// Run configuration: population 100, 4 objective-grid intervals, termination
// window n_s = n_p = 2, five reference points with weights
// {0.3, 0.3, 0.2, 0.2}, two-fold cross-validation.
struct Config {
  int population_size = 100;
  int clone_budget = 0;  // 0 resolves to population_size
  int n_b = 4;
  int n_s = 2;
  int n_p = 2;
  std::string termination_mode = "metc";  // "metc" | "etc"
  int max_generations = 500;
  std::array<double, 4> smoler_weights = {0.3, 0.3, 0.2, 0.2};
  int smoler_n = 5;
  int cv_folds = 2;
  double gamma = 0.0;  // 0 resolves to 1 / (selected feature count)
  double ridge = 1.0;
  std::uint64_t seed = 1;

  int resolved_clone_budget() const {
    return clone_budget > 0 ? clone_budget : population_size;
  }

  void validate() const;  // throws ConfigError

  bool operator==(const Config&) const = default;
};

// Parses a JSON object mirroring the Config fields; unknown keys are
// rejected. The smoler_N key carries the reference point count.
Config config_from_json_text(const std::string& text);

// Stable key order; clone_budget is emitted resolved.
std::string config_to_json_text(const Config& cfg);

}  // namespace mofs
