#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mofs/config.hpp"
#include "mofs/evolve.hpp"
#include "mofs/smoler.hpp"

namespace mofs {

struct SelectedSolution {
  std::size_t index = 0;  // into pareto_front
  FeatureMask mask;
  Fitness fitness;
  double utility = 0.0;
  std::vector<int> feature_indices;

  bool operator==(const SelectedSolution&) const = default;
};

struct RunResult {
  Config config;
  std::vector<Solution> pareto_front;
  SelectedSolution selected;
  std::vector<double> dissimilarity_trace;  // one entry per completed generation
  int generations_run = 0;                  // completed clone/mutate/update cycles
  std::string terminated_by;                // "metc" | "cap"
  ConfusionMatrix confusion;                // held-out when test given, else CV

  bool operator==(const RunResult&) const = default;
};

// Evolve, extract the rank-0 Pareto set of the terminal population, pick one
// solution, then evaluate it on the held-out set (or on cross-validation when
// absent). test, when given, must carry the same feature columns.
RunResult run_pipeline(const Dataset& data, const Dataset* test, const Config& cfg);

// JSON report with fixed key order: run_id, seed, config, generations_run,
// terminated_by, dissimilarity_trace, pareto_front, selected, confusion.
std::string report_text(const RunResult& result);
void emit_report(const RunResult& result, const std::string& path);
RunResult run_result_from_report(const std::string& text);

struct SweepRow {
  std::array<double, 4> omega{};
  int n_ref = 0;
  std::size_t selected_index = 0;
  double utility = 0.0;
  Fitness fitness;
  std::vector<int> feature_indices;
};

// Phase 1 runs once; solution selection re-runs per setting on the frozen
// Pareto set. param "weights" varies omega_1 over 0.25..0.40 in steps of
// 0.05 with omega_1 = omega_2 and omega_3 = omega_4 = (1 - 2*omega_1)/2;
// param "refpoints" varies the reference count over 5..11.
std::vector<SweepRow> sweep(const Dataset& data, const Config& cfg, const std::string& param);

std::string sweep_report_text(const Config& cfg, const std::string& param,
                              const std::vector<SweepRow>& rows);

}  // namespace mofs
