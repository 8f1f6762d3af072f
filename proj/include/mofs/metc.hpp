#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mofs/moea.hpp"

namespace mofs {

// One generation's objective-space histogram plus the per-cell distribution
// of selected features. dissimilarity_to_prev is absent for the first
// generation.
struct GenerationSnapshot {
  Population population;
  std::vector<int> cell_counts;                        // n_b * n_b cells
  std::vector<std::vector<double>> feature_bin_probs;  // per cell, n_features long
  std::optional<double> dissimilarity_to_prev;
  int n_b = 0;
};

// Cell index on the fixed [0,1]^2 objective grid: each rate is bucketed into
// intervals [k/n_b, (k+1)/n_b) with 1.0 clamped into the top interval, and
// c = k_sen + n_b * k_spe.
int cell_id(double sensitivity, double specificity, int n_b);

GenerationSnapshot build_snapshot(const Population& pop, int n_b);

// Symmetrized halved KL terms over the common support plus entropy terms
// where exactly one side is zero (natural log, 0*log0 = 0). Inputs are
// nonnegative and may be sub-normalized.
double dissimilarity_pair(std::span<const double> p, std::span<const double> q);

// Dissimilarity of the objective histograms alone.
double objective_dissimilarity(const GenerationSnapshot& prev, const GenerationSnapshot& curr);

// Objective term plus the per-cell selected-feature terms; a cell populated
// on only one side contributes its entropy terms against all-zeros.
double total_dissimilarity(const GenerationSnapshot& prev, const GenerationSnapshot& curr);

struct TerminationState {
  std::vector<double> d_history;
  std::vector<double> m_history;  // running means
  std::vector<double> s_history;  // running mean squared deviations
  int n_s = 2;                    // successive generations required
  int n_p = 2;                    // decimal places compared

  void push(double d);
};

// True once at least n_s+1 running (M, S) values exist and the last n_s+1 of
// both agree after rounding to n_p decimals.
bool should_terminate(const TerminationState& state);

}  // namespace mofs
