#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "mofs/moea.hpp"

namespace mofs {

// Per-solution decision rules: sensitivity, specificity, AUC and the squared
// sensitivity/specificity gap. Rules 1-3 prefer high values, rule 4 low ones.
struct RuleMatrix {
  static constexpr int kRules = 4;
  static constexpr std::array<bool, 4> kHigherBetter = {true, true, true, false};

  std::vector<std::array<double, 4>> rows;  // one row per Pareto solution

  std::size_t solutions() const { return rows.size(); }
};

// Reference values per rule: rules 1-3 ascend from min to max, rule 4
// descends from max to min, so grade N is always the preferred end. A rule
// whose values are all equal is flagged degenerate.
struct ReferenceGrid {
  int n_ref = 0;
  std::array<std::vector<double>, 4> values;
  std::array<bool, 4> degenerate{};
};

// Belief degrees over the reference grades for one solution; each row sums to
// one with at most two adjacent nonzero entries.
struct BeliefMatrix {
  int n_ref = 0;
  std::array<std::vector<double>, 4> beta;
};

struct Weights {
  std::array<double, 4> omega = {0.3, 0.3, 0.2, 0.2};

  void validate() const;  // each in [0,1], sum 1 within 1e-9
};

struct SelectionResult {
  std::size_t index = 0;
  double utility = 0.0;
  std::vector<double> utilities;  // one per Pareto solution
};

RuleMatrix build_rules(const std::vector<Solution>& pareto);

ReferenceGrid reference_values(const RuleMatrix& rules, int n_ref);

// Linear interpolation between the two bracketing reference values; a value
// exactly on a grid point gets full belief there. A degenerate rule assigns
// full belief to grade N for every solution, making it selection-neutral.
BeliefMatrix belief_matrix(const RuleMatrix& rules, const ReferenceGrid& grid, std::size_t k);

// Analytic evidential-reasoning combination of the four weighted rules into
// one distributed assessment over the grades.
std::vector<double> er_combine(const BeliefMatrix& belief, const Weights& w);

// Expected grade utility u_j = (j-1)/(N-1) under the combined belief; returns
// the maximizer with ties broken by fewer selected features, then lower index.
SelectionResult utility_select(const std::vector<Solution>& pareto, const Weights& w,
                               int n_ref);

}  // namespace mofs
