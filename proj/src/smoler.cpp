#include "mofs/smoler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mofs/errors.hpp"

namespace mofs {

namespace {

constexpr double kUtilityTie = 1e-12;
constexpr double kGridSlack = 1e-9;

}  // namespace

void Weights::validate() const {
  double sum = 0.0;
  for (double w : omega) {
    if (w < 0.0 || w > 1.0) throw ConfigError("rule weights must lie in [0, 1]");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("rule weights must sum to 1");
}

RuleMatrix build_rules(const std::vector<Solution>& pareto) {
  if (pareto.empty()) throw std::invalid_argument("empty Pareto set");
  RuleMatrix rules;
  rules.rows.reserve(pareto.size());
  for (const auto& sol : pareto) {
    if (!sol.evaluated) throw std::logic_error("Pareto member not evaluated");
    const Fitness& f = sol.fitness;
    const double gap = f.sensitivity - f.specificity;
    rules.rows.push_back({f.sensitivity, f.specificity, f.auc, gap * gap});
  }
  return rules;
}

ReferenceGrid reference_values(const RuleMatrix& rules, int n_ref) {
  if (n_ref < 2) throw ConfigError("reference point count must be >= 2");
  if (rules.rows.empty()) throw std::invalid_argument("empty rule matrix");
  ReferenceGrid grid;
  grid.n_ref = n_ref;
  for (int rule = 0; rule < RuleMatrix::kRules; ++rule) {
    double lo = rules.rows.front()[rule], hi = lo;
    for (const auto& row : rules.rows) {
      lo = std::min(lo, row[rule]);
      hi = std::max(hi, row[rule]);
    }
    auto& values = grid.values[rule];
    values.resize(n_ref);
    grid.degenerate[rule] = hi == lo;
    const double step = (hi - lo) / static_cast<double>(n_ref - 1);
    for (int j = 0; j < n_ref; ++j)
      values[j] = RuleMatrix::kHigherBetter[rule] ? lo + j * step : hi - j * step;
    // Exact endpoints so extreme rule values always fall inside the grid.
    if (RuleMatrix::kHigherBetter[rule]) {
      values.front() = lo;
      values.back() = hi;
    } else {
      values.front() = hi;
      values.back() = lo;
    }
  }
  return grid;
}

BeliefMatrix belief_matrix(const RuleMatrix& rules, const ReferenceGrid& grid,
                           std::size_t k) {
  if (k >= rules.rows.size()) throw std::invalid_argument("solution index out of range");
  BeliefMatrix belief;
  belief.n_ref = grid.n_ref;
  const int n = grid.n_ref;
  for (int rule = 0; rule < RuleMatrix::kRules; ++rule) {
    auto& beta = belief.beta[rule];
    beta.assign(n, 0.0);
    if (grid.degenerate[rule]) {
      beta[n - 1] = 1.0;  // a rule that cannot discriminate should not discriminate
      continue;
    }
    const auto& h = grid.values[rule];
    const double f = rules.rows[k][rule];
    const bool ascending = RuleMatrix::kHigherBetter[rule];
    const double lo = ascending ? h.front() : h.back();
    const double hi = ascending ? h.back() : h.front();
    const double span = hi - lo;
    if (f < lo - kGridSlack * span || f > hi + kGridSlack * span)
      throw std::logic_error("rule value outside reference grid");

    const double step = span / static_cast<double>(n - 1);
    const double offset = ascending ? (f - h.front()) / step : (h.front() - f) / step;
    const int j = std::clamp(static_cast<int>(offset), 0, n - 2);
    // Belief at grade j is the interpolation weight toward its grid value:
    // 1 when f sits exactly on h[j], 0 when f reaches h[j+1].
    const double to_next = ascending ? (h[j + 1] - f) / (h[j + 1] - h[j])
                                     : (f - h[j + 1]) / (h[j] - h[j + 1]);
    const double bj = std::clamp(to_next, 0.0, 1.0);
    beta[j] = bj;
    beta[j + 1] = 1.0 - bj;
  }
  return belief;
}

std::vector<double> er_combine(const BeliefMatrix& belief, const Weights& w) {
  w.validate();
  const int n = belief.n_ref;
  if (n < 1) throw std::invalid_argument("empty belief matrix");

  std::array<double, RuleMatrix::kRules> totals{};
  for (int rule = 0; rule < RuleMatrix::kRules; ++rule) {
    double sum = 0.0;
    for (double b : belief.beta[rule]) {
      if (b < 0.0) throw std::invalid_argument("negative belief degree");
      sum += b;
    }
    totals[rule] = sum;
  }

  std::vector<double> grade_products(n);
  double base = 1.0, unweighted = 1.0;
  for (int rule = 0; rule < RuleMatrix::kRules; ++rule) {
    base *= 1.0 - w.omega[rule] * totals[rule];
    unweighted *= 1.0 - w.omega[rule];
  }
  double product_sum = 0.0;
  for (int j = 0; j < n; ++j) {
    double prod = 1.0;
    for (int rule = 0; rule < RuleMatrix::kRules; ++rule)
      prod *= w.omega[rule] * belief.beta[rule][j] + 1.0 - w.omega[rule] * totals[rule];
    grade_products[j] = prod;
    product_sum += prod;
  }

  const double mu = 1.0 / (product_sum - (n - 1) * base);
  const double denom = 1.0 - mu * unweighted;
  std::vector<double> combined(n);
  for (int j = 0; j < n; ++j) combined[j] = mu * (grade_products[j] - base) / denom;
  return combined;
}

SelectionResult utility_select(const std::vector<Solution>& pareto, const Weights& w,
                               int n_ref) {
  const RuleMatrix rules = build_rules(pareto);
  const ReferenceGrid grid = reference_values(rules, n_ref);

  SelectionResult result;
  result.utilities.reserve(pareto.size());
  for (std::size_t k = 0; k < pareto.size(); ++k) {
    const BeliefMatrix belief = belief_matrix(rules, grid, k);
    const std::vector<double> combined = er_combine(belief, w);
    double utility = 0.0;
    for (int j = 0; j < n_ref; ++j)
      utility += combined[j] * static_cast<double>(j) / static_cast<double>(n_ref - 1);
    result.utilities.push_back(utility);
  }

  std::size_t best = 0;
  for (std::size_t k = 1; k < pareto.size(); ++k) {
    const double diff = result.utilities[k] - result.utilities[best];
    if (diff > kUtilityTie ||
        (diff >= -kUtilityTie && pareto[k].mask.count() < pareto[best].mask.count()))
      best = k;
  }
  result.index = best;
  result.utility = result.utilities[best];
  return result;
}

}  // namespace mofs
