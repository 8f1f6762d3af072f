#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mofs/dataset.hpp"
#include "mofs/evaluator.hpp"
#include "mofs/mask.hpp"
#include "mofs/rng.hpp"

namespace mofs {

struct Solution {
  FeatureMask mask;
  Fitness fitness;
  bool evaluated = false;

  bool operator==(const Solution&) const = default;
};

struct Population {
  std::vector<Solution> members;
  int generation = 0;

  std::size_t size() const { return members.size(); }
};

// a dominates b on maximizing (sensitivity, specificity).
bool dominates(const Fitness& a, const Fitness& b);

// Random fair-coin masks; an all-zero mask is repaired with one random bit.
Population initialize_population(int pop_size, std::size_t n_features, std::uint64_t seed);

// NSGA-style crowding distances on the (sen, spe) plane for the given member
// indices; boundary members get +infinity.
std::vector<double> crowding_distances(const std::vector<Solution>& members,
                                       std::span<const int> indices);

// Copies per member: max(1, round(budget * d_i / sum d)). Infinite boundary
// distances are replaced by (max finite + 1); all-zero distances fall back to
// a uniform split.
std::vector<int> clone_counts_from_distances(std::span<const double> distances,
                                             int clone_budget);
std::vector<int> clone_counts(const Population& pop, int clone_budget);
Population clone_proportional(const Population& pop, int clone_budget);

// Per-bit mutation probabilities from the entry-time mask: a selected bit
// mutates with the mean |correlation| to the other selected features, an
// unselected bit with one minus the mean |correlation| to the selected set.
std::vector<double> mutation_probabilities(const FeatureMask& mask, const CorrMatrix& corr);

// Flips bit i iff MP_i > RP_i with RP_i uniform in [0,1); an empty result is
// repaired with one random bit. The returned solution is unevaluated.
Solution adaptive_mutation(const Solution& sol, const CorrMatrix& corr, Rng& rng);

// Among members whose (sen, spe) agree after 1e-9 rounding, keeps the highest
// AUC; ties fall to fewer selected features, then lower index.
Population dedupe_keep_best_auc(const Population& pool);

// Fast non-dominated sort; fronts listed rank 0 first, indices ascending.
std::vector<std::vector<int>> nondominated_fronts(const std::vector<Solution>& members);

// Whole fronts admitted in rank order; the first partially admitted front is
// truncated by crowding distance descending, then AUC descending, then fewer
// selected features, then lower index. Output size is exactly target_size.
Population nondominated_sort_auc(const Population& pool, int target_size);

}  // namespace mofs
