#pragma once

#include <cstdint>
#include <vector>

#include "mofs/dataset.hpp"
#include "mofs/evaluator.hpp"
#include "mofs/mask.hpp"

namespace mofs {

struct Ranking {
  std::vector<double> weights;
  std::vector<int> order;  // descending weight, ties by index
};

// Greedy forward selection on cross-validated AUC; stops when the best
// addition improves AUC by 1e-6 or less, or max_features is reached.
// auc_trail, when given, receives the AUC after each accepted feature.
FeatureMask sfs_auc(const Dataset& data, const FoldPlan& folds, int max_features,
                    double gamma = 0.0, double ridge = 1.0,
                    std::vector<double>* auc_trail = nullptr);

// Classic RELIEF. Neighbors are found by Euclidean distance on z-scored
// features; weight updates use raw absolute differences scaled by the feature
// range. n_probes == n_samples walks every sample once in order, otherwise
// probes are drawn with the seeded generator.
Ranking relief_rank(const Dataset& data, std::uint64_t seed, int n_probes);

FeatureMask top_k_mask(const Ranking& ranking, int k);

}  // namespace mofs
