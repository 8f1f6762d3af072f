#pragma once

#include <vector>

#include "mofs/config.hpp"
#include "mofs/metc.hpp"

namespace mofs {

// Cross-validation folds for a run; group-aware when the dataset carries
// groups. The fold seed is a fixed substream of cfg.seed.
FoldPlan pipeline_folds(const Dataset& data, const Config& cfg);

struct EvolveResult {
  // Snapshot 0 is the evaluated initial population; one snapshot per
  // completed generation follows.
  std::vector<GenerationSnapshot> snapshots;
  bool terminated_by_criterion = false;
};

// Phase 1: clone, mutate, merge with the incumbents, dedupe, refill if the
// pool fell short, sort/truncate, then check the termination criterion.
// Runs until the criterion fires or cfg.max_generations is reached.
EvolveResult evolve(const Dataset& data, const Config& cfg);

}  // namespace mofs
