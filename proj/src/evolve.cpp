#include "mofs/evolve.hpp"

#include <string>
#include <unordered_map>

#include "mofs/errors.hpp"

namespace mofs {

namespace {

constexpr int kMaxRefillRounds = 10;

// Deterministic mask evaluation with memoization; duplicates recur heavily
// across generations through the merged incumbents.
class CachedEvaluator {
 public:
  CachedEvaluator(const Dataset& data, const FoldPlan& folds, const Config& cfg)
      : data_(data), folds_(folds), cfg_(cfg) {}

  void evaluate(Population& pop) {
    for (auto& sol : pop.members) {
      if (sol.evaluated) continue;
      const std::string key = sol.mask.key();
      auto it = cache_.find(key);
      if (it == cache_.end())
        it = cache_.emplace(key, evaluate_mask(sol.mask, data_, folds_, cfg_.gamma,
                                               cfg_.ridge)).first;
      sol.fitness = it->second;
      sol.evaluated = true;
    }
  }

 private:
  const Dataset& data_;
  const FoldPlan& folds_;
  const Config& cfg_;
  std::unordered_map<std::string, Fitness> cache_;
};

Solution random_solution(std::size_t n_features, Rng& rng) {
  Solution sol;
  sol.mask = FeatureMask(n_features);
  for (auto& bit : sol.mask.bits) bit = rng.uniform01() < 0.5 ? 1 : 0;
  if (sol.mask.empty_mask()) sol.mask.bits[rng.uniform_index(n_features)] = 1;
  return sol;
}

}  // namespace

FoldPlan pipeline_folds(const Dataset& data, const Config& cfg) {
  const std::uint64_t fold_seed = mix_seed(cfg.seed, rng_tag::kFolds);
  if (!data.groups.empty()) return stratified_group_folds(data, cfg.cv_folds, fold_seed);
  return stratified_folds(data, cfg.cv_folds, fold_seed);
}

EvolveResult evolve(const Dataset& data, const Config& cfg) {
  cfg.validate();
  const CorrMatrix corr = correlation_matrix(data);
  const FoldPlan folds = pipeline_folds(data, cfg);
  CachedEvaluator evaluator(data, folds, cfg);

  const int pop_size = cfg.population_size;
  const int budget = cfg.resolved_clone_budget();

  Population pop = initialize_population(pop_size, data.n_features,
                                         mix_seed(cfg.seed, rng_tag::kInit));
  evaluator.evaluate(pop);

  EvolveResult result;
  result.snapshots.push_back(build_snapshot(pop, cfg.n_b));

  TerminationState state;
  state.n_s = cfg.n_s;
  state.n_p = cfg.n_p;

  for (int gen = 1; gen <= cfg.max_generations; ++gen) {
    const Population clones = clone_proportional(pop, budget);
    Population pool;
    pool.generation = gen;
    pool.members = pop.members;  // incumbents merge back before truncation
    pool.members.reserve(pop.size() + clones.size());
    for (std::size_t i = 0; i < clones.size(); ++i) {
      Rng rng(mix_seed(cfg.seed, rng_tag::kMutation, gen, i));
      pool.members.push_back(adaptive_mutation(clones.members[i], corr, rng));
    }
    evaluator.evaluate(pool);
    pool = dedupe_keep_best_auc(pool);

    // Deleting can shrink the pool below P; re-enter cloning a bounded number
    // of times, then pad with fresh random solutions.
    for (int round = 0; static_cast<int>(pool.size()) < pop_size &&
                        round < kMaxRefillRounds; ++round) {
      const Population extra = clone_proportional(pool, budget);
      for (std::size_t i = 0; i < extra.size(); ++i) {
        Rng rng(mix_seed(cfg.seed, rng_tag::kRefill, gen,
                         static_cast<std::uint64_t>(round) << 32 | i));
        pool.members.push_back(adaptive_mutation(extra.members[i], corr, rng));
      }
      evaluator.evaluate(pool);
      pool = dedupe_keep_best_auc(pool);
    }
    if (static_cast<int>(pool.size()) < pop_size) {
      Rng rng(mix_seed(cfg.seed, rng_tag::kPad, gen));
      while (static_cast<int>(pool.size()) < pop_size)
        pool.members.push_back(random_solution(data.n_features, rng));
      evaluator.evaluate(pool);
    }

    pool.generation = gen;
    pop = nondominated_sort_auc(pool, pop_size);
    pop.generation = gen;

    GenerationSnapshot snap = build_snapshot(pop, cfg.n_b);
    const GenerationSnapshot& prev = result.snapshots.back();
    const double d = cfg.termination_mode == "metc" ? total_dissimilarity(prev, snap)
                                                    : objective_dissimilarity(prev, snap);
    snap.dissimilarity_to_prev = d;
    state.push(d);
    result.snapshots.push_back(std::move(snap));

    if (should_terminate(state)) {
      result.terminated_by_criterion = true;
      break;
    }
  }
  return result;
}

}  // namespace mofs
