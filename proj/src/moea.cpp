#include "mofs/moea.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace mofs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_evaluated(const Population& pop) {
  for (const auto& s : pop.members)
    if (!s.evaluated) throw std::logic_error("population member not evaluated");
}

std::int64_t round_1e9(double v) { return std::llround(v * 1e9); }

}  // namespace

bool dominates(const Fitness& a, const Fitness& b) {
  if (a.sensitivity < b.sensitivity || a.specificity < b.specificity) return false;
  return a.sensitivity > b.sensitivity || a.specificity > b.specificity;
}

Population initialize_population(int pop_size, std::size_t n_features, std::uint64_t seed) {
  if (pop_size < 2) throw std::invalid_argument("population size must be >= 2");
  if (n_features < 1) throw std::invalid_argument("need at least one feature");
  Rng rng(seed);
  Population pop;
  pop.generation = 0;
  pop.members.resize(pop_size);
  for (auto& sol : pop.members) {
    sol.mask = FeatureMask(n_features);
    for (auto& bit : sol.mask.bits) bit = rng.uniform01() < 0.5 ? 1 : 0;
    if (sol.mask.empty_mask()) sol.mask.bits[rng.uniform_index(n_features)] = 1;
  }
  return pop;
}

std::vector<double> crowding_distances(const std::vector<Solution>& members,
                                       std::span<const int> indices) {
  const std::size_t n = indices.size();
  std::vector<double> dist(n, 0.0);
  if (n == 0) return dist;
  if (n <= 2) {
    std::fill(dist.begin(), dist.end(), kInf);
    return dist;
  }
  auto accumulate_objective = [&](auto value_of) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return value_of(members[indices[a]].fitness) < value_of(members[indices[b]].fitness);
    });
    const double lo = value_of(members[indices[order.front()]].fitness);
    const double hi = value_of(members[indices[order.back()]].fitness);
    dist[order.front()] = kInf;
    dist[order.back()] = kInf;
    if (hi <= lo) return;  // degenerate objective adds nothing
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (std::isinf(dist[order[i]])) continue;
      const double prev = value_of(members[indices[order[i - 1]]].fitness);
      const double next = value_of(members[indices[order[i + 1]]].fitness);
      dist[order[i]] += (next - prev) / (hi - lo);
    }
  };
  accumulate_objective([](const Fitness& f) { return f.sensitivity; });
  accumulate_objective([](const Fitness& f) { return f.specificity; });
  return dist;
}

std::vector<int> clone_counts_from_distances(std::span<const double> distances,
                                             int clone_budget) {
  const std::size_t n = distances.size();
  std::vector<double> d(distances.begin(), distances.end());
  double max_finite = 0.0;
  for (double v : d)
    if (std::isfinite(v)) max_finite = std::max(max_finite, v);
  for (double& v : d)
    if (std::isinf(v)) v = max_finite + 1.0;
  double sum = std::accumulate(d.begin(), d.end(), 0.0);
  if (sum <= 0.0) {
    std::fill(d.begin(), d.end(), 1.0);
    sum = static_cast<double>(n);
  }
  std::vector<int> counts(n);
  for (std::size_t i = 0; i < n; ++i)
    counts[i] = static_cast<int>(
        std::max<std::int64_t>(1, std::llround(clone_budget * d[i] / sum)));
  return counts;
}

std::vector<int> clone_counts(const Population& pop, int clone_budget) {
  if (pop.members.empty()) throw std::invalid_argument("cannot clone an empty population");
  if (clone_budget < static_cast<int>(pop.size()))
    throw std::invalid_argument("clone budget smaller than population");
  require_evaluated(pop);
  std::vector<int> all(pop.size());
  std::iota(all.begin(), all.end(), 0);
  const std::vector<double> dist = crowding_distances(pop.members, all);
  return clone_counts_from_distances(dist, clone_budget);
}

Population clone_proportional(const Population& pop, int clone_budget) {
  const std::vector<int> counts = clone_counts(pop, clone_budget);
  Population clones;
  clones.generation = pop.generation;
  for (std::size_t i = 0; i < pop.size(); ++i)
    for (int c = 0; c < counts[i]; ++c) clones.members.push_back(pop.members[i]);
  return clones;
}

std::vector<double> mutation_probabilities(const FeatureMask& mask, const CorrMatrix& corr) {
  const std::size_t n = mask.size();
  if (corr.n != n) throw std::invalid_argument("correlation matrix size mismatch");
  const std::vector<int> selected = mask.selected_indices();
  const double k = static_cast<double>(selected.size());
  std::vector<double> mp(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (selected.empty()) {
      // No redundancy evidence at all: every bit becomes a candidate.
      mp[i] = 1.0;
      continue;
    }
    double sum = 0.0;
    for (int s : selected) sum += corr.at(i, s);
    const double value = mask.bits[i] ? (sum - 1.0) / k : 1.0 - sum / k;
    mp[i] = std::clamp(value, 0.0, 1.0);
  }
  return mp;
}

Solution adaptive_mutation(const Solution& sol, const CorrMatrix& corr, Rng& rng) {
  const std::vector<double> mp = mutation_probabilities(sol.mask, corr);
  Solution out;
  out.mask = sol.mask;
  for (std::size_t i = 0; i < mp.size(); ++i)
    if (mp[i] > rng.uniform01()) out.mask.bits[i] ^= 1;
  if (out.mask.empty_mask()) out.mask.bits[rng.uniform_index(out.mask.size())] = 1;
  return out;
}

Population dedupe_keep_best_auc(const Population& pool) {
  require_evaluated(pool);
  std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> best;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const Fitness& f = pool.members[i].fitness;
    const auto key = std::make_pair(round_1e9(f.sensitivity), round_1e9(f.specificity));
    auto [it, inserted] = best.try_emplace(key, i);
    if (inserted) continue;
    const Solution& incumbent = pool.members[it->second];
    const Solution& candidate = pool.members[i];
    if (candidate.fitness.auc > incumbent.fitness.auc ||
        (candidate.fitness.auc == incumbent.fitness.auc &&
         candidate.mask.count() < incumbent.mask.count()))
      it->second = i;  // equal AUC and size keeps the lower index
  }
  std::vector<std::size_t> keep;
  keep.reserve(best.size());
  for (const auto& [key, idx] : best) keep.push_back(idx);
  std::sort(keep.begin(), keep.end());

  Population out;
  out.generation = pool.generation;
  out.members.reserve(keep.size());
  for (std::size_t idx : keep) out.members.push_back(pool.members[idx]);
  return out;
}

std::vector<std::vector<int>> nondominated_fronts(const std::vector<Solution>& members) {
  const std::size_t n = members.size();
  std::vector<std::vector<int>> dominated(n);
  std::vector<int> domination_count(n, 0);
  std::vector<std::vector<int>> fronts(1);

  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (p == q) continue;
      if (dominates(members[p].fitness, members[q].fitness))
        dominated[p].push_back(static_cast<int>(q));
      else if (dominates(members[q].fitness, members[p].fitness))
        ++domination_count[p];
    }
    if (domination_count[p] == 0) fronts[0].push_back(static_cast<int>(p));
  }
  std::size_t current = 0;
  while (current < fronts.size() && !fronts[current].empty()) {
    std::vector<int> next;
    for (int p : fronts[current])
      for (int q : dominated[p])
        if (--domination_count[q] == 0) next.push_back(q);
    if (next.empty()) break;
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(next));
    ++current;
  }
  return fronts;
}

Population nondominated_sort_auc(const Population& pool, int target_size) {
  require_evaluated(pool);
  if (static_cast<int>(pool.size()) < target_size)
    throw std::invalid_argument("pool smaller than target population size");

  const auto fronts = nondominated_fronts(pool.members);
  Population out;
  out.generation = pool.generation;
  out.members.reserve(target_size);

  for (const auto& front : fronts) {
    const int remaining = target_size - static_cast<int>(out.size());
    if (remaining <= 0) break;
    if (static_cast<int>(front.size()) <= remaining) {
      for (int idx : front) out.members.push_back(pool.members[idx]);
      continue;
    }
    // Partial admission: highest crowding first, AUC then parsimony as ties.
    const std::vector<double> dist = crowding_distances(pool.members, front);
    std::vector<std::size_t> order(front.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (dist[a] != dist[b]) return dist[a] > dist[b];
      const Solution& sa = pool.members[front[a]];
      const Solution& sb = pool.members[front[b]];
      if (sa.fitness.auc != sb.fitness.auc) return sa.fitness.auc > sb.fitness.auc;
      if (sa.mask.count() != sb.mask.count()) return sa.mask.count() < sb.mask.count();
      return front[a] < front[b];
    });
    for (int i = 0; i < remaining; ++i) out.members.push_back(pool.members[front[order[i]]]);
    break;
  }
  return out;
}

}  // namespace mofs
