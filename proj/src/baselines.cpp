#include "mofs/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "mofs/errors.hpp"
#include "mofs/rng.hpp"

namespace mofs {

namespace {

constexpr double kSfsMinGain = 1e-6;

}  // namespace

FeatureMask sfs_auc(const Dataset& data, const FoldPlan& folds, int max_features,
                    double gamma, double ridge, std::vector<double>* auc_trail) {
  if (max_features < 1) throw std::invalid_argument("max_features must be >= 1");
  FeatureMask mask(data.n_features);
  double best_auc = 0.0;
  if (auc_trail) auc_trail->clear();

  while (static_cast<int>(mask.count()) < max_features) {
    int best_feature = -1;
    double best_candidate = -1.0;
    for (std::size_t f = 0; f < data.n_features; ++f) {
      if (mask.bits[f]) continue;
      FeatureMask candidate = mask;
      candidate.bits[f] = 1;
      const double value = evaluate_mask(candidate, data, folds, gamma, ridge).auc;
      if (value > best_candidate) {  // ties keep the lower feature index
        best_candidate = value;
        best_feature = static_cast<int>(f);
      }
    }
    if (best_feature < 0 || best_candidate <= best_auc + kSfsMinGain) break;
    mask.bits[best_feature] = 1;
    best_auc = best_candidate;
    if (auc_trail) auc_trail->push_back(best_auc);
  }
  return mask;
}

Ranking relief_rank(const Dataset& data, std::uint64_t seed, int n_probes) {
  if (n_probes < 1) throw std::invalid_argument("n_probes must be >= 1");
  const std::size_t n = data.n_samples;
  const std::size_t nf = data.n_features;
  const std::size_t positives = data.positives();
  if (positives < 2 || n - positives < 2)
    throw DataError("relief needs at least two samples per class");

  // z-scores drive the neighbor search; raw ranges scale the weight updates.
  std::vector<double> means(nf, 0.0), stds(nf, 0.0), lo(nf), hi(nf);
  for (std::size_t f = 0; f < nf; ++f) {
    lo[f] = std::numeric_limits<double>::infinity();
    hi[f] = -std::numeric_limits<double>::infinity();
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t f = 0; f < nf; ++f) {
      const double v = data.at(i, f);
      means[f] += v;
      lo[f] = std::min(lo[f], v);
      hi[f] = std::max(hi[f], v);
    }
  for (auto& m : means) m /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t f = 0; f < nf; ++f) {
      const double d = data.at(i, f) - means[f];
      stds[f] += d * d;
    }
  for (auto& s : stds) s = std::sqrt(s / static_cast<double>(n));

  std::vector<double> z(n * nf);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t f = 0; f < nf; ++f)
      z[i * nf + f] = stds[f] > 0.0 ? (data.at(i, f) - means[f]) / stds[f] : 0.0;

  std::vector<int> probes;
  probes.reserve(n_probes);
  if (static_cast<std::size_t>(n_probes) == n) {
    probes.resize(n);
    std::iota(probes.begin(), probes.end(), 0);
  } else {
    Rng rng(seed);
    for (int p = 0; p < n_probes; ++p)
      probes.push_back(static_cast<int>(rng.uniform_index(n)));
  }

  Ranking ranking;
  ranking.weights.assign(nf, 0.0);
  for (int probe : probes) {
    int hit = -1, miss = -1;
    double hit_dist = std::numeric_limits<double>::infinity();
    double miss_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (static_cast<int>(j) == probe) continue;
      double dist = 0.0;
      const double* za = z.data() + probe * nf;
      const double* zb = z.data() + j * nf;
      for (std::size_t f = 0; f < nf; ++f) {
        const double d = za[f] - zb[f];
        dist += d * d;
      }
      if (data.y[j] == data.y[probe]) {
        if (dist < hit_dist) {
          hit_dist = dist;
          hit = static_cast<int>(j);
        }
      } else if (dist < miss_dist) {
        miss_dist = dist;
        miss = static_cast<int>(j);
      }
    }
    for (std::size_t f = 0; f < nf; ++f) {
      const double range = hi[f] - lo[f];
      if (range <= 0.0) continue;  // constant feature stays at exactly zero
      const double diff_hit = std::abs(data.at(probe, f) - data.at(hit, f)) / range;
      const double diff_miss = std::abs(data.at(probe, f) - data.at(miss, f)) / range;
      ranking.weights[f] += (diff_miss - diff_hit) / static_cast<double>(n_probes);
    }
  }

  ranking.order.resize(nf);
  std::iota(ranking.order.begin(), ranking.order.end(), 0);
  std::stable_sort(ranking.order.begin(), ranking.order.end(), [&](int a, int b) {
    return ranking.weights[a] > ranking.weights[b];
  });
  return ranking;
}

FeatureMask top_k_mask(const Ranking& ranking, int k) {
  FeatureMask mask(ranking.order.size());
  const int take = std::clamp<int>(k, 0, static_cast<int>(ranking.order.size()));
  for (int i = 0; i < take; ++i) mask.bits[ranking.order[i]] = 1;
  return mask;
}

}  // namespace mofs
