#include <algorithm>

#include "doctest.h"
#include "mofs/baselines.hpp"
#include "mofs/errors.hpp"
#include "mofs/rng.hpp"

using namespace mofs;

namespace {

// feature `strong` tracks the label, everything else is noise
Dataset labeled_dataset(std::size_t n_samples, std::size_t n_features, std::size_t strong,
                        double separation, std::uint64_t seed) {
  Dataset data;
  data.n_samples = n_samples;
  data.n_features = n_features;
  for (std::size_t f = 0; f < n_features; ++f)
    data.feature_names.push_back("f" + std::to_string(f));
  Rng rng(seed);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const int label = i % 2 == 0 ? 1 : 0;
    data.y.push_back(label);
    for (std::size_t f = 0; f < n_features; ++f) {
      double v = rng.normal();
      if (f == strong) v += label == 1 ? separation / 2 : -separation / 2;
      data.x.push_back(v);
    }
  }
  return data;
}

}  // namespace

TEST_CASE("sfs picks the dominant feature and stops") {
  const Dataset data = labeled_dataset(60, 4, 2, 10.0, 3);
  const FoldPlan folds = stratified_folds(data, 2, 9);
  std::vector<double> trail;
  const FeatureMask mask = sfs_auc(data, folds, 4, 0.0, 1.0, &trail);
  CHECK(mask.bits[2] == 1);
  CHECK(mask.count() == 1);  // AUC 1.0 leaves no room to improve
  REQUIRE(trail.size() == 1);
  CHECK(trail[0] == 1.0);
}

TEST_CASE("sfs respects the feature budget") {
  const Dataset data = labeled_dataset(40, 5, 0, 2.0, 4);
  const FoldPlan folds = stratified_folds(data, 2, 9);
  const FeatureMask mask = sfs_auc(data, folds, 1);
  CHECK(mask.count() == 1);
  CHECK_THROWS_AS(sfs_auc(data, folds, 0), std::invalid_argument);
}

TEST_CASE("the first sfs pick matches an exhaustive singleton scan") {
  const Dataset data = labeled_dataset(50, 5, 3, 2.5, 8);
  const FoldPlan folds = stratified_folds(data, 2, 11);

  int best_feature = -1;
  double best_auc = -1.0;
  for (std::size_t f = 0; f < data.n_features; ++f) {
    FeatureMask candidate(data.n_features);
    candidate.bits[f] = 1;
    const double value = evaluate_mask(candidate, data, folds).auc;
    if (value > best_auc) {
      best_auc = value;
      best_feature = static_cast<int>(f);
    }
  }
  const FeatureMask mask = sfs_auc(data, folds, 1);
  CHECK(mask.selected_indices() == std::vector<int>{best_feature});
}

TEST_CASE("the greedy auc trail never decreases") {
  const Dataset data = labeled_dataset(40, 6, 1, 1.2, 12);
  const FoldPlan folds = stratified_folds(data, 2, 5);
  std::vector<double> trail;
  sfs_auc(data, folds, 6, 0.0, 1.0, &trail);
  for (std::size_t i = 1; i < trail.size(); ++i) CHECK(trail[i] >= trail[i - 1]);
}

TEST_CASE("relief zeroes constant features and ranks the informative one first") {
  Dataset data = labeled_dataset(40, 3, 0, 8.0, 21);
  for (std::size_t i = 0; i < data.n_samples; ++i) data.x[i * 3 + 2] = 1.25;

  const Ranking ranking = relief_rank(data, 7, static_cast<int>(data.n_samples));
  CHECK(ranking.weights[2] == 0.0);
  CHECK(ranking.order.front() == 0);

  const Ranking again = relief_rank(data, 7, static_cast<int>(data.n_samples));
  CHECK(again.weights == ranking.weights);
  CHECK(again.order == ranking.order);
}

TEST_CASE("relief ranks an informative feature over noise across seeds") {
  int wins = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Dataset data = labeled_dataset(40, 2, 0, 6.0, 100 + seed);
    const Ranking ranking = relief_rank(data, seed, static_cast<int>(data.n_samples));
    wins += ranking.order.front() == 0;
  }
  CHECK(wins == 20);
}

TEST_CASE("relief weights ignore per-feature affine rescaling") {
  const Dataset data = labeled_dataset(30, 3, 1, 3.0, 5);
  const Ranking base = relief_rank(data, 2, static_cast<int>(data.n_samples));

  Dataset rescaled = data;
  for (std::size_t i = 0; i < data.n_samples; ++i) {
    rescaled.x[i * 3 + 0] = 3.5 * data.at(i, 0) - 2.0;
    rescaled.x[i * 3 + 2] = -2.0 * data.at(i, 2) + 7.0;  // negative scale too
  }
  const Ranking scaled = relief_rank(rescaled, 2, static_cast<int>(data.n_samples));
  for (std::size_t f = 0; f < 3; ++f)
    CHECK(scaled.weights[f] == doctest::Approx(base.weights[f]).epsilon(1e-12));
}

TEST_CASE("relief rejects a single-sample class and bad probe counts") {
  Dataset data = labeled_dataset(6, 2, 0, 2.0, 1);
  data.y = {1, 0, 0, 0, 0, 0};
  CHECK_THROWS_AS(relief_rank(data, 1, 6), DataError);
  CHECK_THROWS_AS(relief_rank(labeled_dataset(6, 2, 0, 2.0, 1), 1, 0),
                  std::invalid_argument);
}

TEST_CASE("sampled probes differ from the full pass but stay deterministic") {
  const Dataset data = labeled_dataset(30, 3, 0, 3.0, 17);
  const Ranking a = relief_rank(data, 5, 10);
  const Ranking b = relief_rank(data, 5, 10);
  CHECK(a.weights == b.weights);
  // a full pass ignores the seed entirely
  CHECK(relief_rank(data, 1, 30).weights == relief_rank(data, 99, 30).weights);
}

TEST_CASE("top_k_mask takes the leading ranks") {
  Ranking ranking;
  ranking.weights = {0.1, 0.9, 0.5, 0.3};
  ranking.order = {1, 2, 3, 0};
  const FeatureMask mask = top_k_mask(ranking, 2);
  CHECK(mask.selected_indices() == std::vector<int>{1, 2});
  CHECK(top_k_mask(ranking, 99).count() == 4);
  CHECK(top_k_mask(ranking, 0).count() == 0);
}
