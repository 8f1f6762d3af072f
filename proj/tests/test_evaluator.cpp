#include <cmath>
#include <numeric>

#include "doctest.h"
#include "mofs/dataset.hpp"
#include "mofs/evaluator.hpp"
#include "mofs/rng.hpp"
#include "support/oracles.hpp"

using namespace mofs;

namespace {

Dataset make_dataset(const std::vector<std::vector<double>>& rows,
                     const std::vector<int>& labels) {
  Dataset data;
  data.n_samples = rows.size();
  data.n_features = rows.front().size();
  for (std::size_t f = 0; f < data.n_features; ++f)
    data.feature_names.push_back("f" + std::to_string(f));
  for (const auto& row : rows) data.x.insert(data.x.end(), row.begin(), row.end());
  data.y = labels;
  return data;
}

FeatureMask full_mask(std::size_t n) {
  FeatureMask mask(n);
  mask.bits.assign(n, 1);
  return mask;
}

std::vector<int> iota_rows(std::size_t n) {
  std::vector<int> rows(n);
  std::iota(rows.begin(), rows.end(), 0);
  return rows;
}

}  // namespace

TEST_CASE("confusion counts with ties predicted negative") {
  CHECK(confusion(std::vector<double>{1, -1}, std::vector<int>{1, 0}, 0.0) ==
        ConfusionMatrix{1, 0, 1, 0});
  CHECK(confusion(std::vector<double>{-2, -3, -1}, std::vector<int>{1, 0, 1}, 0.0) ==
        ConfusionMatrix{0, 0, 1, 2});
  // scores tied with the threshold count as negative predictions
  CHECK(confusion(std::vector<double>{0.2, 0.2, -0.3}, std::vector<int>{1, 0, 0}, 0.2) ==
        ConfusionMatrix{0, 0, 2, 1});
  CHECK_THROWS_AS(confusion(std::vector<double>{1.0}, std::vector<int>{1, 0}, 0.0),
                  std::invalid_argument);
}

TEST_CASE("auc hits the hand-counted values") {
  CHECK(auc(std::vector<double>{3, 2, 1, 0}, std::vector<int>{1, 1, 0, 0}) == 1.0);
  CHECK(auc(std::vector<double>{5, 5, 5, 5}, std::vector<int>{1, 0, 1, 0}) == 0.5);
  // pairs: 3 concordant, 1 discordant
  CHECK(auc(std::vector<double>{0.9, 0.4, 0.6, 0.1}, std::vector<int>{1, 1, 0, 0}) == 0.75);
  CHECK_THROWS_AS(auc(std::vector<double>{1, 2}, std::vector<int>{1, 1}),
                  std::invalid_argument);
}

TEST_CASE("auc matches exhaustive pair counting on random vectors with ties") {
  Rng rng(321);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng.uniform_index(28);
    std::vector<double> scores(n);
    std::vector<int> labels(n);
    bool has_pos = false, has_neg = false;
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = static_cast<double>(rng.uniform_index(8)) / 4.0;  // grid forces ties
      labels[i] = rng.coin() ? 1 : 0;
      (labels[i] ? has_pos : has_neg) = true;
    }
    if (!has_pos) labels[0] = 1;
    if (!has_neg) labels[n - 1] = 0;
    CHECK(auc(scores, labels) == testing::pair_count_auc(scores, labels));
  }
}

TEST_CASE("auc is invariant under strictly monotone rescaling") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 4 + rng.uniform_index(20);
    std::vector<double> scores(n), rescaled(n);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = static_cast<double>(rng.uniform_index(16)) / 8.0;
      rescaled[i] = 2.0 * scores[i] + 1.0;  // exact in floating point, ties preserved
      labels[i] = i % 2 == 0 ? 1 : 0;
    }
    CHECK(auc(scores, labels) == auc(rescaled, labels));
  }
}

TEST_CASE("auc complements under score negation when tie-free") {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 4 + rng.uniform_index(16);
    std::vector<double> scores(n), negated(n);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = rng.uniform01() + static_cast<double>(i) * 4.0;  // strictly distinct
      negated[i] = -scores[i];
      labels[i] = i % 2 == 0 ? 1 : 0;
    }
    // shuffle which indices are positive
    for (std::size_t i = n; i > 1; --i)
      std::swap(labels[i - 1], labels[rng.uniform_index(i)]);
    CHECK(auc(scores, labels) + auc(negated, labels) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("a lone positive exemplar pulls an identical test row positive") {
  // two training rows (both classes are required), the test row sits exactly
  // on the positive one
  const Dataset data = make_dataset({{1.0}, {-1.0}, {1.0}}, {1, 0, 1});
  const std::vector<int> train{0, 1};
  const std::vector<int> test{2};
  const std::vector<double> scores = fit_score(data, train, test, full_mask(1), 1.0, 1e-6);
  CHECK(scores[0] > 0.0);
}

TEST_CASE("the flat-kernel limit collapses scores to the class-balance constant") {
  const Dataset data = make_dataset({{0.0}, {1.0}, {2.0}, {3.0}, {4.0}, {5.0}},
                                    {1, 1, 1, 0, 0, 0});
  const std::vector<int> rows = iota_rows(6);
  const double ridge = 1.0;
  const std::vector<double> scores = fit_score(data, rows, rows, full_mask(1), 1e-14, ridge);
  // K -> all-ones: every score approaches sum(y) / (m + ridge) = 0 here, and
  // they all coincide
  for (double s : scores) CHECK(s == doctest::Approx(scores[0]).epsilon(1e-9));
  CHECK(std::abs(scores[0]) < 1e-6);
}

TEST_CASE("separated 1-D classes rank perfectly and match the dense-solver oracle") {
  const Dataset data = make_dataset({{-3.0}, {-2.5}, {-2.0}, {2.0}, {2.5}, {3.0}},
                                    {0, 0, 0, 1, 1, 1});
  const std::vector<int> rows = iota_rows(6);
  const double gamma = 0.7, ridge = 0.1;
  const std::vector<double> scores = fit_score(data, rows, rows, full_mask(1), gamma, ridge);
  CHECK(auc(scores, data.y) == 1.0);

  // independent route: explicit kernel matrix + gaussian elimination
  const std::size_t m = 6;
  double mean = 0.0;
  for (std::size_t i = 0; i < m; ++i) mean += data.at(i, 0);
  mean /= m;
  double var = 0.0;
  for (std::size_t i = 0; i < m; ++i) var += (data.at(i, 0) - mean) * (data.at(i, 0) - mean);
  const double sd = std::sqrt(var / m);
  std::vector<double> z(m);
  for (std::size_t i = 0; i < m; ++i) z[i] = (data.at(i, 0) - mean) / sd;

  std::vector<double> gram(m * m);
  std::vector<double> target(m);
  for (std::size_t i = 0; i < m; ++i) {
    target[i] = data.y[i] == 1 ? 1.0 : -1.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double d = z[i] - z[j];
      gram[i * m + j] = std::exp(-gamma * d * d) + (i == j ? ridge : 0.0);
    }
  }
  const std::vector<double> alpha = testing::solve_dense(gram, target);
  for (std::size_t t = 0; t < m; ++t) {
    double expected = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double d = z[t] - z[j];
      expected += alpha[j] * std::exp(-gamma * d * d);
    }
    CHECK(scores[t] == doctest::Approx(expected).epsilon(1e-8));
  }
}

TEST_CASE("fit_score matches the dense-solver oracle on random small problems") {
  Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 4 + rng.uniform_index(5);  // up to 8 training rows
    const std::size_t nf = 1 + rng.uniform_index(3);
    std::vector<std::vector<double>> rows(m + 2, std::vector<double>(nf));
    std::vector<int> labels(m + 2);
    for (std::size_t i = 0; i < m + 2; ++i) {
      for (std::size_t f = 0; f < nf; ++f) rows[i][f] = rng.normal();
      labels[i] = i % 2 == 0 ? 1 : 0;
    }
    const Dataset data = make_dataset(rows, labels);
    std::vector<int> train(m);
    std::iota(train.begin(), train.end(), 0);
    const std::vector<int> test{static_cast<int>(m), static_cast<int>(m + 1)};
    const double gamma = 0.25 + rng.uniform01();
    const double ridge = 0.5 + rng.uniform01();
    const FeatureMask mask = full_mask(nf);
    const std::vector<double> got = fit_score(data, train, test, mask, gamma, ridge);

    const ClassifierModel model = fit_model(data, train, mask, gamma, ridge);
    std::vector<double> gram(m * m), target(m);
    for (std::size_t i = 0; i < m; ++i) {
      target[i] = labels[i] == 1 ? 1.0 : -1.0;
      for (std::size_t j = 0; j < m; ++j) {
        double d2 = 0.0;
        for (std::size_t f = 0; f < nf; ++f) {
          const double d = model.support[i * nf + f] - model.support[j * nf + f];
          d2 += d * d;
        }
        gram[i * m + j] = std::exp(-gamma * d2) + (i == j ? ridge : 0.0);
      }
    }
    const std::vector<double> alpha = testing::solve_dense(gram, target);
    for (std::size_t t = 0; t < test.size(); ++t) {
      double expected = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        double d2 = 0.0;
        for (std::size_t f = 0; f < nf; ++f) {
          const double zt = model.train_stds[f] > 0.0
                                ? (data.at(test[t], f) - model.train_means[f]) /
                                      model.train_stds[f]
                                : 0.0;
          const double d = zt - model.support[j * nf + f];
          d2 += d * d;
        }
        expected += alpha[j] * std::exp(-gamma * d2);
      }
      CHECK(got[t] == doctest::Approx(expected).epsilon(1e-8));
    }
  }
}

TEST_CASE("fit_model rejects contract violations") {
  const Dataset data = make_dataset({{1.0}, {-1.0}, {0.5}, {-0.5}}, {1, 0, 1, 0});
  const std::vector<int> rows = iota_rows(4);
  CHECK_THROWS_AS(fit_model(data, rows, FeatureMask(1), 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(fit_model(data, rows, full_mask(1), 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(fit_model(data, rows, full_mask(1), 1.0, 0.0), std::invalid_argument);
  const std::vector<int> one_class{0, 2};
  CHECK_THROWS_AS(fit_model(data, one_class, full_mask(1), 1.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("evaluate_mask honors the degenerate contracts") {
  SyntheticSpec spec;
  spec.n_samples = 60;
  spec.n_informative = 1;
  spec.n_noise = 2;
  spec.delta = 6.0;
  spec.seed = 21;
  const Dataset data = generate_synthetic(spec);
  const FoldPlan folds = stratified_folds(data, 2, 4);

  CHECK(evaluate_mask(FeatureMask(data.n_features), data, folds) == Fitness{});

  FeatureMask informative(data.n_features);
  informative.bits[0] = 1;
  const Fitness fit = evaluate_mask(informative, data, folds);
  CHECK(fit.auc >= 0.95);
  CHECK(evaluate_mask(informative, data, folds) == fit);
}

TEST_CASE("fitness fields re-derive from the confusion matrix") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 10 + rng.uniform_index(30);
    std::vector<double> scores(n);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = rng.normal();
      labels[i] = i % 3 == 0 ? 1 : 0;
    }
    const Fitness fit = fitness_from_scores(scores, labels);
    const ConfusionMatrix cm = confusion(scores, labels, 0.0);
    const double pos = static_cast<double>(cm.tp + cm.fn);
    const double neg = static_cast<double>(cm.tn + cm.fp);
    CHECK(fit.sensitivity == doctest::Approx(cm.tp / pos).epsilon(1e-12));
    CHECK(fit.specificity == doctest::Approx(cm.tn / neg).epsilon(1e-12));
    // accuracy is the prevalence-weighted mean of the two rates
    const double blended =
        (fit.sensitivity * pos + fit.specificity * neg) / (pos + neg);
    CHECK(fit.accuracy == doctest::Approx(blended).epsilon(1e-12));
    CHECK(cm.tp + cm.fn == static_cast<std::int64_t>(std::count(labels.begin(),
                                                                labels.end(), 1)));
  }
}
