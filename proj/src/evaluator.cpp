#include "mofs/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mofs {

namespace {

// In-place lower Cholesky factorization and solve of a*x = b for symmetric
// positive definite a (row-major n*n). b is overwritten with the solution.
void cholesky_solve(std::vector<double>& a, std::size_t n, std::vector<double>& b) {
  for (std::size_t j = 0; j < n; ++j) {
    double d = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
    if (d <= 0.0) throw std::runtime_error("kernel system not positive definite");
    const double ljj = std::sqrt(d);
    a[j * n + j] = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) v -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = v / ljj;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    double v = b[i];
    for (std::size_t k = 0; k < i; ++k) v -= a[i * n + k] * b[k];
    b[i] = v / a[i * n + i];
  }
  for (std::size_t ii = n; ii > 0; --ii) {
    const std::size_t i = ii - 1;
    double v = b[i];
    for (std::size_t k = i + 1; k < n; ++k) v -= a[k * n + i] * b[k];
    b[i] = v / a[i * n + i];
  }
}

double squared_distance(const double* a, const double* b, std::size_t k) {
  double acc = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

}  // namespace

double resolve_gamma(double gamma, std::size_t selected_count) {
  if (gamma > 0.0) return gamma;
  if (selected_count == 0) throw std::invalid_argument("cannot derive gamma for empty mask");
  return 1.0 / static_cast<double>(selected_count);
}

ClassifierModel fit_model(const Dataset& data, std::span<const int> train_rows,
                          const FeatureMask& mask, double gamma, double ridge) {
  if (gamma <= 0.0) throw std::invalid_argument("gamma must be positive");
  if (ridge <= 0.0) throw std::invalid_argument("ridge must be positive");
  ClassifierModel model;
  model.selected = mask.selected_indices();
  if (model.selected.empty()) throw std::invalid_argument("mask selects no features");
  model.kernel_width = gamma;
  model.ridge = ridge;
  model.n_support = train_rows.size();

  const std::size_t m = train_rows.size();
  const std::size_t k = model.selected.size();
  if (m == 0) throw std::invalid_argument("empty training set");

  // Fold-local z-scoring: statistics come from the training rows only.
  model.train_means.assign(k, 0.0);
  model.train_stds.assign(k, 0.0);
  for (int row : train_rows)
    for (std::size_t f = 0; f < k; ++f)
      model.train_means[f] += data.at(row, model.selected[f]);
  for (auto& v : model.train_means) v /= static_cast<double>(m);
  for (int row : train_rows)
    for (std::size_t f = 0; f < k; ++f) {
      const double d = data.at(row, model.selected[f]) - model.train_means[f];
      model.train_stds[f] += d * d;
    }
  for (auto& v : model.train_stds) v = std::sqrt(v / static_cast<double>(m));

  model.support.resize(m * k);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t f = 0; f < k; ++f) {
      const double raw = data.at(train_rows[i], model.selected[f]);
      model.support[i * k + f] =
          model.train_stds[f] > 0.0 ? (raw - model.train_means[f]) / model.train_stds[f] : 0.0;
    }

  std::size_t positives = 0;
  std::vector<double> target(m);
  for (std::size_t i = 0; i < m; ++i) {
    const int label = data.y[train_rows[i]];
    positives += label == 1;
    target[i] = label == 1 ? 1.0 : -1.0;
  }
  if (positives == 0 || positives == m)
    throw std::invalid_argument("training set needs both classes");

  std::vector<double> gram(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    gram[i * m + i] = 1.0 + ridge;
    for (std::size_t j = i + 1; j < m; ++j) {
      const double v = std::exp(
          -gamma * squared_distance(model.support.data() + i * k,
                                    model.support.data() + j * k, k));
      gram[i * m + j] = v;
      gram[j * m + i] = v;
    }
  }
  cholesky_solve(gram, m, target);
  model.dual_weights = std::move(target);
  return model;
}

std::vector<double> predict_scores(const ClassifierModel& model, const Dataset& data,
                                   std::span<const int> rows) {
  const std::size_t k = model.selected.size();
  std::vector<double> z(k);
  std::vector<double> scores;
  scores.reserve(rows.size());
  for (int row : rows) {
    for (std::size_t f = 0; f < k; ++f) {
      const double raw = data.at(row, model.selected[f]);
      z[f] = model.train_stds[f] > 0.0 ? (raw - model.train_means[f]) / model.train_stds[f]
                                       : 0.0;
    }
    double score = 0.0;
    for (std::size_t i = 0; i < model.n_support; ++i)
      score += model.dual_weights[i] *
               std::exp(-model.kernel_width *
                        squared_distance(z.data(), model.support.data() + i * k, k));
    scores.push_back(score);
  }
  return scores;
}

std::vector<double> fit_score(const Dataset& data, std::span<const int> train_rows,
                              std::span<const int> test_rows, const FeatureMask& mask,
                              double gamma, double ridge) {
  const ClassifierModel model = fit_model(data, train_rows, mask, gamma, ridge);
  return predict_scores(model, data, test_rows);
}

ConfusionMatrix confusion(std::span<const double> scores, std::span<const int> labels,
                          double threshold) {
  if (scores.size() != labels.size())
    throw std::invalid_argument("scores and labels differ in length");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool predicted_positive = scores[i] > threshold;  // ties predict negative
    if (labels[i] == 1)
      (predicted_positive ? cm.tp : cm.fn)++;
    else
      (predicted_positive ? cm.fp : cm.tn)++;
  }
  return cm;
}

double auc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size())
    throw std::invalid_argument("scores and labels differ in length");
  std::size_t positives = 0;
  for (int label : labels) positives += label == 1;
  const std::size_t negatives = labels.size() - positives;
  if (positives == 0 || negatives == 0)
    throw std::invalid_argument("auc needs both classes");

  std::vector<int> idx(scores.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return scores[a] < scores[b]; });

  // Walk tie groups in ascending score order: positives in a group beat every
  // negative strictly below it and half-win against negatives tied with it.
  double concordant = 0.0, tied = 0.0, negatives_below = 0.0;
  std::size_t i = 0;
  while (i < idx.size()) {
    std::size_t j = i;
    double group_pos = 0.0, group_neg = 0.0;
    while (j < idx.size() && scores[idx[j]] == scores[idx[i]]) {
      if (labels[idx[j]] == 1)
        group_pos += 1.0;
      else
        group_neg += 1.0;
      ++j;
    }
    concordant += group_pos * negatives_below;
    tied += group_pos * group_neg;
    negatives_below += group_neg;
    i = j;
  }
  return (concordant + 0.5 * tied) /
         (static_cast<double>(positives) * static_cast<double>(negatives));
}

CvScores cross_val_scores(const FeatureMask& mask, const Dataset& data,
                          const FoldPlan& folds, double gamma, double ridge) {
  CvScores cv;
  for (const auto& fold : folds.folds) {
    const std::vector<double> scores = fit_score(data, fold.train, fold.validation, mask,
                                                 gamma, ridge);
    cv.scores.insert(cv.scores.end(), scores.begin(), scores.end());
    for (int idx : fold.validation) cv.labels.push_back(data.y[idx]);
  }
  return cv;
}

Fitness fitness_from_scores(std::span<const double> scores, std::span<const int> labels) {
  const ConfusionMatrix cm = confusion(scores, labels, 0.0);
  Fitness fit;
  fit.sensitivity = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn);
  fit.specificity = static_cast<double>(cm.tn) / static_cast<double>(cm.tn + cm.fp);
  fit.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(labels.size());
  fit.auc = auc(scores, labels);
  return fit;
}

Fitness evaluate_mask(const FeatureMask& mask, const Dataset& data, const FoldPlan& folds,
                      double gamma, double ridge) {
  if (mask.count() == 0) return Fitness{};
  const double g = resolve_gamma(gamma, mask.count());
  const CvScores cv = cross_val_scores(mask, data, folds, g, ridge);
  return fitness_from_scores(cv.scores, cv.labels);
}

}  // namespace mofs
