#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mofs/dataset.hpp"
#include "mofs/mask.hpp"

namespace mofs {

struct Fitness {
  double sensitivity = 0.0;
  double specificity = 0.0;
  double auc = 0.0;
  double accuracy = 0.0;

  bool operator==(const Fitness&) const = default;
};

struct ConfusionMatrix {
  std::int64_t tp = 0, fp = 0, tn = 0, fn = 0;

  bool operator==(const ConfusionMatrix&) const = default;
};

// RBF-kernel ridge classifier fitted on masked, z-scored training rows.
// Labels are coded +-1 and the dual weights solve (K + ridge*I) a = y.
struct ClassifierModel {
  std::vector<double> support;       // n_support * n_selected, z-scored
  std::vector<double> dual_weights;  // n_support
  std::vector<double> train_means;   // per selected feature
  std::vector<double> train_stds;    // per selected feature, 0 for constants
  std::vector<int> selected;         // feature indices, ascending
  double kernel_width = 0.0;         // gamma
  double ridge = 0.0;
  std::size_t n_support = 0;
};

ClassifierModel fit_model(const Dataset& data, std::span<const int> train_rows,
                          const FeatureMask& mask, double gamma, double ridge);

std::vector<double> predict_scores(const ClassifierModel& model, const Dataset& data,
                                   std::span<const int> rows);

// Fit on the train rows, return decision scores for the test rows.
// Higher score = more positive; deterministic.
std::vector<double> fit_score(const Dataset& data, std::span<const int> train_rows,
                              std::span<const int> test_rows, const FeatureMask& mask,
                              double gamma, double ridge);

// Ties at the threshold count as negative predictions.
ConfusionMatrix confusion(std::span<const double> scores, std::span<const int> labels,
                          double threshold);

// Mann-Whitney statistic: (concordant + 0.5 * tied) / (positives * negatives).
double auc(std::span<const double> scores, std::span<const int> labels);

struct CvScores {
  std::vector<double> scores;  // validation scores, folds concatenated in order
  std::vector<int> labels;
};

CvScores cross_val_scores(const FeatureMask& mask, const Dataset& data,
                          const FoldPlan& folds, double gamma, double ridge);

// Sensitivity/specificity/accuracy at threshold 0 plus AUC.
Fitness fitness_from_scores(std::span<const double> scores, std::span<const int> labels);

// gamma <= 0 selects the default 1 / (selected feature count).
// The empty mask evaluates to the all-zero Fitness by contract.
Fitness evaluate_mask(const FeatureMask& mask, const Dataset& data, const FoldPlan& folds,
                      double gamma = 0.0, double ridge = 1.0);

double resolve_gamma(double gamma, std::size_t selected_count);

}  // namespace mofs
