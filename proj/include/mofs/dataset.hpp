#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mofs {

// Tabular binary-classification data. Immutable after construction and safe
// to share across concurrent evaluators.
struct Dataset {
  std::vector<double> x;  // n_samples * n_features, row-major
  std::vector<int> y;     // 1 = positive/malignant, 0 = negative/benign
  std::vector<std::string> feature_names;
  std::vector<std::int64_t> groups;  // optional split groups; empty when unused
  std::size_t n_samples = 0;
  std::size_t n_features = 0;

  double at(std::size_t row, std::size_t col) const { return x[row * n_features + col]; }
  const double* row(std::size_t r) const { return x.data() + r * n_features; }

  std::size_t positives() const {
    std::size_t c = 0;
    for (int v : y) c += v == 1;
    return c;
  }
};

// Absolute Pearson correlation magnitudes |r_ij| between feature pairs.
// Symmetric with unit diagonal; constant features correlate 0 with everything
// else and 1 with themselves.
struct CorrMatrix {
  std::size_t n = 0;
  std::vector<double> r;  // n * n
  double at(std::size_t i, std::size_t j) const { return r[i * n + j]; }
};

struct FoldPlan {
  struct Fold {
    std::vector<int> train;
    std::vector<int> validation;
  };
  std::vector<Fold> folds;
  int k = 0;
  std::uint64_t seed = 0;
};

struct SyntheticSpec {
  std::size_t n_samples = 0;
  std::size_t n_informative = 0;
  std::size_t n_redundant = 0;
  std::size_t n_noise = 0;
  double delta = 0.0;  // class mean shift on informative features
  double rho = 0.0;    // correlation of redundant features with their source
  std::uint64_t seed = 0;
};

// CSV: comma separated, '.' decimal, mandatory header. Labels accepted as
// {0, 1} or {benign, malignant} (case-insensitive). The optional group column
// is excluded from the features and keeps its rows together in splits.
Dataset load_csv(const std::string& path, const std::string& label_column,
                 const std::string& group_column = "");

// Writes features plus a trailing label column; values round-trip exactly.
void write_csv(const Dataset& data, const std::string& path);

// Class-conditional Gaussian data, features ordered
// [informative | redundant | noise], labels alternating 1,0,1,...
// Informative features have class means +-delta/2 and unit variance; each
// redundant one is rho times a random informative feature plus
// sqrt(1-rho^2) noise; noise features ignore the labels.
Dataset generate_synthetic(const SyntheticSpec& spec);

CorrMatrix correlation_matrix(const Dataset& data);

// Stratified k-fold split: per-fold class counts are within one sample of the
// global proportions. Deterministic for a fixed seed.
FoldPlan stratified_folds(const Dataset& data, int k, std::uint64_t seed);

// Group-aware variant: all rows of a group land in the same fold.
FoldPlan stratified_group_folds(const Dataset& data, int k, std::uint64_t seed);

}  // namespace mofs
