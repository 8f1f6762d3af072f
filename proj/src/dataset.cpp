#include "mofs/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "mofs/errors.hpp"
#include "mofs/rng.hpp"

namespace mofs {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  cells.push_back(trim(cur));
  return cells;
}

double parse_number(const std::string& cell, std::size_t line_no, const std::string& col) {
  double value = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw DataError("non-numeric cell '" + cell + "' in column '" + col + "' at line " +
                    std::to_string(line_no));
  if (!std::isfinite(value))
    throw DataError("non-finite value in column '" + col + "' at line " +
                    std::to_string(line_no));
  return value;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

int parse_label(const std::string& cell, std::size_t line_no) {
  const std::string word = lower(cell);
  if (word == "benign") return 0;
  if (word == "malignant") return 1;
  double value = 0.0;
  const char* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), last, value);
  if (ec == std::errc() && ptr == last) {
    if (value == 0.0) return 0;
    if (value == 1.0) return 1;
  }
  throw DataError("label not binary at line " + std::to_string(line_no) + ": '" + cell + "'");
}

void shuffle_indices(std::vector<int>& idx, Rng& rng) {
  for (std::size_t i = idx.size(); i > 1; --i)
    std::swap(idx[i - 1], idx[rng.uniform_index(i)]);
}

}  // namespace

Dataset load_csv(const std::string& path, const std::string& label_column,
                 const std::string& group_column) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) throw DataError("empty file '" + path + "'");
  const std::vector<std::string> header = split_csv_line(line);

  int label_idx = -1, group_idx = -1;
  Dataset data;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == label_column) {
      if (label_idx >= 0) throw DataError("duplicate label column '" + label_column + "'");
      label_idx = static_cast<int>(i);
    } else if (!group_column.empty() && header[i] == group_column) {
      if (group_idx >= 0) throw DataError("duplicate group column '" + group_column + "'");
      group_idx = static_cast<int>(i);
    } else {
      data.feature_names.push_back(header[i]);
    }
  }
  if (label_idx < 0) throw DataError("label column '" + label_column + "' not found");
  if (!group_column.empty() && group_idx < 0)
    throw DataError("group column '" + group_column + "' not found");
  if (data.feature_names.empty()) throw DataError("no feature columns in '" + path + "'");

  {
    std::unordered_set<std::string> seen;
    for (const auto& name : data.feature_names)
      if (!seen.insert(name).second) throw DataError("duplicate feature name '" + name + "'");
  }

  data.n_features = data.feature_names.size();
  std::unordered_map<std::string, std::int64_t> group_ids;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw DataError("line " + std::to_string(line_no) + " has " +
                      std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(header.size()));
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (static_cast<int>(i) == label_idx) {
        data.y.push_back(parse_label(cells[i], line_no));
      } else if (static_cast<int>(i) == group_idx) {
        auto [it, inserted] = group_ids.try_emplace(
            cells[i], static_cast<std::int64_t>(group_ids.size()));
        data.groups.push_back(it->second);
      } else {
        data.x.push_back(parse_number(cells[i], line_no, header[i]));
      }
    }
  }
  data.n_samples = data.y.size();
  if (data.n_samples < 2) throw DataError("need at least 2 samples, got " +
                                          std::to_string(data.n_samples));

  const std::size_t pos = data.positives();
  if (pos == 0 || pos == data.n_samples)
    throw DataError("need at least one sample of each class");
  return data;
}

void write_csv(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  for (std::size_t f = 0; f < data.n_features; ++f) out << data.feature_names[f] << ',';
  out << "label\n";
  char buf[40];
  for (std::size_t i = 0; i < data.n_samples; ++i) {
    for (std::size_t f = 0; f < data.n_features; ++f) {
      std::snprintf(buf, sizeof buf, "%.17g", data.at(i, f));
      out << buf << ',';
    }
    out << data.y[i] << '\n';
  }
  if (!out) throw DataError("write failed for '" + path + "'");
}

Dataset generate_synthetic(const SyntheticSpec& spec) {
  if (spec.n_informative < 1) throw ConfigError("n_informative must be >= 1");
  if (spec.n_samples < 4) throw ConfigError("n_samples must be >= 4");
  if (!(spec.rho >= 0.0 && spec.rho < 1.0)) throw ConfigError("rho must lie in [0, 1)");

  Dataset data;
  data.n_samples = spec.n_samples;
  data.n_features = spec.n_informative + spec.n_redundant + spec.n_noise;
  data.x.resize(data.n_samples * data.n_features);
  data.y.resize(data.n_samples);
  data.feature_names.reserve(data.n_features);
  for (std::size_t f = 0; f < data.n_features; ++f)
    data.feature_names.push_back("f" + std::to_string(f));

  Rng rng(spec.seed);
  std::vector<std::size_t> source(spec.n_redundant);
  for (auto& s : source) s = rng.uniform_index(spec.n_informative);

  const double noise_scale = std::sqrt(1.0 - spec.rho * spec.rho);
  for (std::size_t i = 0; i < data.n_samples; ++i) {
    data.y[i] = (i % 2 == 0) ? 1 : 0;
    const double mu = data.y[i] == 1 ? spec.delta / 2.0 : -spec.delta / 2.0;
    double* row = data.x.data() + i * data.n_features;
    for (std::size_t f = 0; f < spec.n_informative; ++f) row[f] = mu + rng.normal();
    for (std::size_t r = 0; r < spec.n_redundant; ++r)
      row[spec.n_informative + r] = spec.rho * row[source[r]] + noise_scale * rng.normal();
    for (std::size_t n = 0; n < spec.n_noise; ++n)
      row[spec.n_informative + spec.n_redundant + n] = rng.normal();
  }
  return data;
}

CorrMatrix correlation_matrix(const Dataset& data) {
  if (data.n_samples < 2) throw DataError("correlation needs at least 2 samples");
  const std::size_t n = data.n_features;
  const std::size_t s = data.n_samples;

  std::vector<double> means(n, 0.0);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t f = 0; f < n; ++f) means[f] += data.at(i, f);
  for (auto& m : means) m /= static_cast<double>(s);

  // Column-major centered copy keeps the pairwise dot products cache-friendly.
  std::vector<double> centered(n * s);
  std::vector<double> norms(n, 0.0);
  for (std::size_t f = 0; f < n; ++f) {
    double acc = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
      const double d = data.at(i, f) - means[f];
      centered[f * s + i] = d;
      acc += d * d;
    }
    norms[f] = std::sqrt(acc);
  }

  CorrMatrix corr;
  corr.n = n;
  corr.r.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    corr.r[i * n + i] = 1.0;
    if (norms[i] == 0.0) continue;  // constant feature: 0 against everything else
    for (std::size_t j = i + 1; j < n; ++j) {
      if (norms[j] == 0.0) continue;
      double dot = 0.0;
      const double* ci = centered.data() + i * s;
      const double* cj = centered.data() + j * s;
      for (std::size_t t = 0; t < s; ++t) dot += ci[t] * cj[t];
      const double r = std::min(1.0, std::abs(dot) / (norms[i] * norms[j]));
      corr.r[i * n + j] = r;
      corr.r[j * n + i] = r;
    }
  }
  return corr;
}

FoldPlan stratified_folds(const Dataset& data, int k, std::uint64_t seed) {
  if (k < 2) throw ConfigError("fold count must be >= 2");
  std::vector<int> pos, neg;
  for (std::size_t i = 0; i < data.n_samples; ++i)
    (data.y[i] == 1 ? pos : neg).push_back(static_cast<int>(i));
  if (pos.size() < static_cast<std::size_t>(k) || neg.size() < static_cast<std::size_t>(k))
    throw DataError("class too small for " + std::to_string(k) + " folds");

  Rng rng(seed);
  shuffle_indices(pos, rng);
  shuffle_indices(neg, rng);

  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.folds.resize(k);
  for (std::size_t i = 0; i < pos.size(); ++i)
    plan.folds[i % k].validation.push_back(pos[i]);
  for (std::size_t i = 0; i < neg.size(); ++i)
    plan.folds[i % k].validation.push_back(neg[i]);

  std::vector<int> fold_of(data.n_samples, -1);
  for (int f = 0; f < k; ++f) {
    std::sort(plan.folds[f].validation.begin(), plan.folds[f].validation.end());
    for (int idx : plan.folds[f].validation) fold_of[idx] = f;
  }
  for (int f = 0; f < k; ++f)
    for (std::size_t i = 0; i < data.n_samples; ++i)
      if (fold_of[i] != f) plan.folds[f].train.push_back(static_cast<int>(i));
  return plan;
}

FoldPlan stratified_group_folds(const Dataset& data, int k, std::uint64_t seed) {
  if (k < 2) throw ConfigError("fold count must be >= 2");
  if (data.groups.size() != data.n_samples)
    throw DataError("dataset carries no group column");

  // Groups in first-appearance order; a group's class is its majority label,
  // ties resolved by the first row.
  std::vector<std::int64_t> group_order;
  std::unordered_map<std::int64_t, std::vector<int>> rows;
  for (std::size_t i = 0; i < data.n_samples; ++i) {
    auto [it, inserted] = rows.try_emplace(data.groups[i]);
    if (inserted) group_order.push_back(data.groups[i]);
    it->second.push_back(static_cast<int>(i));
  }

  std::vector<int> pos_groups, neg_groups;
  for (std::size_t g = 0; g < group_order.size(); ++g) {
    const auto& members = rows[group_order[g]];
    int ones = 0;
    for (int idx : members) ones += data.y[idx];
    const int zeros = static_cast<int>(members.size()) - ones;
    const bool positive = ones > zeros || (ones == zeros && data.y[members.front()] == 1);
    (positive ? pos_groups : neg_groups).push_back(static_cast<int>(g));
  }
  if (pos_groups.size() < static_cast<std::size_t>(k) ||
      neg_groups.size() < static_cast<std::size_t>(k))
    throw DataError("too few groups per class for " + std::to_string(k) + " folds");

  Rng rng(seed);
  shuffle_indices(pos_groups, rng);
  shuffle_indices(neg_groups, rng);

  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.folds.resize(k);
  auto deal = [&](const std::vector<int>& groups) {
    for (std::size_t i = 0; i < groups.size(); ++i)
      for (int idx : rows[group_order[groups[i]]])
        plan.folds[i % k].validation.push_back(idx);
  };
  deal(pos_groups);
  deal(neg_groups);

  std::vector<int> fold_of(data.n_samples, -1);
  for (int f = 0; f < k; ++f) {
    std::sort(plan.folds[f].validation.begin(), plan.folds[f].validation.end());
    for (int idx : plan.folds[f].validation) fold_of[idx] = f;
  }
  for (int f = 0; f < k; ++f) {
    int val_pos = 0, val_neg = 0, train_pos = 0, train_neg = 0;
    for (std::size_t i = 0; i < data.n_samples; ++i) {
      const bool in_val = fold_of[i] == f;
      if (in_val)
        (data.y[i] == 1 ? val_pos : val_neg)++;
      else {
        plan.folds[f].train.push_back(static_cast<int>(i));
        (data.y[i] == 1 ? train_pos : train_neg)++;
      }
    }
    if (val_pos == 0 || val_neg == 0 || train_pos == 0 || train_neg == 0)
      throw DataError("group folds leave a side without both classes");
  }
  return plan;
}

}  // namespace mofs
