#include "mofs/metc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mofs {

namespace {

std::int64_t round_decimals(double v, int n_p) {
  double scale = 1.0;
  for (int i = 0; i < n_p; ++i) scale *= 10.0;
  return std::llround(v * scale);
}

}  // namespace

int cell_id(double sensitivity, double specificity, int n_b) {
  if (n_b < 2) throw std::invalid_argument("n_b must be >= 2");
  auto bucket = [n_b](double v) {
    v = std::clamp(v, 0.0, 1.0);
    return std::min(n_b - 1, static_cast<int>(v * n_b));
  };
  return bucket(sensitivity) + n_b * bucket(specificity);
}

GenerationSnapshot build_snapshot(const Population& pop, int n_b) {
  if (pop.members.empty()) throw std::invalid_argument("empty population");
  const std::size_t n_cells = static_cast<std::size_t>(n_b) * n_b;
  const std::size_t n_features = pop.members.front().mask.size();

  GenerationSnapshot snap;
  snap.population = pop;
  snap.n_b = n_b;
  snap.cell_counts.assign(n_cells, 0);
  snap.feature_bin_probs.assign(n_cells, std::vector<double>(n_features, 0.0));

  for (const auto& sol : pop.members) {
    if (!sol.evaluated) throw std::logic_error("population member not evaluated");
    const int cell = cell_id(sol.fitness.sensitivity, sol.fitness.specificity, n_b);
    snap.cell_counts[cell]++;
    auto& probs = snap.feature_bin_probs[cell];
    for (std::size_t f = 0; f < n_features; ++f)
      if (sol.mask.bits[f]) probs[f] += 1.0;
  }
  for (std::size_t c = 0; c < n_cells; ++c) {
    if (snap.cell_counts[c] == 0) continue;
    const double denom = static_cast<double>(snap.cell_counts[c]) *
                         static_cast<double>(n_features);
    for (auto& v : snap.feature_bin_probs[c]) v /= denom;
  }
  return snap;
}

double dissimilarity_pair(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("distribution sizes differ");
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pi = p[i], qi = q[i];
    if (pi < 0.0 || qi < 0.0) throw std::invalid_argument("negative distribution entry");
    if (pi > 0.0 && qi > 0.0) {
      // Symmetrized halved KL; exactly zero when the entries agree.
      total += 0.5 * (pi * std::log(pi / qi) + qi * std::log(qi / pi));
    } else if (pi > 0.0) {
      total += -0.5 * pi * std::log(pi);
    } else if (qi > 0.0) {
      total += -0.5 * qi * std::log(qi);
    }
  }
  return total;
}

double objective_dissimilarity(const GenerationSnapshot& prev,
                               const GenerationSnapshot& curr) {
  if (prev.n_b != curr.n_b) throw std::invalid_argument("snapshots use different n_b");
  auto probs = [](const GenerationSnapshot& s) {
    std::vector<double> p(s.cell_counts.size());
    const double n = static_cast<double>(s.population.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = s.cell_counts[i] / n;
    return p;
  };
  const std::vector<double> p = probs(prev);
  const std::vector<double> q = probs(curr);
  return dissimilarity_pair(p, q);
}

double total_dissimilarity(const GenerationSnapshot& prev, const GenerationSnapshot& curr) {
  double total = objective_dissimilarity(prev, curr);
  for (std::size_t c = 0; c < prev.feature_bin_probs.size(); ++c) {
    if (prev.feature_bin_probs[c].size() != curr.feature_bin_probs[c].size())
      throw std::invalid_argument("snapshots use different feature counts");
    total += dissimilarity_pair(prev.feature_bin_probs[c], curr.feature_bin_probs[c]);
  }
  return total;
}

void TerminationState::push(double d) {
  d_history.push_back(d);
  const double t = static_cast<double>(d_history.size());
  double mean = 0.0;
  for (double v : d_history) mean += v;
  mean /= t;
  double sq = 0.0;
  for (double v : d_history) sq += (v - mean) * (v - mean);
  m_history.push_back(mean);
  s_history.push_back(sq / t);
}

bool should_terminate(const TerminationState& state) {
  if (state.n_s < 1) throw std::invalid_argument("n_s must be >= 1");
  const std::size_t window = static_cast<std::size_t>(state.n_s) + 1;
  if (state.m_history.size() < window) return false;
  auto stable = [&](const std::vector<double>& series) {
    const std::int64_t ref = round_decimals(series[series.size() - window], state.n_p);
    for (std::size_t i = series.size() - window + 1; i < series.size(); ++i)
      if (round_decimals(series[i], state.n_p) != ref) return false;
    return true;
  };
  return stable(state.m_history) && stable(state.s_history);
}

}  // namespace mofs
