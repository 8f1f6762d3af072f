#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "mofs/baselines.hpp"
#include "mofs/config.hpp"
#include "mofs/pipeline.hpp"

namespace py = pybind11;

namespace {

mofs::FeatureMask mask_from_bits(const std::vector<int>& bits) {
  mofs::FeatureMask mask(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) mask.bits[i] = bits[i] ? 1 : 0;
  return mask;
}

py::array_t<double> matrix_array(const std::vector<double>& values, std::size_t rows,
                                 std::size_t cols) {
  py::array_t<double> out({rows, cols});
  std::copy(values.begin(), values.end(), out.mutable_data());
  return out;
}

mofs::Config config_from_text(const std::string& text) {
  return text.empty() ? mofs::Config{} : mofs::config_from_json_text(text);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multi-objective feature selection core";

  py::register_exception<mofs::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<mofs::DataError>(m, "DataError", PyExc_ValueError);

  py::class_<mofs::Dataset>(m, "Dataset")
      .def_readonly("feature_names", &mofs::Dataset::feature_names)
      .def_property_readonly("n_samples",
                             [](const mofs::Dataset& d) { return d.n_samples; })
      .def_property_readonly("n_features",
                             [](const mofs::Dataset& d) { return d.n_features; })
      .def_property_readonly("x",
                             [](const mofs::Dataset& d) {
                               return matrix_array(d.x, d.n_samples, d.n_features);
                             })
      .def_property_readonly("y",
                             [](const mofs::Dataset& d) {
                               py::array_t<int> out(d.y.size());
                               std::copy(d.y.begin(), d.y.end(), out.mutable_data());
                               return out;
                             })
      .def("__repr__", [](const mofs::Dataset& d) {
        return "<mofs.Dataset " + std::to_string(d.n_samples) + "x" +
               std::to_string(d.n_features) + ">";
      });

  py::class_<mofs::Fitness>(m, "Fitness")
      .def_readonly("sensitivity", &mofs::Fitness::sensitivity)
      .def_readonly("specificity", &mofs::Fitness::specificity)
      .def_readonly("auc", &mofs::Fitness::auc)
      .def_readonly("accuracy", &mofs::Fitness::accuracy)
      .def("__repr__", [](const mofs::Fitness& f) {
        return "<mofs.Fitness sen=" + std::to_string(f.sensitivity) +
               " spe=" + std::to_string(f.specificity) + " auc=" + std::to_string(f.auc) +
               " acc=" + std::to_string(f.accuracy) + ">";
      });

  m.def(
      "generate_synthetic",
      [](std::size_t samples, std::size_t informative, std::size_t redundant,
         std::size_t noise, double delta, double rho, std::uint64_t seed) {
        mofs::SyntheticSpec spec;
        spec.n_samples = samples;
        spec.n_informative = informative;
        spec.n_redundant = redundant;
        spec.n_noise = noise;
        spec.delta = delta;
        spec.rho = rho;
        spec.seed = seed;
        return mofs::generate_synthetic(spec);
      },
      py::arg("samples"), py::arg("informative"), py::arg("redundant"), py::arg("noise"),
      py::arg("delta"), py::arg("rho"), py::arg("seed"));

  m.def("load_csv", &mofs::load_csv, py::arg("path"), py::arg("label_column"),
        py::arg("group_column") = "");
  m.def("write_csv", &mofs::write_csv, py::arg("data"), py::arg("path"));

  m.def("correlation_matrix", [](const mofs::Dataset& data) {
    const mofs::CorrMatrix corr = mofs::correlation_matrix(data);
    return matrix_array(corr.r, corr.n, corr.n);
  });

  m.def(
      "stratified_folds",
      [](const mofs::Dataset& data, int k, std::uint64_t seed) {
        const mofs::FoldPlan plan = mofs::stratified_folds(data, k, seed);
        std::vector<std::pair<std::vector<int>, std::vector<int>>> folds;
        for (const auto& fold : plan.folds) folds.emplace_back(fold.train, fold.validation);
        return folds;
      },
      py::arg("data"), py::arg("k"), py::arg("seed"));

  m.def(
      "auc",
      [](const std::vector<double>& scores, const std::vector<int>& labels) {
        return mofs::auc(scores, labels);
      },
      py::arg("scores"), py::arg("labels"));

  m.def(
      "evaluate_mask",
      [](const mofs::Dataset& data, const std::vector<int>& mask_bits, int cv_folds,
         std::uint64_t seed, double gamma, double ridge) {
        const mofs::FoldPlan folds = mofs::stratified_folds(data, cv_folds, seed);
        return mofs::evaluate_mask(mask_from_bits(mask_bits), data, folds, gamma, ridge);
      },
      py::arg("data"), py::arg("mask"), py::arg("cv_folds") = 2, py::arg("seed") = 1,
      py::arg("gamma") = 0.0, py::arg("ridge") = 1.0);

  m.def(
      "run_json",
      [](const mofs::Dataset& data, const std::string& config_text,
         std::optional<mofs::Dataset> test) {
        const mofs::Config cfg = config_from_text(config_text);
        const mofs::RunResult result =
            mofs::run_pipeline(data, test ? &*test : nullptr, cfg);
        return mofs::report_text(result);
      },
      py::arg("data"), py::arg("config_text") = "", py::arg("test") = py::none());

  m.def(
      "sweep_json",
      [](const mofs::Dataset& data, const std::string& param,
         const std::string& config_text) {
        const mofs::Config cfg = config_from_text(config_text);
        const auto rows = mofs::sweep(data, cfg, param);
        return mofs::sweep_report_text(cfg, param, rows);
      },
      py::arg("data"), py::arg("param"), py::arg("config_text") = "");

  m.def(
      "sfs_auc",
      [](const mofs::Dataset& data, int max_features, int cv_folds, std::uint64_t seed) {
        const mofs::FoldPlan folds = mofs::stratified_folds(data, cv_folds, seed);
        const int cap = max_features > 0 ? max_features : static_cast<int>(data.n_features);
        return mofs::sfs_auc(data, folds, cap).selected_indices();
      },
      py::arg("data"), py::arg("max_features") = 0, py::arg("cv_folds") = 2,
      py::arg("seed") = 1);

  m.def(
      "relief_rank",
      [](const mofs::Dataset& data, std::uint64_t seed, int n_probes) {
        const mofs::Ranking ranking = mofs::relief_rank(
            data, seed, n_probes > 0 ? n_probes : static_cast<int>(data.n_samples));
        return std::make_pair(ranking.weights, ranking.order);
      },
      py::arg("data"), py::arg("seed") = 1, py::arg("n_probes") = 0);

  m.def(
      "er_combine",
      [](const std::vector<std::vector<double>>& beta, const std::array<double, 4>& omega) {
        if (beta.size() != 4) throw std::invalid_argument("belief matrix must have 4 rows");
        mofs::BeliefMatrix belief;
        belief.n_ref = static_cast<int>(beta.front().size());
        for (int i = 0; i < 4; ++i) belief.beta[i] = beta[i];
        mofs::Weights w;
        w.omega = omega;
        return mofs::er_combine(belief, w);
      },
      py::arg("beta"), py::arg("omega"));

  m.def(
      "select_solution",
      [](const std::vector<double>& sen, const std::vector<double>& spe,
         const std::vector<double>& auc_values, const std::vector<double>& acc,
         const std::vector<std::vector<int>>& masks, const std::array<double, 4>& omega,
         int n_ref) {
        std::vector<mofs::Solution> pareto;
        for (std::size_t i = 0; i < sen.size(); ++i) {
          mofs::Solution sol;
          sol.mask = mask_from_bits(masks.at(i));
          sol.fitness = {sen[i], spe[i], auc_values[i], acc[i]};
          sol.evaluated = true;
          pareto.push_back(std::move(sol));
        }
        mofs::Weights w;
        w.omega = omega;
        const mofs::SelectionResult sel = mofs::utility_select(pareto, w, n_ref);
        return py::make_tuple(sel.index, sel.utility, sel.utilities);
      },
      py::arg("sen"), py::arg("spe"), py::arg("auc"), py::arg("acc"), py::arg("masks"),
      py::arg("omega"), py::arg("n_ref") = 5);

  m.attr("__version__") = "0.1.0";
}
