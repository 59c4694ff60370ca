#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <string>

#include "sgdmds/datasets.hpp"
#include "sgdmds/errors.hpp"
#include "sgdmds/sgd.hpp"
#include "sgdmds/smacof.hpp"
#include "sgdmds/stress.hpp"

namespace py = pybind11;
using namespace sgdmds;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Array to_array(const Embedding& e) {
  const auto n = static_cast<py::ssize_t>(e.size()), m = static_cast<py::ssize_t>(e.dim());
  Array out({n, m}, {m * py::ssize_t{sizeof(double)}, py::ssize_t{sizeof(double)}});
  std::copy(e.coords().begin(), e.coords().end(), out.mutable_data());
  return out;
}

Array vector_array(const std::vector<double>& v) {
  Array out({static_cast<py::ssize_t>(v.size())}, {py::ssize_t{sizeof(double)}});
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

Embedding to_embedding(const Array& a) {
  if (a.ndim() != 2) throw py::value_error("embedding must be a 2-D array");
  const auto n = static_cast<std::size_t>(a.shape(0)), m = static_cast<std::size_t>(a.shape(1));
  return Embedding(n, m, std::vector<double>(a.data(), a.data() + n * m));
}

std::vector<double> to_vector(const Array& a) {
  if (a.ndim() != 1) throw py::value_error("expected a 1-D array");
  return {a.data(), a.data() + a.size()};
}

WeightScheme weights_from(const std::string& name) {
  if (name == "uniform") return WeightScheme::uniform();
  if (name == "invsq") return WeightScheme::inverse_square();
  throw py::value_error("weights must be 'uniform' or 'invsq', got '" + name + "'");
}

ProviderMode provider_mode_from(const std::string& name) {
  if (name == "precomputed") return ProviderMode::Precomputed;
  if (name == "lazy") return ProviderMode::Lazy;
  throw py::value_error("mode must be 'precomputed' or 'lazy', got '" + name + "'");
}

std::shared_ptr<const Dataset> dataset_from(const Array& x, std::optional<std::vector<std::string>> labels) {
  if (x.ndim() != 2) throw py::value_error("features must be a 2-D array");
  const auto n = static_cast<std::size_t>(x.shape(0)), d = static_cast<std::size_t>(x.shape(1));
  return std::make_shared<const Dataset>(std::vector<double>(x.data(), x.data() + n * d), n, d,
                                         labels.value_or(std::vector<std::string>{}));
}

py::dict trace_dict(const SolverTrace& trace) {
  std::vector<std::int64_t> step;
  std::vector<double> raw, norm, lr, elapsed;
  for (const TraceEntry& e : trace.entries()) {
    step.push_back(static_cast<std::int64_t>(e.step));
    raw.push_back(e.raw_stress);
    norm.push_back(e.normalized_stress);
    lr.push_back(e.learning_rate.value_or(std::numeric_limits<double>::quiet_NaN()));
    elapsed.push_back(e.elapsed_seconds);
  }
  py::dict out;
  py::array_t<std::int64_t> steps({static_cast<py::ssize_t>(step.size())}, {py::ssize_t{sizeof(std::int64_t)}});
  std::copy(step.begin(), step.end(), steps.mutable_data());
  out["step"] = steps;
  out["raw_stress"] = vector_array(raw);
  out["normalized_stress"] = vector_array(norm);
  out["learning_rate"] = vector_array(lr);
  out["elapsed_seconds"] = vector_array(elapsed);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Stochastic gradient descent metric MDS with a SMACOF baseline";

  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_MemoryError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
  py::register_exception<DegeneratePairError>(m, "DegeneratePairError", PyExc_ValueError);

  py::class_<DissimilarityProvider, std::shared_ptr<DissimilarityProvider>>(m, "Provider")
      .def_static(
          "from_features",
          [](const Array& x, const std::string& mode) {
            auto ds = dataset_from(x, std::nullopt);
            return std::make_shared<DissimilarityProvider>(provider_mode_from(mode) == ProviderMode::Lazy
                                                               ? make_lazy_provider(ds)
                                                               : make_precomputed_provider(*ds));
          },
          py::arg("features"), py::arg("mode") = "precomputed",
          "Euclidean dissimilarities of feature rows, stored packed or computed on demand.")
      .def_static(
          "from_matrix",
          [](const Array& d) {
            if (d.ndim() != 2 || d.shape(0) != d.shape(1)) throw DataError("matrix: expected a square 2-D array");
            const auto n = static_cast<std::size_t>(d.shape(0));
            return std::make_shared<DissimilarityProvider>(
                dissimilarity_from_square({d.data(), n * n}, n, "matrix"));
          },
          py::arg("matrix"), "Precomputed provider from a symmetric matrix with zero diagonal.")
      .def_property_readonly("size", &DissimilarityProvider::size)
      .def_property_readonly("pair_count", &DissimilarityProvider::pair_count)
      .def_property_readonly("mode", [](const DissimilarityProvider& p) { return std::string(to_string(p.mode())); })
      .def("at", &DissimilarityProvider::at, py::arg("i"), py::arg("j"));

  py::class_<StressReport>(m, "StressReport")
      .def_readonly("raw_stress", &StressReport::raw_stress)
      .def_readonly("normalized_stress", &StressReport::normalized_stress)
      .def_readonly("pair_count_evaluated", &StressReport::pair_count_evaluated)
      .def("__repr__", [](const StressReport& s) {
        return "StressReport(raw_stress=" + format_real(s.raw_stress) +
               ", normalized_stress=" + format_real(s.normalized_stress) + ")";
      });

  m.def(
      "generate_blobs",
      [](std::size_t n, std::size_t d, std::size_t k, double cluster_std, double center_box, std::uint64_t seed) {
        const Dataset ds = generate_blobs({n, d, k, cluster_std, center_box, seed});
        return py::make_tuple(to_array(Embedding(ds.size(), ds.dim(), {ds.features().begin(), ds.features().end()})),
                              ds.labels());
      },
      py::arg("n"), py::arg("d") = 2, py::arg("k") = 5, py::arg("cluster_std") = 1.0, py::arg("center_box") = 10.0,
      py::arg("seed") = 0, "Gaussian blobs; returns (features, labels).");

  m.def(
      "full_stress",
      [](const DissimilarityProvider& p, const Array& y, const std::string& weights) {
        return full_stress(p, weights_from(weights), to_embedding(y));
      },
      py::arg("provider"), py::arg("embedding"), py::arg("weights") = "uniform");

  m.def(
      "sampled_stress",
      [](const DissimilarityProvider& p, const Array& y, std::size_t samples, std::uint64_t seed,
         const std::string& weights) { return sampled_stress(p, weights_from(weights), to_embedding(y), samples, seed); },
      py::arg("provider"), py::arg("embedding"), py::arg("samples"), py::arg("seed") = 0,
      py::arg("weights") = "uniform");

  m.def(
      "pair_gradient",
      [](double delta, double weight, const Array& xi, const Array& xj) {
        const PairGradient g = pair_gradient(delta, weight, to_vector(xi), to_vector(xj));
        return py::make_tuple(vector_array(g.grad_i), vector_array(g.grad_j));
      },
      py::arg("delta"), py::arg("weight"), py::arg("xi"), py::arg("xj"));

  m.def(
      "apply_pair_update",
      [](py::array_t<double, py::array::c_style> y, std::size_t i, std::size_t j, double delta, double weight,
         double eta, std::uint64_t seed) {
        if (y.ndim() != 2) throw py::value_error("embedding must be a 2-D float64 array");
        const auto n = static_cast<std::size_t>(y.shape(0)), dim = static_cast<std::size_t>(y.shape(1));
        if (i >= n || j >= n || i == j) throw py::index_error("pair indices out of range or equal");
        // The update only touches rows i and j, so work on a two-row copy.
        double* data = y.mutable_data();
        std::vector<double> rows(data + i * dim, data + (i + 1) * dim);
        rows.insert(rows.end(), data + j * dim, data + (j + 1) * dim);
        Embedding pair(2, dim, std::move(rows));
        Rng rng(seed);
        apply_pair_update(pair, 0, 1, delta, weight, eta, rng);
        std::copy(pair.row(0).begin(), pair.row(0).end(), data + i * dim);
        std::copy(pair.row(1).begin(), pair.row(1).end(), data + j * dim);
      },
      py::arg("embedding"), py::arg("i"), py::arg("j"), py::arg("delta"), py::arg("weight"), py::arg("eta"),
      py::arg("seed") = 0, "Clipped pair move applied in place to a float64 array.");

  m.def(
      "learning_rates",
      [](int epochs, double eta0, double w_min, double switch_fraction, double decay_ratio) {
        SgdConfig c;
        c.n_epochs = epochs;
        c.eta0 = eta0;
        c.switch_fraction = switch_fraction;
        c.decay_ratio = decay_ratio;
        c.validate();
        const ScheduleState s = ScheduleState::make(c, w_min);
        std::vector<double> eta(static_cast<std::size_t>(epochs));
        for (int t = 0; t < epochs; ++t) eta[static_cast<std::size_t>(t)] = learning_rate(s, t);
        return vector_array(eta);
      },
      py::arg("epochs") = 30, py::arg("eta0") = 0.5, py::arg("w_min") = 1.0, py::arg("switch_fraction") = 0.4,
      py::arg("decay_ratio") = 10.0, "Per-epoch learning rates of the hybrid schedule.");

  m.def(
      "fit_sgd",
      [](const DissimilarityProvider& p, const std::string& weights, int epochs, double eta0, std::size_t dim,
         std::uint64_t seed, const std::string& mode, std::optional<double> init_scale, double early_stop_rel_tol) {
        SgdConfig c;
        c.n_epochs = epochs;
        c.eta0 = eta0;
        c.dim = dim;
        c.rng_seed = seed;
        c.init_scale = init_scale;
        c.early_stop_rel_tol = early_stop_rel_tol;
        if (mode == "pairstream") c.mode = SgdMode::PairStream;
        else if (mode == "lazy") c.mode = SgdMode::LazySample;
        else throw py::value_error("mode must be 'pairstream' or 'lazy', got '" + mode + "'");
        const WeightScheme scheme = weights_from(weights);
        SgdResult r;
        {
          py::gil_scoped_release release;
          r = fit_sgd(p, scheme, c);
        }
        py::dict out;
        out["embedding"] = to_array(r.embedding);
        out["trace"] = trace_dict(r.trace);
        out["epochs_run"] = r.epochs_run;
        out["stopped_early"] = r.stopped_early;
        return out;
      },
      py::arg("provider"), py::arg("weights") = "uniform", py::arg("epochs") = 30, py::arg("eta0") = 0.5,
      py::arg("dim") = 2, py::arg("seed") = 0, py::arg("mode") = "pairstream", py::arg("init_scale") = py::none(),
      py::arg("early_stop_rel_tol") = 1e-3);

  m.def(
      "fit_smacof",
      [](const DissimilarityProvider& p, const std::string& weights, int max_iter, double rel_tol, std::size_t dim,
         std::uint64_t seed, std::optional<double> init_scale) {
        SmacofConfig c;
        c.max_iter = max_iter;
        c.rel_tol = rel_tol;
        c.dim = dim;
        c.rng_seed = seed;
        c.init_scale = init_scale;
        const WeightScheme scheme = weights_from(weights);
        SmacofResult r;
        {
          py::gil_scoped_release release;
          r = fit_smacof(p, scheme, c);
        }
        py::dict out;
        out["embedding"] = to_array(r.embedding);
        out["trace"] = trace_dict(r.trace);
        out["iterations"] = r.iterations;
        out["converged"] = r.converged;
        return out;
      },
      py::arg("provider"), py::arg("weights") = "uniform", py::arg("max_iter") = 300, py::arg("rel_tol") = 1e-4,
      py::arg("dim") = 2, py::arg("seed") = 0, py::arg("init_scale") = py::none());
}
