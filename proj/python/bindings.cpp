#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "manetsim/analysis.hpp"
#include "manetsim/ensemble.hpp"
#include "manetsim/sigma_grid.hpp"

namespace py = pybind11;
using namespace manet;

PYBIND11_MODULE(_manetsim, m) {
  m.doc() = "Connectivity of mobile nodes on a periodic triangular lattice";

  py::class_<LatticeConfig>(m, "LatticeConfig")
      .def(py::init<int, int>(), py::arg("L"), py::arg("z"))
      .def_readonly("L", &LatticeConfig::L)
      .def_readonly("z", &LatticeConfig::z)
      .def_property_readonly("N", &LatticeConfig::site_count);

  m.def(
      "hex_distance",
      [](std::pair<int, int> a, std::pair<int, int> b, const LatticeConfig& cfg) {
        return hex_distance(wrap(a.first, a.second, cfg),
                            wrap(b.first, b.second, cfg), cfg);
      },
      py::arg("a"), py::arg("b"), py::arg("cfg"),
      "Periodic triangular-lattice graph distance between two sites");

  m.def(
      "neighborhood_offsets",
      [](int z) {
        std::vector<std::pair<int, int>> out;
        for (const auto& o : neighborhood_offsets(z).offsets) {
          out.emplace_back(o.dq, o.dr);
        }
        return out;
      },
      py::arg("z"), "All offsets at hex distance 1..z; exactly 3z(z+1)");

  py::class_<Configuration>(m, "Configuration")
      .def_property_readonly("n0", &Configuration::node_count)
      .def_property_readonly("positions",
                             [](const Configuration& c) {
                               std::vector<std::pair<int, int>> out;
                               for (const auto& p : c.positions()) {
                                 out.emplace_back(p.q, p.r);
                               }
                               return out;
                             })
      .def("occupied", [](const Configuration& c, std::pair<int, int> site) {
        return c.occupied(wrap(site.first, site.second, c.lattice()));
      });

  m.def(
      "random_placement",
      [](const LatticeConfig& cfg, double sigma, std::uint64_t seed) {
        RngStream rng(seed);
        return random_placement(cfg, sigma, rng);
      },
      py::arg("cfg"), py::arg("sigma"), py::arg("seed"));

  m.def(
      "walk",
      [](Configuration& config, int steps, std::uint64_t seed) {
        RngStream rng(seed);
        for (int i = 0; i < steps; ++i) step(config, rng);
      },
      py::arg("config"), py::arg("steps"), py::arg("seed"),
      "Advance the exclusion walk by `steps` sweeps");

  m.def("occupancy", &occupancy);
  m.def("connectivity_sample",
        py::overload_cast<const Configuration&>(&connectivity_sample));

  py::class_<ComponentReport>(m, "ComponentReport")
      .def_readonly("sizes", &ComponentReport::sizes)
      .def_readonly("largest", &ComponentReport::largest)
      .def_readonly("n0", &ComponentReport::n0)
      .def_readonly("neighbor_probes", &ComponentReport::neighbor_probes);

  m.def("components_burning", &components_burning);
  m.def("components_unionfind", &components_unionfind);

  m.def("degree_sequence", &degree_sequence);
  m.def("mean_degree",
        py::overload_cast<const Configuration&>(&mean_degree));
  m.def("clustering_by_degree",
        py::overload_cast<const Configuration&>(&clustering_by_degree));
  m.def("knn_by_degree",
        py::overload_cast<const Configuration&>(&knn_by_degree));

  py::class_<ExperimentPlan> plan(m, "ExperimentPlan");
  plan.def(py::init<>())
      .def_readwrite("L", &ExperimentPlan::L)
      .def_readwrite("z_list", &ExperimentPlan::z_list)
      .def_readwrite("sigma_grid", &ExperimentPlan::sigma_grid)
      .def_readwrite("realizations", &ExperimentPlan::realizations)
      .def_readwrite("warmup_steps", &ExperimentPlan::warmup_steps)
      .def_readwrite("seed", &ExperimentPlan::seed)
      .def_readwrite("threads", &ExperimentPlan::threads)
      .def("validate", &ExperimentPlan::validate);

  py::class_<CurvePoint>(m, "CurvePoint")
      .def_readonly("sigma", &CurvePoint::sigma)
      .def_readonly("eta_mean", &CurvePoint::eta_mean)
      .def_readonly("eta_stderr", &CurvePoint::eta_stderr)
      .def_readonly("realizations", &CurvePoint::realizations);

  py::class_<ConnectivityCurve>(m, "ConnectivityCurve")
      .def(py::init<>())
      .def_readwrite("z", &ConnectivityCurve::z)
      .def_readwrite("L", &ConnectivityCurve::L)
      .def_readwrite("points", &ConnectivityCurve::points);

  m.def(
      "make_curve",
      [](int z, const std::vector<std::pair<double, double>>& pts) {
        ConnectivityCurve c;
        c.z = z;
        for (const auto& [sigma, eta] : pts) {
          c.points.push_back({sigma, eta, 0.0, 1});
        }
        return c;
      },
      py::arg("z"), py::arg("points"),
      "Curve from (sigma, eta) pairs, for analysis round-trips");

  m.def("run_connectivity_sweep", &run_connectivity_sweep,
        py::call_guard<py::gil_scoped_release>());

  py::class_<MetricsTable>(m, "MetricsTable")
      .def_readonly("z", &MetricsTable::z)
      .def_readonly("sigma", &MetricsTable::sigma)
      .def_readonly("accepted", &MetricsTable::accepted)
      .def_readonly("attempts", &MetricsTable::attempts)
      .def("mean_degree", &MetricsTable::mean_degree)
      .def("clustering_by_degree", &MetricsTable::clustering_by_degree)
      .def("knn_by_degree", &MetricsTable::knn_by_degree)
      .def("cutoff_degree",
           py::overload_cast<>(&MetricsTable::cutoff_degree, py::const_))
      .def("degree_distribution", [](const MetricsTable& t) {
        return t.degree_distribution().p;
      });

  m.def("run_metrics", &run_metrics, py::arg("plan"), py::arg("sigma"),
        py::arg("z"), py::arg("eta_threshold"), py::arg("epsilon") = 1e-3,
        py::call_guard<py::gil_scoped_release>());

  py::class_<LogisticFit>(m, "LogisticFit")
      .def_readonly("eta0", &LogisticFit::eta0)
      .def_readonly("g", &LogisticFit::g)
      .def_readonly("rss", &LogisticFit::rss)
      .def_readonly("reduced_chisq", &LogisticFit::reduced_chisq)
      .def_readonly("z", &LogisticFit::z);

  m.def("logistic_eta", &logistic_eta);
  m.def(
      "fit_logistic",
      [](const ConnectivityCurve& curve, double eta_min, double eta_max) {
        return fit_logistic(curve, {eta_min, eta_max});
      },
      py::arg("curve"), py::arg("eta_min") = 0.1, py::arg("eta_max") = 0.95);
  m.def("estimate_sigma_c", [](const LogisticFit& fit) {
    const SigmaCritical sc = estimate_sigma_c(fit);
    return std::make_pair(sc.sigma_mid, sc.sigma_99);
  });

  py::class_<CollapseResult>(m, "CollapseResult")
      .def_readonly("beta", &CollapseResult::beta)
      .def_readonly("residual", &CollapseResult::residual)
      .def_readonly("reference_z", &CollapseResult::reference_z)
      .def_readonly("anchor_sigma0", &CollapseResult::anchor_sigma0);

  m.def("collapse_objective", &collapse_objective, py::arg("beta"),
        py::arg("curves"), py::arg("anchor_sigma0") = 1.0,
        py::arg("reference_z") = 2);
  m.def(
      "find_beta",
      [](const std::vector<ConnectivityCurve>& curves, double beta_min,
         double beta_max, bool fit_anchor) {
        CollapseOptions opt;
        opt.beta_min = beta_min;
        opt.beta_max = beta_max;
        opt.fit_anchor = fit_anchor;
        return find_beta(curves, opt);
      },
      py::arg("curves"), py::arg("beta_min") = -1.5,
      py::arg("beta_max") = 0.0, py::arg("fit_anchor") = true);

  m.def("auto_sigma_grid", &auto_sigma_grid, py::arg("L"), py::arg("z"),
        py::arg("seed"), py::arg("warmup_steps") = -1, py::arg("threads") = 0,
        py::arg("options") = AutoGridOptions{});

  py::class_<AutoGridOptions>(m, "AutoGridOptions").def(py::init<>());

  m.def(
      "knn_linearity_fit",
      [](const std::map<int, double>& knn, int k_c) {
        const KnnLinearity fit = knn_linearity_fit(knn, k_c);
        return std::make_tuple(fit.intercept, fit.slope, fit.r_squared);
      },
      py::arg("knn"), py::arg("k_c"));

  m.attr("__version__") = "1.0.0";
}
