#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

#include "pcurv/closed_forms.hpp"
#include "pcurv/graph.hpp"
#include "pcurv/graph_io.hpp"
#include "pcurv/operators.hpp"
#include "pcurv/product.hpp"
#include "pcurv/solver.hpp"
#include "pcurv/verify.hpp"

namespace py = pybind11;
using namespace pcurv;

namespace {

Dimension dimension_from(double m) {
  return std::isinf(m) ? Dimension::infinite() : Dimension::finite(m);
}

VertexFunction function_from_dict(const WeightedGraph& g, const py::dict& values) {
  VertexFunction f(g.vertex_count());
  for (const auto& item : values)
    f.set(g.require(item.first.cast<std::string>()), item.second.cast<double>());
  return f;
}

py::dict function_to_dict(const WeightedGraph& g, const VertexFunction& f) {
  py::dict out;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (f.is_defined(v)) out[py::str(g.label(v))] = f[v];
  return out;
}

std::string status_name(CurvatureEstimate::Status status) {
  switch (status) {
    case CurvatureEstimate::Status::Converged:
      return "converged";
    case CurvatureEstimate::Status::DivergingToMinusInfinity:
      return "diverging_to_minus_infinity";
    case CurvatureEstimate::Status::Degenerate:
      return "degenerate";
  }
  return "unknown";
}

SolverConfig config_from_kwargs(int restarts, std::uint64_t seed, int max_iterations,
                                double value_tolerance, double step_tolerance,
                                bool probe_divergence, int workers) {
  SolverConfig cfg;
  cfg.restarts = restarts;
  cfg.seed = seed;
  cfg.max_iterations = max_iterations;
  cfg.value_tolerance = value_tolerance;
  cfg.step_tolerance = step_tolerance;
  cfg.probe_divergence = probe_divergence;
  cfg.workers = workers;
  cfg.validate();
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_pcurv, m) {
  m.doc() = "weighted-graph p-Laplacian operators and p-Bakry-Emery curvature";

  py::register_exception<ParseError>(m, "ParseError");
  py::register_exception<UnknownVertex>(m, "UnknownVertexError");
  py::register_exception<MissingValue>(m, "MissingValueError");
  py::register_exception<DegenerateFunction>(m, "DegenerateFunctionError");
  py::register_exception<BallTooLarge>(m, "BallTooLargeError");

  py::class_<WeightedGraph>(m, "Graph")
      .def_property_readonly("vertex_count", &WeightedGraph::vertex_count)
      .def_property_readonly("edge_count", &WeightedGraph::edge_count)
      .def("label", &WeightedGraph::label, py::arg("v"))
      .def("labels",
           [](const WeightedGraph& g) {
             std::vector<std::string> out;
             for (int v = 0; v < g.vertex_count(); ++v) out.push_back(g.label(v));
             return out;
           })
      .def("find", &WeightedGraph::find, py::arg("label"))
      .def("degree", &WeightedGraph::degree, py::arg("v"))
      .def("mu", &WeightedGraph::mu, py::arg("v"))
      .def("weight", &WeightedGraph::weight, py::arg("u"), py::arg("v"))
      .def("__repr__", [](const WeightedGraph& g) {
        return "<pcurv.Graph " + std::to_string(g.vertex_count()) + " vertices, " +
               std::to_string(g.edge_count()) + " edges>";
      });

  m.def("make_path", &make_path, py::arg("n"));
  m.def("make_cycle", &make_cycle, py::arg("d"));
  m.def("make_star", &make_star, py::arg("center_degree"));
  m.def("make_complete", &make_complete, py::arg("n"));
  m.def("make_hypercube", &make_hypercube, py::arg("dim"));
  m.def("cartesian_product", &cartesian_product, py::arg("g1"), py::arg("g2"));
  m.def("parse_graph", [](const std::string& text) { return parse_graph(text); },
        py::arg("text"));
  m.def("serialize_graph", &serialize_graph, py::arg("graph"));

  m.def(
      "phi_p", [](double t, double p) { return phi_p(t, PValue(p)); }, py::arg("t"),
      py::arg("p"));

  // Pointwise operators; f maps vertex labels to values.
  m.def(
      "delta_p",
      [](const WeightedGraph& g, const py::dict& f, const std::string& x, double p) {
        return delta_p(g, function_from_dict(g, f), g.require(x), PValue(p));
      },
      py::arg("graph"), py::arg("f"), py::arg("x"), py::arg("p"));
  m.def(
      "gamma_p",
      [](const WeightedGraph& g, const py::dict& f, const std::string& x, double p) {
        return gamma_p(g, function_from_dict(g, f), g.require(x), PValue(p));
      },
      py::arg("graph"), py::arg("f"), py::arg("x"), py::arg("p"));
  m.def(
      "gamma2_p",
      [](const WeightedGraph& g, const py::dict& f, const std::string& x, double p) {
        return gamma2_p(g, function_from_dict(g, f), g.require(x), PValue(p));
      },
      py::arg("graph"), py::arg("f"), py::arg("x"), py::arg("p"));
  m.def(
      "cd_gap",
      [](const WeightedGraph& g, const py::dict& f, const std::string& x, double p, double m_,
         double K) {
        return cd_gap(g, function_from_dict(g, f), g.require(x), PValue(p),
                      dimension_from(m_), K);
      },
      py::arg("graph"), py::arg("f"), py::arg("x"), py::arg("p"), py::arg("m"), py::arg("K"));
  m.def(
      "cd_ratio",
      [](const WeightedGraph& g, const py::dict& f, const std::string& x, double p,
         double m_) {
        return cd_ratio(g, function_from_dict(g, f), g.require(x), PValue(p),
                        dimension_from(m_));
      },
      py::arg("graph"), py::arg("f"), py::arg("x"), py::arg("p"), py::arg("m"));

  m.def(
      "star_leaf_curvature",
      [](int center_degree, double p) { return star_leaf_curvature(center_degree, PValue(p)); },
      py::arg("center_degree"), py::arg("p"));
  m.def(
      "path_leaf_curvature", [](double p) { return path_leaf_curvature(PValue(p)); },
      py::arg("p"));
  m.def(
      "negativity_threshold", [](double p) { return negativity_threshold(PValue(p)); },
      py::arg("p"));
  m.def(
      "aux_g", [](double y, double p) { return aux_g(y, PValue(p)); }, py::arg("y"),
      py::arg("p"));
  m.def(
      "aux_g_min",
      [](double p) {
        const ScalarMin s = aux_g_min(PValue(p));
        return py::make_tuple(s.argmin, s.value);
      },
      py::arg("p"));
  m.def(
      "aux_h",
      [](double z, double x, double p) { return aux_h(z, x, PValue(p)); }, py::arg("z"),
      py::arg("x"), py::arg("p"));
  m.def(
      "aux_h_min",
      [](double x, double p) {
        const ScalarMin s = aux_h_min(x, PValue(p));
        return py::make_tuple(s.argmin, s.value);
      },
      py::arg("x"), py::arg("p"));

  m.def(
      "estimate_curvature",
      [](const WeightedGraph& g, const std::string& x, double p, double m_, int restarts,
         std::uint64_t seed, int max_iterations, double value_tolerance, double step_tolerance,
         bool probe, int workers) {
        const SolverConfig cfg =
            config_from_kwargs(restarts, seed, max_iterations, value_tolerance, step_tolerance,
                               probe, workers);
        const CurvatureEstimate est =
            estimate_curvature(g, g.require(x), PValue(p), dimension_from(m_), cfg);
        py::dict out;
        out["status"] = status_name(est.status);
        if (est.status == CurvatureEstimate::Status::Converged) out["value"] = est.value;
        out["witness"] = function_to_dict(g, est.witness);
        out["restarts_used"] = est.restarts_used;
        out["best_per_restart"] = est.best_per_restart;
        if (est.evidence) {
          py::dict ev;
          ev["t"] = est.evidence->t;
          ev["ratio"] = est.evidence->ratio;
          ev["sphere_vertex"] =
              est.evidence->sphere_vertex >= 0 ? py::object(py::str(g.label(est.evidence->sphere_vertex)))
                                               : py::object(py::none());
          out["evidence"] = ev;
        }
        return out;
      },
      py::arg("graph"), py::arg("x"), py::arg("p"), py::arg("m"), py::arg("restarts") = 64,
      py::arg("seed") = 0, py::arg("max_iterations") = 400,
      py::arg("value_tolerance") = 1e-9, py::arg("step_tolerance") = 1e-10,
      py::arg("probe_divergence") = true, py::arg("workers") = 1);

  m.def(
      "brute_force_curvature",
      [](const WeightedGraph& g, const std::string& x, double p, double m_,
         int grid_resolution, double range_bound) {
        return brute_force_curvature(g, g.require(x), PValue(p), dimension_from(m_),
                                     grid_resolution, range_bound);
      },
      py::arg("graph"), py::arg("x"), py::arg("p"), py::arg("m"),
      py::arg("grid_resolution") = 11, py::arg("range_bound") = 2.5);

  m.def(
      "check_cd",
      [](const WeightedGraph& g, const std::string& x, double p, double m_, double K,
         int restarts, std::uint64_t seed) {
        const SolverConfig cfg = config_from_kwargs(restarts, seed, 400, 1e-9, 1e-10, true, 1);
        const CdVerdict v = check_cd(g, g.require(x), PValue(p), dimension_from(m_), K, cfg);
        py::dict out;
        out["falsified"] = v.falsified;
        out["gap"] = v.gap;
        if (v.witness) out["witness"] = function_to_dict(g, *v.witness);
        return out;
      },
      py::arg("graph"), py::arg("x"), py::arg("p"), py::arg("m"), py::arg("K"),
      py::arg("restarts") = 64, py::arg("seed") = 0);

  m.def(
      "curvature_profile",
      [](const WeightedGraph& g, const std::string& x, double p, const std::vector<double>& ms,
         int restarts, std::uint64_t seed) {
        const SolverConfig cfg = config_from_kwargs(restarts, seed, 400, 1e-9, 1e-10, true, 1);
        std::vector<Dimension> dims;
        for (double m_ : ms) dims.push_back(dimension_from(m_));
        py::list out;
        for (const CurvatureEstimate& est :
             curvature_profile(g, g.require(x), PValue(p), dims, cfg)) {
          py::dict item;
          item["status"] = status_name(est.status);
          if (est.status == CurvatureEstimate::Status::Converged) item["value"] = est.value;
          out.append(item);
        }
        return out;
      },
      py::arg("graph"), py::arg("x"), py::arg("p"), py::arg("m_list"),
      py::arg("restarts") = 64, py::arg("seed") = 0);

  m.def(
      "gamma2_decomposition_gap",
      [](const WeightedGraph& g1, const WeightedGraph& g2, const py::dict& f,
         const std::string& x, const std::string& y, double p) {
        const WeightedGraph prod = cartesian_product(g1, g2);
        const GapBreakdown gb = gamma2_decomposition_gap(
            g1, g2, function_from_dict(prod, f), g1.require(x), g2.require(y), PValue(p));
        py::dict out;
        out["gap"] = gb.gap;
        out["direct"] = gb.direct;
        out["closed_form"] = gb.closed_form;
        py::list pairs;
        for (const PairTerm& t : gb.per_pair)
          pairs.append(py::make_tuple(g1.label(t.xi), g2.label(t.yk), t.value));
        out["per_pair"] = pairs;
        return out;
      },
      py::arg("g1"), py::arg("g2"), py::arg("f"), py::arg("x"), py::arg("y"), py::arg("p"));

  m.def(
      "counterexample_function",
      [](const WeightedGraph& g1, const WeightedGraph& g2, const std::string& x,
         const std::string& y) {
        const WeightedGraph prod = cartesian_product(g1, g2);
        return function_to_dict(prod,
                                counterexample_function(g1, g2, g1.require(x), g2.require(y)));
      },
      py::arg("g1"), py::arg("g2"), py::arg("x"), py::arg("y"));

  m.def(
      "verify_product_superadditivity_failure",
      [](const WeightedGraph& g1, const WeightedGraph& g2, const std::string& x,
         const std::string& y, double p) {
        return verify_product_superadditivity_failure(g1, g2, g1.require(x), g2.require(y),
                                                      PValue(p));
      },
      py::arg("g1"), py::arg("g2"), py::arg("x"), py::arg("y"), py::arg("p"));

  m.def(
      "run_verify",
      [](const std::string& level) {
        const auto results = pcurv::verify::run_suite(level == "full");
        py::list out;
        for (const auto& r : results) {
          py::dict item;
          item["id"] = r.id;
          item["name"] = r.name;
          item["passed"] = r.passed;
          item["detail"] = r.detail;
          item["ms"] = r.millis;
          out.append(item);
        }
        return out;
      },
      py::arg("level") = "quick");

#ifdef VERSION_INFO
#define PCURV_STR(x) #x
#define PCURV_XSTR(x) PCURV_STR(x)
  m.attr("__version__") = PCURV_XSTR(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
