#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <fstream>
#include <sstream>

#include "hsp/bench.hpp"
#include "hsp/errors.hpp"
#include "hsp/gen.hpp"
#include "hsp/graph.hpp"
#include "hsp/heuristics.hpp"
#include "hsp/io.hpp"
#include "hsp/oracle.hpp"
#include "hsp/solution.hpp"

namespace py = pybind11;
using namespace hsp;

namespace {

using EdgeTuple = std::tuple<NodeId, NodeId, double>;

std::vector<Edge> to_edges(const std::vector<EdgeTuple>& triples) {
  std::vector<Edge> edges;
  edges.reserve(triples.size());
  for (const auto& [u, v, w] : triples) edges.push_back({u, v, w});
  return edges;
}

std::vector<EdgeTuple> edge_tuples(const WeightedGraph& g) {
  std::vector<EdgeTuple> out;
  for (const auto& e : g.edges()) out.emplace_back(e.u, e.v, e.w);
  return out;
}

Budget make_budget(std::optional<std::uint64_t> iterations, std::optional<double> seconds) {
  Budget b;
  b.max_iterations = iterations;
  if (seconds) b.max_wall_time = std::chrono::duration<double>(*seconds);
  if (!iterations && !seconds) b.max_iterations = 10000;
  return b;
}

// Keyword overrides on top of a solver's defaults.
SolverParams make_params(bool opportunistic, std::size_t k, std::uint64_t seed, const py::kwargs& kw) {
  SolverParams p = opportunistic ? ovns_defaults(k) : bvns_defaults(k);
  p.seed = seed;
  for (const auto& item : kw) {
    const auto key = item.first.cast<std::string>();
    const auto value = py::reinterpret_borrow<py::object>(item.second);
    if (key == "p_min") p.p_min = value.cast<std::size_t>();
    else if (key == "p_max") p.p_max = value.cast<std::size_t>();
    else if (key == "p_step") p.p_step = value.cast<std::size_t>();
    else if (key == "q") p.q = value.cast<double>();
    else if (key == "init") p.init_mode = parse_init_mode(value.cast<std::string>());
    else if (key == "init_draws") p.init_draws = value.cast<std::size_t>();
    else if (key == "shake") p.shake_mode = parse_shake_mode(value.cast<std::string>());
    else if (key == "search") p.search_mode = parse_search_mode(value.cast<std::string>());
    else throw py::type_error("unexpected keyword argument '" + key + "'");
  }
  return p;
}

py::dict summary_dict(const AlgorithmSummary& s) {
  py::dict d;
  d["algorithm"] = s.algorithm;
  d["runs"] = s.runs;
  d["mean_deviation"] = s.mean_deviation;
  d["median_deviation"] = s.median_deviation;
  d["mean_rank"] = s.mean_rank;
  d["median_rank"] = s.median_rank;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Heaviest k-subgraph heuristics (OVNS/BVNS), exact oracle, generators and benchmark harness.";

  auto value_error = py::handle(PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", value_error);
  py::register_exception<ParseError>(m, "ParseError", value_error);
  py::register_exception<TooLargeError>(m, "TooLargeError", PyExc_RuntimeError);
  py::register_exception<LogicError>(m, "LogicError", PyExc_RuntimeError);

  py::class_<WeightedGraph>(m, "Graph")
      .def(py::init([](const std::vector<EdgeTuple>& edges, bool aggregate, std::size_t n) {
             return build_graph(to_edges(edges), aggregate, n);
           }),
           py::arg("edges"), py::arg("aggregate") = false, py::arg("node_count") = 0,
           "Build from (u, v, w) triples. node_count = 0 infers it from the largest id.")
      .def_property_readonly("node_count", &WeightedGraph::node_count)
      .def_property_readonly("edge_count", &WeightedGraph::edge_count)
      .def_property_readonly("total_weight", &WeightedGraph::total_weight)
      .def("strength", &WeightedGraph::strength, py::arg("u"))
      .def("strengths",
           [](const WeightedGraph& g) {
             return std::vector<double>(g.strengths().begin(), g.strengths().end());
           })
      .def("degree", &WeightedGraph::degree, py::arg("u"))
      .def("weight", &WeightedGraph::weight, py::arg("u"), py::arg("v"))
      .def("has_edge", &WeightedGraph::has_edge, py::arg("u"), py::arg("v"))
      .def("neighbors",
           [](const WeightedGraph& g, NodeId u) {
             std::vector<std::pair<NodeId, double>> out;
             for (const auto& nb : g.neighbors(u)) out.emplace_back(nb.node, nb.weight);
             return out;
           },
           py::arg("u"))
      .def("edges", &edge_tuples, "Edges as (u, v, w) with u < v, sorted.")
      .def("__eq__", [](const WeightedGraph& a, const WeightedGraph& b) { return a == b; })
      .def("__repr__", [](const WeightedGraph& g) {
        return "<hsp.Graph n=" + std::to_string(g.node_count()) +
               " edges=" + std::to_string(g.edge_count()) + ">";
      });

  m.def("threshold_edges", &threshold_edges, py::arg("graph"), py::arg("q"),
        "Keep the ceil(q * |E|) heaviest edges.");
  m.def("objective",
        [](const WeightedGraph& g, const std::vector<NodeId>& nodes) { return objective_of(g, nodes); },
        py::arg("graph"), py::arg("nodes"), "Total weight of the subgraph induced by nodes.");

  py::class_<RunResult>(m, "RunResult")
      .def_readonly("best_set", &RunResult::best_set)
      .def_readonly("best_objective", &RunResult::best_objective)
      .def_readonly("iterations", &RunResult::iterations)
      .def_readonly("wall_time_s", &RunResult::wall_time_s)
      .def_readonly("seed", &RunResult::seed)
      .def_property_readonly("trace",
                             [](const RunResult& r) {
                               std::vector<std::pair<std::uint64_t, double>> out;
                               for (const auto& e : r.trace) out.emplace_back(e.iteration, e.objective);
                               return out;
                             })
      .def("__repr__", [](const RunResult& r) {
        return "<hsp.RunResult objective=" + io::format_number(r.best_objective) +
               " iterations=" + std::to_string(r.iterations) + ">";
      });

  const char* solver_doc =
      "Run the solver with an iteration and/or wall-time budget (10000 iterations when neither "
      "is given). Keyword overrides: p_min, p_max, p_step, q, init, init_draws, shake, search.";
  m.def(
      "ovns",
      [](const WeightedGraph& g, std::size_t k, std::uint64_t seed,
         std::optional<std::uint64_t> iterations, std::optional<double> seconds,
         const py::kwargs& kw) {
        const auto params = make_params(true, k, seed, kw);
        const auto budget = make_budget(iterations, seconds);
        py::gil_scoped_release release;
        return ovns(g, params, budget);
      },
      py::arg("graph"), py::arg("k"), py::kw_only(), py::arg("seed") = 0,
      py::arg("iterations") = py::none(), py::arg("seconds") = py::none(), solver_doc);
  m.def(
      "bvns",
      [](const WeightedGraph& g, std::size_t k, std::uint64_t seed,
         std::optional<std::uint64_t> iterations, std::optional<double> seconds,
         const py::kwargs& kw) {
        const auto params = make_params(false, k, seed, kw);
        const auto budget = make_budget(iterations, seconds);
        py::gil_scoped_release release;
        return bvns(g, params, budget);
      },
      py::arg("graph"), py::arg("k"), py::kw_only(), py::arg("seed") = 0,
      py::arg("iterations") = py::none(), py::arg("seconds") = py::none(), solver_doc);
  m.def("drop_heuristic", &drop_heuristic, py::arg("graph"), py::arg("k"));

  py::class_<ExactResult>(m, "ExactResult")
      .def_readonly("best_set", &ExactResult::best_set)
      .def_readonly("best_objective", &ExactResult::best_objective)
      .def_readonly("subsets_examined", &ExactResult::subsets_examined);
  m.def("exact", &exact_hsp, py::arg("graph"), py::arg("k"),
        py::arg("limit") = kDefaultEnumerationLimit, py::call_guard<py::gil_scoped_release>());
  m.def(
      "local_opt_check",
      [](const WeightedGraph& g, const std::vector<NodeId>& nodes, double rel_tol) -> py::object {
        const auto r = local_opt_check(g, nodes, rel_tol);
        if (r.is_local_optimum) return py::none();
        return py::make_tuple(r.witness->out, r.witness->in, r.witness->delta);
      },
      py::arg("graph"), py::arg("nodes"), py::arg("rel_tol") = 1e-9,
      "None for a 1-swap local optimum, otherwise an improving (out, in, delta).");

  m.def("bbv", &gen::bbv, py::arg("n"), py::arg("m") = 2, py::arg("w0") = 1.0,
        py::arg("delta") = 1.0, py::arg("seed") = 0);
  m.def("mdp_gaussian", &gen::mdp_gaussian, py::arg("n"), py::arg("mu") = 50.0,
        py::arg("sigma") = 10.0, py::arg("seed") = 0);
  m.def(
      "gnp_weighted",
      [](std::size_t n, double p_edge, const std::string& weights, double a, double b, double alpha,
         double x_min, std::uint64_t seed) {
        gen::WeightDist dist = gen::UniformWeights{a, b};
        if (weights == "pareto") dist = gen::ParetoWeights{alpha, x_min};
        else if (weights != "uniform") throw ParamError("weights must be 'uniform' or 'pareto'");
        return gen::gnp_weighted(n, p_edge, dist, seed);
      },
      py::arg("n"), py::arg("p_edge"), py::arg("weights") = "uniform", py::arg("a") = 1.0,
      py::arg("b") = 1.0, py::arg("alpha") = 2.0, py::arg("x_min") = 1.0, py::arg("seed") = 0);

  m.def(
      "read_instance",
      [](const std::filesystem::path& path, const std::string& format) {
        auto inst = io::load_instance(path, io::parse_format(format));
        return py::make_tuple(std::move(inst.graph), std::move(inst.labels), inst.declared_k);
      },
      py::arg("path"), py::arg("format") = "auto",
      "Returns (graph, labels, declared_k); declared_k is None for edge lists.");
  m.def(
      "write_edgelist",
      [](const std::filesystem::path& path, const WeightedGraph& g,
         const std::vector<std::string>& labels) { io::write_edgelist(path, g, labels); },
      py::arg("path"), py::arg("graph"), py::arg("labels") = std::vector<std::string>{});
  m.def(
      "write_matrix",
      [](const std::filesystem::path& path, const WeightedGraph& g, std::size_t k) {
        io::write_matrix(path, g, k);
      },
      py::arg("path"), py::arg("graph"), py::arg("k"));

  m.def("relative_deviation", &bench::relative_deviation, py::arg("f_star"), py::arg("f"));
  m.def("rank_pool", &bench::rank_pool, py::arg("objectives"));
  m.def(
      "run_bench",
      [](const std::filesystem::path& config, std::optional<std::filesystem::path> out_dir) {
        const auto cfg = bench::load_config(config);
        BenchReport report;
        {
          py::gil_scoped_release release;
          report = bench::run_bench(cfg);
        }
        if (out_dir) {
          std::filesystem::create_directories(*out_dir);
          std::ofstream csv(*out_dir / "bench.csv");
          io::write_bench_csv(csv, report);
          std::ofstream jsonl(*out_dir / "runs.jsonl");
          io::write_bench_jsonl(jsonl, report);
        }
        py::list summaries;
        for (const auto& s : report.summaries) summaries.append(summary_dict(s));
        std::ostringstream csv_text;
        io::write_bench_csv(csv_text, report);
        py::dict out;
        out["summaries"] = summaries;
        out["csv"] = csv_text.str();
        return out;
      },
      py::arg("config"), py::arg("out_dir") = py::none(),
      "Run a JSON benchmark config; optionally write bench.csv and runs.jsonl to out_dir.");
}
