#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "metanet/bestest.hpp"
#include "metanet/error.hpp"
#include "metanet/inference.hpp"
#include "metanet/landscape.hpp"
#include "metanet/metrics.hpp"
#include "metanet/models.hpp"
#include "metanet/neosbm.hpp"
#include "metanet/netcore.hpp"
#include "metanet/synthgen.hpp"

namespace py = pybind11;
using namespace metanet;

namespace {

Graph make_graph(int n, const std::vector<Edge>& edges) { return Graph(n, edges); }

py::dict state_dict(const NeoState& s) {
  py::dict d;
  d["groups"] = s.groups;
  d["red"] = std::vector<int>(s.red.begin(), s.red.end());
  d["q"] = s.q;
  d["L_base"] = s.l_base;
  d["objective"] = s.objective;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Blockmodel entropy tests, neoSBM and partition metrics";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_OverflowError);

  py::class_<Graph>(m, "Graph")
      .def(py::init(&make_graph), py::arg("n_nodes"), py::arg("edges"))
      .def_property_readonly("n_nodes", &Graph::n_nodes)
      .def_property_readonly("n_edges", &Graph::n_edges)
      .def_property_readonly("node_names", &Graph::node_names)
      .def("degree", &Graph::degree)
      .def("edges", &Graph::edges);

  m.def("load_edge_list", &load_edge_list_file, py::arg("path"));
  m.def("load_labels", [](const std::string& path, const Graph& g) { return load_labels_file(path, g).assignment(); },
        py::arg("path"), py::arg("graph"));

  m.def(
      "score",
      [](const Graph& g, const std::vector<int>& labels, const std::string& model) {
        return evaluate(parse_model(model), g, Partition(labels)).value;
      },
      py::arg("graph"), py::arg("labels"), py::arg("model") = "sbm");

  m.def(
      "bestest",
      [](const Graph& g, const std::vector<int>& labels, const std::string& model, std::int64_t permutations,
         std::uint64_t seed, bool exhaustive, int threads) {
        TestOptions opt;
        opt.model = parse_model(model);
        opt.permutations = permutations;
        opt.seed = seed;
        opt.mode = exhaustive ? TestMode::exhaustive : TestMode::monte_carlo;
        opt.threads = threads;
        TestResult r;
        {
          py::gil_scoped_release release;
          r = run_bestest(g, Partition(labels), opt);
        }
        py::dict d;
        d["p_value"] = r.p_value;
        d["observed"] = r.observed.value;
        d["null_mean"] = r.null_mean;
        d["null_sd"] = r.null_sd;
        d["extreme_count"] = r.extreme_count;
        d["samples"] = r.null_samples;
        return d;
      },
      py::arg("graph"), py::arg("labels"), py::arg("model") = "sbm", py::arg("permutations") = 100000,
      py::arg("seed") = 1, py::arg("exhaustive") = false, py::arg("threads") = 0);

  m.def("nmi", [](const std::vector<int>& a, const std::vector<int>& b) { return nmi(Partition(a), Partition(b)); });
  m.def("ami", [](const std::vector<int>& a, const std::vector<int>& b) { return ami(Partition(a), Partition(b)); });
  m.def("vi", [](const std::vector<int>& a, const std::vector<int>& b) { return vi(Partition(a), Partition(b)); });
  m.def("expected_mi",
        [](const std::vector<int>& a, const std::vector<int>& b) { return expected_mi(Partition(a), Partition(b)); });
  m.def("bell_number", &bell_number);
  m.def("homogeneity", [](const std::vector<int>& a) { return homogeneity_profile(Partition(a)); });

  m.def(
      "fit",
      [](const Graph& g, int k, const std::string& objective, int sweeps, int restarts, std::uint64_t seed) {
        FitOptions fo;
        fo.k_groups = k;
        fo.objective = parse_objective(objective);
        fo.sweeps = sweeps;
        fo.restarts = restarts;
        fo.seed = seed;
        FitResult r;
        {
          py::gil_scoped_release release;
          r = fit_blockmodel(g, fo);
        }
        return py::make_tuple(r.partition.assignment(), r.loglik);
      },
      py::arg("graph"), py::arg("k"), py::arg("objective") = "sbm", py::arg("sweeps") = 200, py::arg("restarts") = 20,
      py::arg("seed") = 1);

  m.def(
      "neosbm",
      [](const Graph& g, const std::vector<int>& metadata, double theta, const std::string& model, int sweeps,
         int restarts, std::uint64_t seed, bool exhaustive) {
        NeoConfig cfg;
        cfg.theta = theta;
        cfg.model = parse_objective(model);
        cfg.sweeps = sweeps;
        cfg.restarts = restarts;
        cfg.seed = seed;
        NeoState s;
        {
          py::gil_scoped_release release;
          s = exhaustive ? exhaustive_neo(g, Partition(metadata), cfg) : infer(g, Partition(metadata), cfg);
        }
        return state_dict(s);
      },
      py::arg("graph"), py::arg("metadata"), py::arg("theta"), py::arg("model") = "sbm", py::arg("sweeps") = 1000,
      py::arg("restarts") = 20, py::arg("seed") = 1, py::arg("exhaustive") = false);

  m.def(
      "theta_sweep",
      [](const Graph& g, const std::vector<int>& metadata, const std::vector<double>& grid, const std::string& model,
         int sweeps, int restarts, std::uint64_t seed) {
        NeoConfig cfg;
        cfg.model = parse_objective(model);
        cfg.sweeps = sweeps;
        cfg.restarts = restarts;
        cfg.seed = seed;
        NeoPath path;
        {
          py::gil_scoped_release release;
          path = theta_sweep(g, Partition(metadata), grid, cfg);
        }
        py::list records;
        for (const auto& r : path.records) {
          auto d = state_dict(r.state);
          d["theta"] = r.theta;
          d["jump"] = r.jump;
          records.append(d);
        }
        return records;
      },
      py::arg("graph"), py::arg("metadata"), py::arg("grid"), py::arg("model") = "sbm", py::arg("sweeps") = 200,
      py::arg("restarts") = 4, py::arg("seed") = 1);

  m.def("min_free_nodes", [](const std::vector<int>& a, const std::vector<int>& b) {
    return min_free_nodes(Partition(a), Partition(b));
  });

  m.def(
      "two_block",
      [](int n, double epsilon, double ell, double mean_degree, std::uint64_t seed) {
        SynthConfig cfg;
        cfg.n_nodes = n;
        cfg.epsilon = epsilon;
        cfg.mean_degree = mean_degree;
        Rng rng(seed);
        auto [g, truth] = gen_two_block(cfg, rng);
        auto meta = corrupt_metadata(truth, ell, rng);
        return py::make_tuple(g, truth.assignment(), meta.assignment());
      },
      py::arg("n"), py::arg("epsilon"), py::arg("ell"), py::arg("mean_degree") = 10.0, py::arg("seed") = 1);

  m.def(
      "mds",
      [](const std::vector<double>& dist, int n) {
        std::vector<std::pair<double, double>> out;
        for (const auto& p : mds_embed(dist, n)) out.emplace_back(p[0], p[1]);
        return out;
      },
      py::arg("dist"), py::arg("n"));
}
