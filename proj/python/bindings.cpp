// python bindings: a thin veneer over the core library

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "treembed/domseq.hpp"
#include "treembed/errors.hpp"
#include "treembed/generators.hpp"
#include "treembed/graph.hpp"
#include "treembed/oracle.hpp"
#include "treembed/ramsey.hpp"
#include "treembed/sssp.hpp"

namespace py = pybind11;
using namespace treembed;

namespace {

WeightMode mode_from(const std::string& s) {
  if (s == "level") return WeightMode::kLevel;
  if (s == "actual") return WeightMode::kActual;
  throw ArgError("mode must be 'level' or 'actual'");
}

DomseqMode domseq_from(const std::string& s) {
  if (s == "exact") return DomseqMode::kExact;
  if (s == "approx") return DomseqMode::kApprox;
  throw ArgError("domseq must be 'exact' or 'approx'");
}

}  // namespace

PYBIND11_MODULE(_treembed, m) {
  m.doc() = "tree embeddings and distance oracles for graph metrics";

  py::register_exception<ArgError>(m, "ArgError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<Graph>(m, "Graph")
      .def_readonly("n", &Graph::n)
      .def_property_readonly("m", &Graph::m)
      .def("edges",
           [](const Graph& g) {
             std::vector<std::tuple<int32_t, int32_t, int64_t>> out;
             for (const auto& e : g.edges) out.emplace_back(e.u, e.v, e.w);
             return out;
           })
      .def("connected", &Graph::connected)
      .def("__str__", [](const Graph& g) { return write_graph(g); })
      .def_static("parse", &parse_graph, py::arg("text"))
      .def_static("load", &load_graph, py::arg("path"))
      .def("save", [](const Graph& g, const std::string& p) {
        save_graph(g, p);
      });

  m.def("gen_grid", &gen_grid, py::arg("dims"), py::arg("weighted") = false,
        py::arg("seed") = 1);
  m.def("gen_power_law", &gen_power_law, py::arg("n"), py::arg("m"),
        py::arg("seed") = 1);
  m.def("gen_slim", &gen_slim, py::arg("n"), py::arg("m"),
        py::arg("diameter"), py::arg("seed") = 1);
  m.def("gen_random_connected", &gen_random_connected, py::arg("n"),
        py::arg("m"), py::arg("max_w") = 1000, py::arg("seed") = 1);

  m.def("dijkstra",
        [](const Graph& g, int32_t s) { return dijkstra_exact(g, s).d; },
        py::arg("graph"), py::arg("source"));
  m.def("approx_sssp",
        [](const Graph& g, int32_t s, int k) { return approx_sssp(g, s, k).d; },
        py::arg("graph"), py::arg("source"), py::arg("k"));
  m.def("refine_sssp",
        [](const Graph& g, int32_t s, double eps) {
          return refine_gabow(g, s, eps);
        },
        py::arg("graph"), py::arg("source"), py::arg("eps"));

  m.def("dominance_sequences",
        [](const Graph& g, uint64_t seed, const std::string& mode) {
          Permutation pi = random_permutation(g.n, seed);
          DomSeqs seqs = domseq_from(mode) == DomseqMode::kExact
                             ? build_domseq_exact(g, pi)
                             : build_domseq_approx(g, pi);
          std::vector<std::vector<std::pair<int32_t, int64_t>>> out(seqs.size());
          for (size_t x = 0; x < seqs.size(); ++x)
            for (const auto& e : seqs[x]) out[x].emplace_back(e.p, e.dist);
          return out;
        },
        py::arg("graph"), py::arg("seed"), py::arg("mode") = "exact");

  py::class_<StretchReport>(m, "StretchReport")
      .def_readonly("requested", &StretchReport::requested)
      .def_readonly("evaluated", &StretchReport::evaluated)
      .def_readonly("skipped", &StretchReport::skipped)
      .def_readonly("avg", &StretchReport::avg)
      .def_readonly("worst", &StretchReport::worst)
      .def_readonly("geomean", &StretchReport::geomean);

  py::class_<DistanceOracle>(m, "Oracle")
      .def_readonly("n", &DistanceOracle::n)
      .def_readonly("seed", &DistanceOracle::seed)
      .def_property_readonly(
          "trees",
          [](const DistanceOracle& o) { return o.trees.size(); })
      .def("query", &DistanceOracle::query, py::arg("u"), py::arg("v"))
      .def("eval_stretch",
           [](const DistanceOracle& o, const Graph& g, int64_t pairs,
              uint64_t seed) { return eval_stretch(o, g, pairs, seed); },
           py::arg("graph"), py::arg("pairs"), py::arg("seed"))
      .def("serialize",
           [](const DistanceOracle& o) {
             return py::bytes(serialize_oracle(o));
           })
      .def("save",
           [](const DistanceOracle& o, const std::string& p) {
             save_oracle(o, p);
           },
           py::arg("path"))
      .def_static("deserialize",
                  [](const py::bytes& b) {
                    return deserialize_oracle(std::string(b));
                  })
      .def_static("load", &load_oracle, py::arg("path"));

  m.def("build_oracle",
        [](const Graph& g, int trees, const std::string& mode,
           const std::string& domseq, uint64_t seed, int threads) {
          return build_oracle(g, trees, mode_from(mode), domseq_from(domseq),
                              seed, threads);
        },
        py::arg("graph"), py::arg("trees") = 32, py::arg("mode") = "actual",
        py::arg("domseq") = "exact", py::arg("seed") = 1,
        py::arg("threads") = 1);

  m.def("estimate_padding",
        [](const Graph& g, int a, int64_t trials, uint64_t seed) {
          MetricView mv = MetricView::from_graph(g);
          PaddingEstimate est = estimate_padding(mv, a, trials, seed);
          py::dict out;
          out["freq"] = est.freq;
          out["stderr"] = est.se;
          out["bound"] = est.bound;
          out["alpha"] = est.alpha;
          return out;
        },
        py::arg("graph"), py::arg("a"), py::arg("trials"), py::arg("seed"));
}
