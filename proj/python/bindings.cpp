#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hubpath/generators.hpp"
#include "hubpath/graph.hpp"
#include "hubpath/hub2_index.hpp"
#include "hubpath/hub_network.hpp"
#include "hubpath/hub_set.hpp"
#include "hubpath/query.hpp"

namespace py = pybind11;
using namespace hubpath;

namespace {

using EdgeList = std::vector<std::pair<VertexId, VertexId>>;

Engine engine_from(const std::string& name) {
  auto e = parse_engine(name);
  if (!e) throw py::value_error("unknown engine '" + name + "' (expected bfs, bibfs, hn, hl)");
  return *e;
}

// Graph plus whatever the engines need, built lazily.
class Session {
 public:
  Session(Graph g, std::uint32_t k, std::optional<std::size_t> hubs)
      : g_(std::move(g)), k_(k),
        hubs_(HubSet::select(g_, hubs.value_or(default_hub_count(g_.n())))) {}

  Session(Graph g, Hub2Index idx) : g_(std::move(g)), k_(idx.config.k), hubs_(idx.hubs) {
    idx.check_graph(g_);
    idx_ = std::make_unique<Hub2Index>(std::move(idx));
  }

  py::dict query(const std::string& engine, VertexId s, VertexId t) {
    Engine e = engine_from(engine);
    if (e == Engine::HubNetwork) network();
    if (e == Engine::Hub2) index();
    QueryRunner runner(g_, k_, &hubs_, net_.get(), idx_.get());
    QueryResult r = runner.run(e, s, t, scratch_);
    py::dict out;
    out["distance"] = r.distance ? py::cast(*r.distance) : py::none();
    out["path"] = r.path ? py::cast(*r.path) : py::none();
    out["visited"] = r.stats.visited;
    out["join_ops"] = r.stats.join_ops;
    return out;
  }

  const HubNetwork& network() {
    if (!net_) net_ = std::make_unique<HubNetwork>(discover(g_, hubs_, k_));
    return *net_;
  }
  const Hub2Index& index(unsigned threads = 1) {
    if (!idx_) idx_ = std::make_unique<Hub2Index>(build_index(g_, hubs_, k_, {threads}));
    return *idx_;
  }

  py::dict network_stats_dict() {
    const HubNetwork& net = network();
    NetworkStats st = network_stats(g_, hubs_, net);
    py::dict d;
    d["size_hstar"] = st.size_hstar;
    d["avg_hub_degree_original"] = st.avg_hub_degree_original;
    d["avg_hub_degree_network"] = st.avg_hub_degree_network;
    d["size_bound"] = hstar_size_bound(net, hubs_.size(), g_.directed());
    d["basic_pairs"] = net.basic_pairs.size();
    d["preservation_failures"] = verify_distance_preserving(g_, hubs_, net, k_).failures.size();
    return d;
  }

  py::dict index_stats_dict() {
    IndexStats st = index_stats(index());
    py::dict d;
    d["avg_label_count"] = st.avg_label_count;
    d["max_label_count"] = st.max_label_count;
    d["matrix_finite_fraction"] = st.matrix_finite_fraction;
    d["matrix_entries"] = st.matrix_entries;
    d["bytes"] = st.bytes;
    return d;
  }

  py::bytes index_bytes() { return py::bytes(serialize(index())); }
  void save_index(const std::string& path) { write_index_file(index(), path); }

  std::vector<VertexId> hub_ids() const { return {hubs_.ids().begin(), hubs_.ids().end()}; }
  std::vector<VertexId> network_members() { return network().members(); }
  const Graph& graph() const { return g_; }
  std::uint32_t k() const { return k_; }

 private:
  Graph g_;
  std::uint32_t k_;
  HubSet hubs_;
  std::unique_ptr<HubNetwork> net_;
  std::unique_ptr<Hub2Index> idx_;
  SearchScratch scratch_;
};

Graph graph_from_edges(std::size_t n, const EdgeList& edges, bool directed) {
  return Graph::from_edges(n, edges, directed);
}

}  // namespace

PYBIND11_MODULE(_hubpath, m) {
  m.doc() = "k-degree shortest path queries with hub networks and hub labels";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<IndexFormatError>(m, "IndexFormatError", PyExc_ValueError);
  py::register_exception<IndexIntegrityError>(m, "IndexIntegrityError", PyExc_RuntimeError);

  py::class_<Graph>(m, "Graph")
      .def_static("from_edges", &graph_from_edges, py::arg("n"), py::arg("edges"),
                  py::arg("directed") = false)
      .def_static("load", &load_edge_list_file, py::arg("path"), py::arg("directed") = false)
      .def_property_readonly("n", &Graph::n)
      .def_property_readonly("m", &Graph::m)
      .def_property_readonly("directed", &Graph::directed)
      .def("out_neighbors",
           [](const Graph& g, VertexId v) {
             if (v >= g.n()) throw py::index_error("vertex out of range");
             auto s = g.out_neighbors(v);
             return std::vector<VertexId>(s.begin(), s.end());
           })
      .def("checksum", &Graph::checksum)
      .def("validate_path", [](const Graph& g, const Path& p) { return validate_path(g, p); });

  m.def(
      "generate",
      [](const std::string& kind, std::size_t n, double param, std::uint64_t seed, bool directed) {
        auto kd = parse_graph_kind(kind);
        if (!kd) throw py::value_error("unknown kind '" + kind + "'");
        return generate_graph(*kd, n, param, seed, directed);
      },
      py::arg("kind"), py::arg("n"), py::arg("param") = 3.0, py::arg("seed") = 1,
      py::arg("directed") = false);

  m.def(
      "select_hubs",
      [](const Graph& g, std::size_t beta) {
        HubSet h = HubSet::select(g, beta);
        return std::vector<VertexId>(h.ids().begin(), h.ids().end());
      },
      py::arg("graph"), py::arg("beta"));

  py::class_<Session>(m, "Session")
      .def(py::init<Graph, std::uint32_t, std::optional<std::size_t>>(), py::arg("graph"),
           py::arg("k") = 6, py::arg("hubs") = py::none())
      .def_static(
          "from_index_file",
          [](Graph g, const std::string& path) {
            return std::make_unique<Session>(std::move(g), read_index_file(path));
          },
          py::arg("graph"), py::arg("path"))
      .def_static(
          "from_index_bytes",
          [](Graph g, const py::bytes& b) {
            return std::make_unique<Session>(std::move(g), deserialize(std::string(b)));
          },
          py::arg("graph"), py::arg("data"))
      .def("query", &Session::query, py::arg("engine"), py::arg("s"), py::arg("t"))
      .def("build_index", [](Session& s, unsigned threads) { s.index(threads); },
           py::arg("threads") = 1)
      .def("network_stats", &Session::network_stats_dict)
      .def("index_stats", &Session::index_stats_dict)
      .def("index_bytes", &Session::index_bytes)
      .def("save_index", &Session::save_index, py::arg("path"))
      .def_property_readonly("hubs", &Session::hub_ids)
      .def_property_readonly("network_members", &Session::network_members)
      .def_property_readonly("k", &Session::k)
      .def_property_readonly("graph", &Session::graph, py::return_value_policy::reference_internal);
}
