#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "widthspan/arrangement.hpp"
#include "widthspan/distribution.hpp"
#include "widthspan/error.hpp"
#include "widthspan/generators.hpp"
#include "widthspan/graph.hpp"
#include "widthspan/lowstretch.hpp"
#include "widthspan/oracle.hpp"
#include "widthspan/report.hpp"
#include "widthspan/tree_decomposition.hpp"
#include "widthspan/twdp.hpp"
#include "widthspan/verify.hpp"

namespace py = pybind11;
namespace ws = widthspan;

namespace {

py::object fraction(const ws::Rational& r) {
    static py::object cls = py::module_::import("fractions").attr("Fraction");
    return cls(r.num(), r.den());
}

py::list fractions(const std::vector<ws::Rational>& values) {
    py::list out;
    for (const auto& r : values) {
        out.append(fraction(r));
    }
    return out;
}

py::int_ big(const ws::BigInt& value) {
    return py::int_(py::reinterpret_steal<py::object>(PyLong_FromString(value.str().c_str(), nullptr, 10)));
}

ws::Graph make_graph(int n, const std::vector<std::pair<int, int>>& pairs) {
    std::vector<ws::Edge> edges;
    edges.reserve(pairs.size());
    for (auto [u, v] : pairs) {
        edges.push_back(ws::Edge{u, v});
    }
    return ws::Graph(n, std::move(edges));
}

std::vector<std::pair<int, int>> edge_pairs(const ws::Graph& g) {
    std::vector<std::pair<int, int>> out;
    for (const auto& e : g.edges()) {
        out.emplace_back(e.u, e.v);
    }
    return out;
}

py::tuple shifted(const ws::ShiftedTree& t) { return py::make_tuple(t.shift, t.report); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Low-stretch spanning trees from linear arrangements and tree decompositions";
    m.attr("__version__") = ws::version_string;

    static py::exception<ws::ParseError> parse_error(m, "ParseError", PyExc_ValueError);
    static py::exception<ws::ValidationError> validation_error(m, "ValidationError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const ws::ParseError& e) {
            py::set_error(parse_error, e.what());
        } catch (const ws::ValidationError& e) {
            py::set_error(validation_error, e.what());
        }
    });

    py::class_<ws::Graph>(m, "Graph")
        .def(py::init(&make_graph), py::arg("n"), py::arg("edges"))
        .def_static("from_text", [](const std::string& text) { return ws::load_graph(text); })
        .def("to_text", [](const ws::Graph& g) { return ws::serialize_graph(g); })
        .def_property_readonly("n", &ws::Graph::num_vertices)
        .def_property_readonly("m", &ws::Graph::num_edges)
        .def_property_readonly("edges", &edge_pairs)
        .def("__repr__", [](const ws::Graph& g) {
            return "<Graph n=" + std::to_string(g.num_vertices()) + " m=" + std::to_string(g.num_edges()) + ">";
        });

    py::class_<ws::LinearArrangement>(m, "Arrangement")
        .def(py::init([](std::vector<ws::Vertex> order) { return ws::LinearArrangement::from_order(std::move(order)); }),
             py::arg("order"))
        .def_static("identity", &ws::LinearArrangement::identity)
        .def_static("from_text", [](const std::string& text, int n) { return ws::load_arrangement(text, n); })
        .def("to_text", [](const ws::LinearArrangement& a) { return ws::serialize_arrangement(a); })
        .def_property_readonly("order", [](const ws::LinearArrangement& a) {
            return std::vector<ws::Vertex>(a.order().begin(), a.order().end());
        })
        .def("position", &ws::LinearArrangement::position_of);

    py::class_<ws::StretchReport>(m, "StretchReport")
        .def_readonly("n", &ws::StretchReport::n)
        .def_readonly("m", &ws::StretchReport::m)
        .def_readonly("tree_edges", &ws::StretchReport::tree_edges)
        .def_readonly("per_edge_stretch", &ws::StretchReport::per_edge_stretch)
        .def_readonly("total_stretch", &ws::StretchReport::total_stretch)
        .def_readonly("fcb_weight", &ws::StretchReport::fcb_weight)
        .def_property_readonly("avg_stretch", [](const ws::StretchReport& r) { return fraction(r.avg_stretch()); })
        .def("fcb_identity_holds", &ws::StretchReport::fcb_identity_holds);

    py::class_<ws::DistributionReport>(m, "DistributionReport")
        .def_readonly("n_prime", &ws::DistributionReport::n_prime)
        .def_readonly("shift_count", &ws::DistributionReport::shift_count)
        .def_readonly("shifts", &ws::DistributionReport::shifts)
        .def_readonly("shift_totals", &ws::DistributionReport::shift_totals)
        .def_readonly("best_shift", &ws::DistributionReport::best_shift)
        .def_property_readonly("per_edge_expected",
                               [](const ws::DistributionReport& r) { return fractions(r.per_edge_expected); })
        .def_property_readonly("max_expected", [](const ws::DistributionReport& r) { return fraction(r.max_expected()); });

    m.def(
        "generate",
        [](const std::string& family, int n, std::uint64_t seed, int b, double p, int c, int width) {
            const auto f = ws::parse_family(family);
            if (!f) {
                throw ws::ValidationError("unknown family '" + family + "'");
            }
            auto gen = ws::generate({.family = *f, .n = n, .seed = seed, .bandwidth = b, .probability = p,
                                     .cutwidth = c, .grid_width = width});
            return py::make_tuple(std::move(gen.graph), std::move(gen.arrangement));
        },
        py::arg("family"), py::arg("n"), py::arg("seed") = 0, py::arg("b") = 2, py::arg("p") = 0.5, py::arg("c") = 2,
        py::arg("width") = 0, "Returns (graph, witness arrangement).");

    m.def(
        "widths",
        [](const ws::Graph& g, const ws::LinearArrangement& a) {
            const auto w = ws::widths(g, a);
            return py::make_tuple(w.bandwidth, w.cutwidth);
        },
        "(bandwidth, cutwidth) of the arrangement.");

    m.def(
        "build_tree",
        [](const ws::Graph& g, const ws::LinearArrangement& a, std::optional<int> shift) {
            return shift ? ws::build_tree(g, ws::PaddedArrangement(a, *shift)) : ws::build_tree(g, a);
        },
        py::arg("graph"), py::arg("arrangement"), py::arg("shift") = py::none(),
        "Arrangement-tree spanning tree; with a shift, on the padded power-of-two line.");

    m.def(
        "stretch_of", [](const ws::Graph& g, const std::vector<ws::EdgeId>& tree) { return ws::stretch_of(g, tree); },
        py::arg("graph"), py::arg("tree_edges"));

    m.def("explicit_distribution", &ws::explicit_distribution, py::arg("graph"), py::arg("arrangement"),
          py::arg("jobs") = 1, py::call_guard<py::gil_scoped_release>());
    m.def("sampled_distribution", &ws::sampled_distribution, py::arg("graph"), py::arg("arrangement"),
          py::arg("samples"), py::arg("seed"), py::arg("jobs") = 1, py::call_guard<py::gil_scoped_release>());

    m.def(
        "cutwidth_tree",
        [](const ws::Graph& g, const ws::LinearArrangement& a, std::optional<std::uint64_t> seed, int jobs) {
            return shifted(seed ? ws::cutwidth_tree_sample(g, a, *seed) : ws::cutwidth_tree_best_shift(g, a, jobs));
        },
        py::arg("graph"), py::arg("arrangement"), py::arg("seed") = py::none(), py::arg("jobs") = 1,
        "Returns (shift, report): one random shift when seeded, else the best shift.");

    m.def(
        "spanning_tree_count", [](const ws::Graph& g) { return big(ws::spanning_tree_count(g)); },
        "Kirchhoff count as an exact integer.");

    m.def(
        "enumerate_min_stretch",
        [](const ws::Graph& g, std::uint64_t cap, bool histogram) {
            const auto r = ws::enumerate_min_stretch(g, cap, histogram);
            py::dict out;
            out["spanning_tree_count"] = r.spanning_tree_count;
            out["matrix_tree_count"] = big(r.matrix_tree_count);
            out["min_total_stretch"] = r.min_total_stretch;
            out["argmin_trees"] = r.argmin_trees;
            if (histogram) {
                out["histogram"] = r.histogram;
            }
            return out;
        },
        py::arg("graph"), py::arg("cap") = 1'000'000, py::arg("histogram") = false);

    m.def(
        "expected_stretch_oracle",
        [](const ws::Graph& g, const ws::LinearArrangement& a) { return fractions(ws::expected_stretch_oracle(g, a)); },
        py::arg("graph"), py::arg("arrangement"));

    m.def(
        "dp_min_stretch",
        [](const ws::Graph& g, std::optional<std::string> td_text, bool prune) {
            const auto td = td_text ? ws::load_td(*td_text)
                                    : ws::elimination_decomposition(g, ws::min_degree_order(g));
            ws::validate_decomposition(g, td);
            const auto nice = ws::make_nice(g, td);
            ws::DpOptions options;
            options.prune = prune;
            const auto result = ws::dp_min_stretch(g, nice, options);
            return py::make_tuple(result.total_stretch, result.tree_edges);
        },
        py::arg("graph"), py::arg("td") = py::none(), py::arg("prune") = true,
        "Minimum total stretch and a witness tree. Without a .td text a min-degree decomposition is used.");

    m.def(
        "run_suite",
        [](const std::string& name, int jobs) {
            py::list rows;
            for (const auto& row : ws::run_suite(name, jobs)) {
                rows.append(py::make_tuple(row.suite, row.name, row.informational ? "info" : (row.passed ? "pass" : "fail"),
                                           row.detail));
            }
            return rows;
        },
        py::arg("suite"), py::arg("jobs") = 1, "Rows of (suite, check, pass|fail|info, detail).");
}
