#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "esp/cli.hpp"
#include "esp/euclidean.hpp"
#include "esp/json_io.hpp"

namespace py = pybind11;
using namespace esp;

PYBIND11_MODULE(_esp, m) {
    m.doc() = "expanding search solvers: pattern validation, exact and "
              "approximate search over graphs and the plane";

    py::register_exception<SizeLimitError>(m, "SizeLimitError");
    py::register_exception<SolverError>(m, "SolverError");

    py::class_<Instance>(m, "Instance")
        .def_static("from_json", &instance_from_json, py::arg("text"))
        .def("to_json", &instance_to_json)
        .def("__len__", &Instance::size)
        .def_property_readonly("root", &Instance::root)
        .def("id", &Instance::id, py::arg("vertex"))
        .def("index_of", &Instance::index_of, py::arg("id"))
        .def("weight", &Instance::weight, py::arg("vertex"))
        .def_property_readonly("total_weight", &Instance::total_weight);

    py::class_<SearchPattern>(m, "SearchPattern")
        .def(py::init([](std::vector<std::pair<int, int>> edges) {
                 return SearchPattern{std::move(edges)};
             }),
             py::arg("edges"))
        .def_readonly("edges", &SearchPattern::edges)
        .def("__len__", &SearchPattern::size);

    m.def(
        "pattern_from_json",
        [](const std::string& text, const Instance& inst) {
            return pattern_from_json(text, inst);
        },
        py::arg("text"), py::arg("instance"));
    m.def(
        "pattern_to_json",
        [](const SearchPattern& pat, const Instance& inst) {
            return pattern_to_json(pat, inst);
        },
        py::arg("pattern"), py::arg("instance"));

    m.def(
        "validate",
        [](const Instance& inst, const SearchPattern& pat) {
            auto verdict = validate_pattern(inst, pat);
            return py::make_tuple(verdict.valid, describe(verdict, inst));
        },
        py::arg("instance"), py::arg("pattern"),
        "Returns (valid, human-readable verdict).");

    m.def(
        "total_latency",
        [](const Instance& inst, const SearchPattern& pat) {
            auto rep = total_latency(inst, pat);
            return py::make_tuple(rep.total, rep.latency, rep.pattern_length);
        },
        py::arg("instance"), py::arg("pattern"),
        "Returns (total, per-vertex latencies, pattern length).");

    m.def(
        "brute_force",
        [](const Instance& inst, int max_n) {
            auto res = brute_force_esp(inst, max_n);
            return py::make_tuple(res.pattern, res.total_latency);
        },
        py::arg("instance"), py::arg("max_n") = 8,
        "Optimal pattern and total latency by exhaustive search.");

    m.def(
        "solve_unweighted",
        [](const Instance& inst, const std::string& oracle) {
            auto res = solve_unweighted(inst, *make_oracle(oracle));
            return py::make_tuple(res.pattern, res.report.total);
        },
        py::arg("instance"), py::arg("oracle") = "exact",
        "Tree-family concatenation solver; every vertex counts with weight one.");

    m.def(
        "solve_weighted",
        [](const Instance& inst, const std::string& eps, const std::string& oracle) {
            auto res = solve_weighted(inst, parse_rational(eps), *make_oracle(oracle));
            return py::make_tuple(res.pattern, res.report.total);
        },
        py::arg("instance"), py::arg("epsilon") = "1/4", py::arg("oracle") = "exact",
        "Quota-schedule concatenation solver; epsilon is a rational string.");

    py::class_<GadgetInstance>(m, "GadgetInstance")
        .def_static("from_json", &gadget_from_json, py::arg("text"))
        .def("to_json", &gadget_to_json)
        .def_readonly("instance", &GadgetInstance::inst)
        .def_readonly("copies", &GadgetInstance::copies)
        .def_readonly("root_edge_cost", &GadgetInstance::root_edge_cost)
        .def_readonly("num_terminals", &GadgetInstance::num_terminals);

    m.def(
        "build_gadget",
        [](const std::string& st12_json, int copies) {
            return build_gadget(st12_from_json(st12_json), copies);
        },
        py::arg("st12_json"), py::arg("copies"),
        "Search gadget from a {1,2}-cost Steiner instance (JSON).");

    m.def(
        "structure_pattern",
        [](const GadgetInstance& g, const SearchPattern& pat) {
            return structure_pattern(g, pat);
        },
        py::arg("gadget"), py::arg("pattern"));

    m.def(
        "extract_best_steiner",
        [](const GadgetInstance& g, const SearchPattern& pat) {
            auto t = extract_best_steiner(g, pat);
            return py::make_tuple(t.edges, t.cost, t.from_copy);
        },
        py::arg("gadget"), py::arg("pattern"),
        "Returns (edges, cost, copy) of the cheapest induced Steiner tree.");

    m.def(
        "sweep",
        [](int max_n, const std::string& algo, const std::string& oracle,
           const std::string& eps, std::uint64_t seed) {
            auto res = sweep_small_graphs(max_n, algo, *make_oracle(oracle),
                                          parse_rational(eps), seed);
            std::string csv = csv_header() + "\n";
            for (const auto& r : res.records) csv += to_csv(r) + "\n";
            return py::make_tuple(csv, to_double(res.worst_ratio), res.worst_instance);
        },
        py::arg("max_n"), py::arg("algo"), py::arg("oracle") = "exact",
        py::arg("epsilon") = "1/4", py::arg("seed") = 0,
        "Exhaustive small-graph benchmark; returns (csv, worst_ratio, worst_instance).");
}
