#include "netmod/generators.hpp"
#include "netmod/io.hpp"
#include "netmod/laplacian.hpp"
#include "netmod/oracle.hpp"
#include "netmod/stable.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace netmod;

PYBIND11_MODULE(_netmod, m) {
    m.doc() = "single-edge modification analysis for networked systems";

    py::register_exception<Error>(m, "Error");

    py::enum_<NetworkKind>(m, "NetworkKind")
        .value("DirectStable", NetworkKind::DirectStable)
        .value("Laplacian", NetworkKind::Laplacian);

    py::class_<Edge>(m, "Edge")
        .def(py::init<int, int, double>(), py::arg("from_node"),
             py::arg("to_node"), py::arg("weight"))
        .def_readonly("from_node", &Edge::from)
        .def_readonly("to_node", &Edge::to)
        .def_readonly("weight", &Edge::weight);

    py::class_<EdgeMod>(m, "EdgeMod")
        .def(py::init<int, int, double>(), py::arg("s"), py::arg("t"),
             py::arg("w"))
        .def_readonly("s", &EdgeMod::s)
        .def_readonly("t", &EdgeMod::t)
        .def_readonly("w", &EdgeMod::w);

    py::class_<Network>(m, "Network")
        .def_property_readonly("n", &Network::n)
        .def_property_readonly("kind", &Network::kind)
        .def_property_readonly("adjacency",
                               [](const Network& net) { return net.adjacency(); })
        .def_property_readonly("inputs",
                               [](const Network& net) { return net.inputs(); })
        .def_property_readonly("outputs",
                               [](const Network& net) { return net.outputs(); })
        .def("state_matrix", &Network::state_matrix)
        .def("laplacian", &Network::laplacian)
        .def("edges", &Network::edges)
        .def("has_edge", &Network::has_edge)
        .def("diameter", &Network::diameter)
        .def("spectral_radius_bound", &Network::spectral_radius_bound);

    m.def("build_network",
          [](int n, const std::vector<std::tuple<int, int, double>>& edges,
             std::vector<int> inputs, std::vector<int> outputs,
             NetworkKind kind) {
              std::vector<Edge> list;
              for (auto& [i, j, w] : edges) list.push_back({i, j, w});
              return build_network(n, list, std::move(inputs),
                                   std::move(outputs), kind);
          },
          py::arg("n"), py::arg("edges"), py::arg("inputs"),
          py::arg("outputs"), py::arg("kind"));
    m.def("apply_mod", &apply_mod);

    m.def("erdos_renyi",
          [](int n, double p, double target_rho, std::uint64_t seed,
             std::vector<int> inputs, std::vector<int> outputs) {
              ErdosRenyiConfig cfg;
              cfg.n = n;
              cfg.p = p;
              cfg.target_rho = target_rho;
              cfg.seed = seed;
              if (!inputs.empty()) cfg.inputs = std::move(inputs);
              if (!outputs.empty()) cfg.outputs = std::move(outputs);
              return erdos_renyi(cfg);
          },
          py::arg("n"), py::arg("p"), py::arg("target_rho"), py::arg("seed"),
          py::arg("inputs") = std::vector<int>{},
          py::arg("outputs") = std::vector<int>{});
    m.def("path_graph", &path_graph, py::arg("n"), py::arg("weight"));
    m.def("grid_graph", &grid_graph, py::arg("side"), py::arg("weight"));
    m.def("complete_graph", &complete_graph, py::arg("n"), py::arg("weight"));
    m.def("sample_nodes", &sample_nodes);

    m.def("load_network_json", &load_network_json_file, py::arg("path"));
    m.def("save_network_json",
          [](const Network& net, const std::string& path) {
              save_network_json_file(net, path);
          });
    m.def("network_to_json", [](const Network& net) {
        std::ostringstream os;
        save_network_json(net, os);
        return os.str();
    });

    py::class_<SteadyStateKernel>(m, "SteadyStateKernel")
        .def_readonly("resolvent", &SteadyStateKernel::resolvent)
        .def_readonly("walk_energy", &SteadyStateKernel::walk_energy)
        .def_readonly("q", &SteadyStateKernel::q)
        .def_readonly("p", &SteadyStateKernel::p)
        .def_readonly("rho", &SteadyStateKernel::rho)
        .def_readonly("truncation_error", &SteadyStateKernel::truncation_error);

    m.def("build_kernel", &build_kernel, py::arg("net"),
          py::arg("tol") = 1e-12);
    m.def("stability_margin", &stability_margin);
    m.def("delta_hinf", &delta_hinf);
    m.def("delta_h2_lower_bound", &delta_h2_lower_bound);
    m.def("fragility_radius", [](const SteadyStateKernel& k) {
        auto [margin, mod] = fragility_radius(k);
        return py::make_tuple(margin, mod);
    });

    py::class_<DeltaEntry>(m, "DeltaEntry")
        .def_readonly("s", &DeltaEntry::s)
        .def_readonly("t", &DeltaEntry::t)
        .def_readonly("margin", &DeltaEntry::margin)
        .def_readonly("destabilizing", &DeltaEntry::destabilizing)
        .def_readonly("hinf", &DeltaEntry::hinf)
        .def_readonly("h2_lower_bound", &DeltaEntry::h2_lower_bound);

    py::enum_<ScanSortKey>(m, "ScanSortKey")
        .value("Margin", ScanSortKey::Margin)
        .value("Hinf", ScanSortKey::Hinf)
        .value("H2Bound", ScanSortKey::H2Bound)
        .value("Pair", ScanSortKey::Pair);

    m.def("batch_scan", &batch_scan, py::arg("kernel"), py::arg("w"),
          py::arg("sort") = ScanSortKey::Pair, py::arg("top_k") = 0,
          py::arg("jobs") = 1);

    py::class_<GreedyGramianResult>(m, "GreedyGramianResult")
        .def_readonly("mods", &GreedyGramianResult::mods)
        .def_readonly("trace_before", &GreedyGramianResult::trace_before)
        .def_readonly("trace_after", &GreedyGramianResult::trace_after)
        .def_readonly("bounds", &GreedyGramianResult::bounds);
    m.def("greedy_gramian_improve", &greedy_gramian_improve, py::arg("net"),
          py::arg("budget"), py::arg("candidate_weight"));

    py::class_<LaplacianKernel>(m, "LaplacianKernel")
        .def_readonly("lambda_", &LaplacianKernel::lambda)
        .def_readonly("lpinv", &LaplacianKernel::lpinv)
        .def("effective_resistance", &LaplacianKernel::effective_resistance);

    m.def("build_laplacian_kernel", &build_laplacian_kernel);
    m.def("hinf_displacement", &hinf_displacement);
    m.def("delta_hinf_upper_bound", &delta_hinf_upper_bound);
    m.def("coherence", &coherence);
    m.def("coherence_delta", &coherence_delta);

    py::class_<CoherenceReport>(m, "CoherenceReport")
        .def_readonly("baseline", &CoherenceReport::baseline)
        .def_readonly("w", &CoherenceReport::w)
        .def_readonly("q", &CoherenceReport::q)
        .def_property_readonly("admissible", [](const CoherenceReport& r) {
            return Matrix(r.admissible.cast<double>());
        });
    m.def("batch_coherence_delta", &batch_coherence_delta, py::arg("kernel"),
          py::arg("w"), py::arg("jobs") = 1);

    py::class_<GreedyGrowResult>(m, "GreedyGrowResult")
        .def_readonly("mods", &GreedyGrowResult::mods)
        .def_readonly("trajectory", &GreedyGrowResult::trajectory);
    m.def("greedy_grow", &greedy_grow, py::arg("net"), py::arg("w"),
          py::arg("budget"));

    py::class_<oracle::RebuildReport>(m, "RebuildReport")
        .def_readonly("modified_stable", &oracle::RebuildReport::modified_stable)
        .def_readonly("exact_hinf", &oracle::RebuildReport::exact_hinf)
        .def_readonly("exact_h2", &oracle::RebuildReport::exact_h2)
        .def_readonly("exact_coherence_delta",
                      &oracle::RebuildReport::exact_coherence_delta);
    m.def("rebuild_and_measure", &oracle::rebuild_and_measure);
}
