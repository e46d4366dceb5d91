#include "netmod/io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace netmod {

using nlohmann::json;

namespace {

NetworkKind parse_kind(const std::string& s) {
    if (s == "direct") return NetworkKind::DirectStable;
    if (s == "laplacian") return NetworkKind::Laplacian;
    throw ParseError("unknown network kind: " + s);
}

Network from_json(const json& j) {
    if (!j.contains("n") || !j.contains("kind") || !j.contains("edges") ||
        !j.contains("inputs") || !j.contains("outputs"))
        throw ParseError("network JSON missing required field");
    int n = j.at("n").get<int>();
    NetworkKind kind = parse_kind(j.at("kind").get<std::string>());
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 3)
            throw ParseError("edge entry must be [i, j, w]");
        edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
    }
    return build_network(n, edges, j.at("inputs").get<std::vector<int>>(),
                         j.at("outputs").get<std::vector<int>>(), kind);
}

}  // namespace

Network load_network_json(std::istream& in) {
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
        return from_json(j);
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad network JSON: ") + e.what());
    }
}

Network load_network_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return load_network_json(in);
}

void save_network_json(const Network& net, std::ostream& out) {
    json j;
    j["n"] = net.n();
    j["kind"] =
        net.kind() == NetworkKind::DirectStable ? "direct" : "laplacian";
    json edges = json::array();
    for (const Edge& e : net.edges())
        edges.push_back(json::array({e.from, e.to, e.weight}));
    j["edges"] = std::move(edges);
    j["inputs"] = net.inputs();
    j["outputs"] = net.outputs();
    out << j.dump(2) << "\n";
}

void save_network_json_file(const Network& net, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    save_network_json(net, out);
}

Network load_network_edgelist(const std::string& edge_path,
                              const std::string& sidecar_path) {
    std::ifstream side(sidecar_path);
    if (!side) throw ParseError("cannot open " + sidecar_path);
    json meta;
    try {
        side >> meta;
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid sidecar JSON: ") + e.what());
    }

    std::ifstream in(edge_path);
    if (!in) throw ParseError("cannot open " + edge_path);
    std::vector<Edge> edges;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        Edge e;
        if (!(ls >> e.from >> e.to >> e.weight)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw ParseError("bad edge-list line: " + line);
        }
        edges.push_back(e);
    }
    try {
        return build_network(meta.at("n").get<int>(), edges,
                             meta.at("inputs").get<std::vector<int>>(),
                             meta.at("outputs").get<std::vector<int>>(),
                             parse_kind(meta.at("kind").get<std::string>()));
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad sidecar JSON: ") + e.what());
    }
}

}  // namespace netmod
