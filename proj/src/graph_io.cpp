#include "qm/graph_io.hpp"

#include "qm/errors.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace qm {

Graph read_graph_text(std::istream& in) {
    long long n = -1;
    long long m = -1;
    if (!(in >> n >> m) || n < 0 || m < 0) {
        throw InvalidInput("graph text: expected header 'n m' with non-negative counts");
    }
    if (n > (1 << 20)) throw InvalidInput("graph text: vertex count too large");
    Graph g(static_cast<int>(n));
    for (long long i = 0; i < m; ++i) {
        long long u = -1;
        long long v = -1;
        if (!(in >> u >> v)) {
            throw InvalidInput("graph text: expected " + std::to_string(m) + " edge lines, got " +
                               std::to_string(i));
        }
        if (u < 0 || v < 0 || u >= n || v >= n) {
            throw InvalidInput("graph text: edge endpoint out of range on edge " + std::to_string(i));
        }
        g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    std::string trailing;
    if (in >> trailing) throw InvalidInput("graph text: trailing data after edge list");
    return g;
}

void write_graph_text(std::ostream& out, const Graph& g) {
    const auto edges = g.edges();
    out << g.order() << ' ' << edges.size() << '\n';
    for (auto [u, v] : edges) out << u << ' ' << v << '\n';
}

nlohmann::json graph_to_json(const Graph& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (auto [u, v] : g.edges()) edges.push_back({u, v});
    return {{"n", g.order()}, {"edges", edges}};
}

Graph graph_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer()) {
        throw InvalidInput("graph json: missing integer field 'n'");
    }
    const auto n = j["n"].get<long long>();
    if (n < 0 || n > (1 << 20)) throw InvalidInput("graph json: bad vertex count");
    Graph g(static_cast<int>(n));
    if (!j.contains("edges")) return g;
    if (!j["edges"].is_array()) throw InvalidInput("graph json: 'edges' must be an array");
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
            throw InvalidInput("graph json: each edge must be [u, v]");
        }
        const auto u = e[0].get<long long>();
        const auto v = e[1].get<long long>();
        if (u < 0 || v < 0 || u >= n || v >= n) throw InvalidInput("graph json: edge endpoint out of range");
        g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    return g;
}

Graph parse_graph(const std::string& contents) {
    const auto first = contents.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && contents[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(contents);
        } catch (const nlohmann::json::parse_error& e) {
            throw InvalidInput(std::string("graph json: ") + e.what());
        }
        return graph_from_json(j);
    }
    std::istringstream in(contents);
    return read_graph_text(in);
}

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str());
}

nlohmann::json order_to_json(const VertexOrder& ord) {
    return nlohmann::json(std::vector<Vertex>(ord.vertices().begin(), ord.vertices().end()));
}

nlohmann::json creation_to_json(const CreationSequence& cs) {
    std::vector<int> roles(cs.dominating.begin(), cs.dominating.end());
    return {{"order", order_to_json(cs.order)}, {"roles", roles}};
}

} // namespace qm
