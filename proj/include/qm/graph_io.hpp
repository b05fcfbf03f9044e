#pragma once

#include "qm/graph.hpp"

#include <iosfwd>
#include <string>

#include <json.hpp>

namespace qm {

// Text format: "n m" on the first line, then m lines "u v" (0-indexed).
Graph read_graph_text(std::istream& in);
void write_graph_text(std::ostream& out, const Graph& g);

// JSON mirror: {"n": int, "edges": [[u, v], ...]}
nlohmann::json graph_to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);

/// Reads either format, sniffing for a leading '{'. Throws InvalidInput.
Graph load_graph(const std::string& path);
Graph parse_graph(const std::string& contents);

nlohmann::json order_to_json(const VertexOrder& ord);
nlohmann::json creation_to_json(const CreationSequence& cs);

} // namespace qm
