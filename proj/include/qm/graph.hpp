#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace qm {

using Vertex = int;

/// Dynamic bitset over the vertex universe {0, ..., n-1}.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(int universe);

    static VertexSet full(int universe);
    /// Low `universe` bits of `mask`; requires universe <= 64.
    static VertexSet from_mask(int universe, std::uint64_t mask);
    static VertexSet from_list(int universe, std::span<const Vertex> members);

    int universe() const noexcept { return universe_; }
    bool contains(Vertex v) const noexcept { return (words_[word(v)] >> bit(v)) & 1U; }
    void insert(Vertex v) noexcept { words_[word(v)] |= std::uint64_t{1} << bit(v); }
    void erase(Vertex v) noexcept { words_[word(v)] &= ~(std::uint64_t{1} << bit(v)); }
    void flip(Vertex v) noexcept { words_[word(v)] ^= std::uint64_t{1} << bit(v); }

    int count() const noexcept;
    bool empty() const noexcept { return count() == 0; }
    /// |this ∩ other|
    int intersection_count(const VertexSet& other) const noexcept;
    /// |this \ other|
    int difference_count(const VertexSet& other) const noexcept;

    VertexSet complement() const;
    std::vector<Vertex> members() const;
    /// Bits as an integer; requires universe <= 64.
    std::uint64_t mask() const;
    std::span<const std::uint64_t> words() const noexcept { return words_; }

    VertexSet& operator&=(const VertexSet& other) noexcept;
    VertexSet& operator|=(const VertexSet& other) noexcept;

    friend bool operator==(const VertexSet&, const VertexSet&) = default;

private:
    static int word(Vertex v) noexcept { return v >> 6; }
    static int bit(Vertex v) noexcept { return v & 63; }
    void trim() noexcept;

    int universe_ = 0;
    std::vector<std::uint64_t> words_;
};

/// A linear order on the vertices, stored as position -> vertex.
class VertexOrder {
public:
    VertexOrder() = default;

    static VertexOrder identity(int n);
    /// Throws InvalidInput unless `perm` is a permutation of 0..perm.size()-1.
    static VertexOrder from_permutation(std::vector<Vertex> perm);

    int size() const noexcept { return static_cast<int>(perm_.size()); }
    Vertex at(int position) const { return perm_[position]; }
    int position_of(Vertex v) const { return pos_[v]; }
    bool precedes(Vertex v, Vertex w) const { return pos_[v] < pos_[w]; }
    std::span<const Vertex> vertices() const noexcept { return perm_; }
    VertexOrder reversed() const;

    friend bool operator==(const VertexOrder& a, const VertexOrder& b) { return a.perm_ == b.perm_; }

private:
    std::vector<Vertex> perm_;
    std::vector<int> pos_;
};

/// Simple undirected graph with one adjacency bitset per vertex.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);

    int order() const noexcept { return static_cast<int>(rows_.size()); }
    bool adjacent(Vertex u, Vertex v) const { return rows_[u].contains(v); }
    const VertexSet& neighbors(Vertex v) const { return rows_[v]; }
    int degree(Vertex v) const { return rows_[v].count(); }
    std::int64_t edge_count() const;
    /// Edges (u, v) with u < v in lexicographic order.
    std::vector<std::pair<Vertex, Vertex>> edges() const;

    /// Throws InvalidInput on loops or out-of-range endpoints.
    void add_edge(Vertex u, Vertex v);
    void remove_edge(Vertex u, Vertex v);

    /// Copy of this graph with the vertex at position i of `ord` renamed to i.
    Graph relabeled(const VertexOrder& ord) const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    void check_vertex(Vertex v) const;

    std::vector<VertexSet> rows_;
};

/// Order plus roles defining a threshold graph: the vertex at position j > 0
/// is joined to every earlier vertex iff dominating[j]; dominating[0] is ignored.
struct CreationSequence {
    VertexOrder order;
    std::vector<bool> dominating;
};

Graph graph_from_edges(int n, std::span<const std::pair<Vertex, Vertex>> edges);
Graph complement(const Graph& g);
/// e(v, A) = |N(v) ∩ A|
int degree_count(const Graph& g, Vertex v, const VertexSet& a);
/// Ascending degree, ties broken by vertex index.
VertexOrder degree_order(const Graph& g);
/// Recognizes threshold graphs by peeling isolated or dominating vertices.
std::optional<CreationSequence> is_threshold(const Graph& g);
Graph threshold_from_creation(const CreationSequence& cs);
/// Order in which neighbourhoods of the generated graph are nested
/// (N(v) - w contained in N(w) + v whenever v comes first): non-dominating
/// vertices latest-first, then dominating vertices in creation order.
VertexOrder nesting_order(const CreationSequence& cs);

Graph complete_graph(int n);
Graph path_graph(int n);
Graph cycle_graph(int n);

} // namespace qm
