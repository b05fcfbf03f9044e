#include "qm/graph.hpp"

#include "qm/errors.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

namespace qm {

VertexSet::VertexSet(int universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

VertexSet VertexSet::full(int universe) {
    VertexSet s(universe);
    std::fill(s.words_.begin(), s.words_.end(), ~std::uint64_t{0});
    s.trim();
    return s;
}

VertexSet VertexSet::from_mask(int universe, std::uint64_t mask) {
    VertexSet s(universe);
    if (!s.words_.empty()) {
        s.words_[0] = mask;
    }
    s.trim();
    return s;
}

VertexSet VertexSet::from_list(int universe, std::span<const Vertex> members) {
    VertexSet s(universe);
    for (Vertex v : members) {
        if (v < 0 || v >= universe) {
            throw InvalidInput("vertex " + std::to_string(v) + " outside 0.." +
                               std::to_string(universe - 1));
        }
        s.insert(v);
    }
    return s;
}

void VertexSet::trim() noexcept {
    if (universe_ % 64 != 0 && !words_.empty()) {
        words_.back() &= (std::uint64_t{1} << (universe_ % 64)) - 1;
    }
}

int VertexSet::count() const noexcept {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
}

int VertexSet::intersection_count(const VertexSet& other) const noexcept {
    int c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) c += std::popcount(words_[i] & other.words_[i]);
    return c;
}

int VertexSet::difference_count(const VertexSet& other) const noexcept {
    int c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) c += std::popcount(words_[i] & ~other.words_[i]);
    return c;
}

VertexSet VertexSet::complement() const {
    VertexSet s(*this);
    for (auto& w : s.words_) w = ~w;
    s.trim();
    return s;
}

std::vector<Vertex> VertexSet::members() const {
    std::vector<Vertex> out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        for (auto w = words_[i]; w != 0; w &= w - 1) {
            out.push_back(static_cast<Vertex>(i * 64 + std::countr_zero(w)));
        }
    }
    return out;
}

std::uint64_t VertexSet::mask() const {
    if (universe_ > 64) throw InvalidInput("VertexSet::mask needs a universe of at most 64");
    return words_.empty() ? 0 : words_[0];
}

VertexSet& VertexSet::operator&=(const VertexSet& other) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
}

VertexSet& VertexSet::operator|=(const VertexSet& other) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
}

VertexOrder VertexOrder::identity(int n) {
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    return from_permutation(std::move(perm));
}

VertexOrder VertexOrder::from_permutation(std::vector<Vertex> perm) {
    VertexOrder o;
    const int n = static_cast<int>(perm.size());
    o.pos_.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        const Vertex v = perm[i];
        if (v < 0 || v >= n || o.pos_[v] != -1) {
            throw InvalidInput("order is not a permutation of 0.." + std::to_string(n - 1));
        }
        o.pos_[v] = i;
    }
    o.perm_ = std::move(perm);
    return o;
}

VertexOrder VertexOrder::reversed() const {
    std::vector<Vertex> perm(perm_.rbegin(), perm_.rend());
    return from_permutation(std::move(perm));
}

Graph::Graph(int n) : rows_(n, VertexSet(n)) {
    if (n < 0) throw InvalidInput("negative vertex count");
}

void Graph::check_vertex(Vertex v) const {
    if (v < 0 || v >= order()) {
        throw InvalidInput("endpoint " + std::to_string(v) + " outside 0.." + std::to_string(order() - 1));
    }
}

void Graph::add_edge(Vertex u, Vertex v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw InvalidInput("loop at vertex " + std::to_string(u));
    rows_[u].insert(v);
    rows_[v].insert(u);
}

void Graph::remove_edge(Vertex u, Vertex v) {
    check_vertex(u);
    check_vertex(v);
    rows_[u].erase(v);
    rows_[v].erase(u);
}

std::int64_t Graph::edge_count() const {
    std::int64_t twice = 0;
    for (const auto& r : rows_) twice += r.count();
    return twice / 2;
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex u = 0; u < order(); ++u) {
        for (Vertex v : rows_[u].members()) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

Graph Graph::relabeled(const VertexOrder& ord) const {
    Graph h(order());
    for (Vertex u = 0; u < order(); ++u) {
        for (Vertex v : rows_[u].members()) {
            h.rows_[ord.position_of(u)].insert(ord.position_of(v));
        }
    }
    return h;
}

Graph graph_from_edges(int n, std::span<const std::pair<Vertex, Vertex>> edges) {
    Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

Graph complement(const Graph& g) {
    const int n = g.order();
    Graph h(n);
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            if (!g.adjacent(u, v)) h.add_edge(u, v);
        }
    }
    return h;
}

int degree_count(const Graph& g, Vertex v, const VertexSet& a) {
    return g.neighbors(v).intersection_count(a);
}

VertexOrder degree_order(const Graph& g) {
    std::vector<Vertex> perm(g.order());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> deg(g.order());
    for (Vertex v = 0; v < g.order(); ++v) deg[v] = g.degree(v);
    std::stable_sort(perm.begin(), perm.end(), [&](Vertex a, Vertex b) { return deg[a] < deg[b]; });
    return VertexOrder::from_permutation(std::move(perm));
}

std::optional<CreationSequence> is_threshold(const Graph& g) {
    const int n = g.order();
    if (n == 0) return CreationSequence{VertexOrder::identity(0), {}};

    std::vector<int> deg(n);
    for (Vertex v = 0; v < n; ++v) deg[v] = g.degree(v);
    std::vector<bool> alive(n, true);
    std::vector<Vertex> removal;
    std::vector<bool> removal_dominating;
    int remaining = n;

    while (remaining > 1) {
        Vertex pick = -1;
        bool dominating = false;
        for (Vertex v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            if (deg[v] == 0 || deg[v] == remaining - 1) {
                pick = v;
                dominating = deg[v] == remaining - 1;
                break;
            }
        }
        if (pick < 0) return std::nullopt;
        alive[pick] = false;
        --remaining;
        for (Vertex w : g.neighbors(pick).members()) {
            if (alive[w]) --deg[w];
        }
        removal.push_back(pick);
        removal_dominating.push_back(dominating);
    }
    for (Vertex v = 0; v < n; ++v) {
        if (alive[v]) {
            removal.push_back(v);
            removal_dominating.push_back(false);
        }
    }

    // Creation order is the removal order reversed.
    std::vector<Vertex> perm(removal.rbegin(), removal.rend());
    std::vector<bool> dom(removal_dominating.rbegin(), removal_dominating.rend());
    return CreationSequence{VertexOrder::from_permutation(std::move(perm)), std::move(dom)};
}

Graph threshold_from_creation(const CreationSequence& cs) {
    const int n = cs.order.size();
    if (static_cast<int>(cs.dominating.size()) != n) {
        throw InvalidInput("creation sequence needs one role per vertex");
    }
    Graph g(n);
    for (int j = 1; j < n; ++j) {
        if (!cs.dominating[j]) continue;
        for (int i = 0; i < j; ++i) g.add_edge(cs.order.at(i), cs.order.at(j));
    }
    return g;
}

VertexOrder nesting_order(const CreationSequence& cs) {
    const int n = cs.order.size();
    std::vector<Vertex> perm;
    for (int j = n - 1; j >= 0; --j)
        if (j == 0 || !cs.dominating[j]) perm.push_back(cs.order.at(j));
    for (int j = 1; j < n; ++j)
        if (cs.dominating[j]) perm.push_back(cs.order.at(j));
    return VertexOrder::from_permutation(std::move(perm));
}

Graph complete_graph(int n) {
    Graph g(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Graph path_graph(int n) {
    Graph g(n);
    for (Vertex v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

Graph cycle_graph(int n) {
    Graph g = path_graph(n);
    if (n >= 3) g.add_edge(n - 1, 0);
    return g;
}

} // namespace qm
