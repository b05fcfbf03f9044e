#pragma once

// Brute-force reference implementations used by the tests. They work on
// plain adjacency matrices and literal definitions and share no code with
// the library beyond reading a Graph's adjacency.

#include "qm/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<int>>;

inline Matrix adjacency(const qm::Graph& g) {
    const int n = g.order();
    Matrix a(n, std::vector<int>(n, 0));
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) a[u][v] = g.adjacent(u, v) ? 1 : 0;
    return a;
}

inline std::vector<std::vector<int>> permutations(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

inline bool in(std::uint64_t mask, int v) { return (mask >> v) & 1U; }

// Edges from v into the members of `mask` other than those in `skip`.
inline int edges_into(const Matrix& a, int v, std::uint64_t mask, std::uint64_t skip = 0) {
    int c = 0;
    for (int z = 0; z < static_cast<int>(a.size()); ++z)
        if (in(mask, z) && !in(skip, z)) c += a[v][z];
    return c;
}

/// Numerator over n^3 of Ω_j(G, perm, A) for j = 0, 1, 2.
inline long long omega_num(const Matrix& a, const std::vector<int>& perm, std::uint64_t mask, int variant) {
    const int n = static_cast<int>(a.size());
    const std::uint64_t all = (std::uint64_t{1} << n) - 1;
    long long s = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const int v = perm[i];
            const int w = perm[j];
            if (variant == 0) {
                const std::uint64_t vw = (std::uint64_t{1} << v) | (std::uint64_t{1} << w);
                s += std::max(0, edges_into(a, v, mask, vw) - edges_into(a, w, mask, vw));
            } else {
                s += std::max(0, edges_into(a, v, mask) - edges_into(a, w, mask));
                if (variant == 2) s += std::max(0, edges_into(a, v, all & ~mask) - edges_into(a, w, all & ~mask));
            }
        }
    }
    return s;
}

/// Numerator over n^2 of the bad-pair functional: smallest a >= 1 with
/// #{v < w : n (e(v,A) - e(w,A)) > a} <= a, or 0 if no pair has a positive gap.
inline long long omega3_num(const Matrix& a, const std::vector<int>& perm, std::uint64_t mask) {
    const int n = static_cast<int>(a.size());
    std::vector<int> gaps;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) gaps.push_back(edges_into(a, perm[i], mask) - edges_into(a, perm[j], mask));
    if (std::none_of(gaps.begin(), gaps.end(), [](int g) { return g > 0; })) return 0;
    for (long long t = 1; t <= static_cast<long long>(n) * n; ++t) {
        long long bad = 0;
        for (int g : gaps) bad += static_cast<long long>(g) * n > t;
        if (bad <= t) return t;
    }
    return static_cast<long long>(n) * n;
}

inline long long any_num(const Matrix& a, const std::vector<int>& perm, std::uint64_t mask, int variant) {
    return variant == 3 ? omega3_num(a, perm, mask) : omega_num(a, perm, mask, variant);
}

inline long long max_subset(const Matrix& a, const std::vector<int>& perm, int variant) {
    const int n = static_cast<int>(a.size());
    long long best = 0;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) best = std::max(best, any_num(a, perm, m, variant));
    return best;
}

inline long long min_order(const Matrix& a, int variant) {
    long long best = std::numeric_limits<long long>::max();
    for (const auto& p : permutations(static_cast<int>(a.size()))) best = std::min(best, max_subset(a, p, variant));
    return best;
}

/// Σ_{v<w} |N(v) \ N(w)| (minus adjacency of v, w when excluding w).
inline long long tilde_num(const Matrix& a, const std::vector<int>& perm, bool exclude_w) {
    const int n = static_cast<int>(a.size());
    long long s = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (int z = 0; z < n; ++z) {
                if (exclude_w && z == perm[j]) continue;
                s += a[perm[i]][z] == 1 && a[perm[j]][z] == 0;
            }
        }
    }
    return s;
}

// Edge (u, v), u < v, as a bit index in an n-vertex edge mask.
inline int edge_bit(int n, int u, int v) {
    if (u > v) std::swap(u, v);
    return u * n - u * (u + 1) / 2 + (v - u - 1);
}

inline std::uint64_t edge_mask(const Matrix& a) {
    const int n = static_cast<int>(a.size());
    std::uint64_t m = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (a[u][v]) m |= std::uint64_t{1} << edge_bit(n, u, v);
    return m;
}

/// Edge masks of every labeled threshold graph on n vertices, from all
/// orders and role vectors.
inline std::vector<std::uint64_t> labeled_threshold_graphs(int n) {
    std::set<std::uint64_t> seen;
    for (const auto& p : permutations(n)) {
        for (std::uint64_t roles = 0; roles < (std::uint64_t{1} << n); roles += 2) {
            std::uint64_t m = 0;
            for (int j = 1; j < n; ++j)
                if (in(roles, j))
                    for (int i = 0; i < j; ++i) m |= std::uint64_t{1} << edge_bit(n, p[i], p[j]);
            seen.insert(m);
        }
    }
    return {seen.begin(), seen.end()};
}

inline int edit_distance(std::uint64_t graph_mask, const std::vector<std::uint64_t>& targets) {
    int best = std::numeric_limits<int>::max();
    for (auto t : targets) best = std::min(best, std::popcount(graph_mask ^ t));
    return best;
}

inline qm::Graph graph_from_mask(int n, std::uint64_t m) {
    qm::Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if ((m >> edge_bit(n, u, v)) & 1U) g.add_edge(u, v);
    return g;
}

/// All labeled graphs on n vertices (n <= 6 keeps this at 2^15).
inline std::vector<qm::Graph> all_labeled_graphs(int n) {
    std::vector<qm::Graph> out;
    const int pairs = n * (n - 1) / 2;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << pairs); ++m) out.push_back(graph_from_mask(n, m));
    return out;
}

// Canonical edge mask: minimum over relabelings that list vertices by
// nondecreasing degree.
inline std::uint64_t canonical(const Matrix& a) {
    const int n = static_cast<int>(a.size());
    std::vector<int> deg(n, 0);
    for (int u = 0; u < n; ++u) deg[u] = std::accumulate(a[u].begin(), a[u].end(), 0);
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::sort(p.begin(), p.end(), [&](int x, int y) { return deg[x] < deg[y] || (deg[x] == deg[y] && x < y); });
    std::vector<int> block_start;
    for (int i = 0; i < n; ++i)
        if (i == 0 || deg[p[i]] != deg[p[i - 1]]) block_start.push_back(i);
    block_start.push_back(n);
    std::uint64_t best = ~std::uint64_t{0};
    // Enumerate permutations within each degree block.
    std::function<void(std::size_t)> rec = [&](std::size_t b) {
        if (b + 1 == block_start.size()) {
            std::uint64_t m = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (a[p[i]][p[j]]) m |= std::uint64_t{1} << edge_bit(n, i, j);
            best = std::min(best, m);
            return;
        }
        auto first = p.begin() + block_start[b];
        auto last = p.begin() + block_start[b + 1];
        std::sort(first, last);
        do rec(b + 1);
        while (std::next_permutation(first, last));
    };
    rec(0);
    return best;
}

/// One representative per isomorphism class on n vertices, grown vertex by
/// vertex from the classes on n - 1 vertices.
inline std::vector<qm::Graph> graphs_up_to_isomorphism(int n) {
    std::vector<Matrix> reps{Matrix{}};
    for (int size = 1; size <= n; ++size) {
        std::map<std::uint64_t, Matrix> next;
        for (const auto& r : reps) {
            for (std::uint64_t nb = 0; nb < (std::uint64_t{1} << (size - 1)); ++nb) {
                Matrix a(size, std::vector<int>(size, 0));
                for (int u = 0; u < size - 1; ++u)
                    for (int v = 0; v < size - 1; ++v) a[u][v] = r[u][v];
                for (int u = 0; u < size - 1; ++u) a[u][size - 1] = a[size - 1][u] = in(nb, u);
                next.emplace(canonical(a), a);
            }
        }
        reps.clear();
        for (auto& [key, a] : next) reps.push_back(std::move(a));
    }
    std::vector<qm::Graph> out;
    for (const auto& a : reps) {
        qm::Graph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (a[u][v]) g.add_edge(u, v);
        out.push_back(std::move(g));
    }
    return out;
}

/// sup over f, g in {lo, 1}^k of |Σ w_i w_j D_ij f_i g_j|, all pairs enumerated.
inline double cut_bruteforce(const std::vector<std::vector<double>>& d, const std::vector<double>& w, int lo) {
    const int k = static_cast<int>(w.size());
    double best = 0.0;
    for (std::uint64_t fm = 0; fm < (std::uint64_t{1} << k); ++fm) {
        for (std::uint64_t gm = 0; gm < (std::uint64_t{1} << k); ++gm) {
            double s = 0.0;
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    s += w[i] * w[j] * d[i][j] * (in(fm, i) ? 1 : lo) * (in(gm, j) ? 1 : lo);
            best = std::max(best, std::abs(s));
        }
    }
    return best;
}

} // namespace oracle
