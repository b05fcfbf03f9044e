#include "qm/quasithreshold.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <ostream>

namespace qm {

namespace {

std::int64_t cube(std::int64_t n) { return n * n * n; }

std::int64_t tilde_sum(const Graph& g, const VertexOrder& ord, bool exclude_w) {
    if (ord.size() != g.order()) throw InvalidInput("order size does not match the graph");
    const int n = g.order();
    std::int64_t s = 0;
    for (int i = 0; i < n; ++i) {
        const Vertex v = ord.at(i);
        for (int j = i + 1; j < n; ++j) {
            const Vertex w = ord.at(j);
            s += g.neighbors(v).difference_count(g.neighbors(w));
            if (exclude_w && g.adjacent(v, w)) --s;
        }
    }
    return s;
}

Rational normalized(std::int64_t s, int n) { return n <= 1 ? Rational(0) : Rational(s, cube(n)); }

std::int64_t step_cost(int e, int back) { return std::min(e, back - e); }

// Backward counts e_j for vertices in order.
std::vector<int> back_counts(const Graph& g, const std::vector<Vertex>& perm) {
    const int n = static_cast<int>(perm.size());
    std::vector<int> e(n, 0);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < j; ++i) e[j] += g.adjacent(perm[i], perm[j]);
    return e;
}

std::int64_t order_cost(const Graph& g, const std::vector<Vertex>& perm) {
    const auto e = back_counts(g, perm);
    std::int64_t s = 0;
    for (int j = 0; j < static_cast<int>(perm.size()); ++j) s += step_cost(e[j], j);
    return s;
}

std::vector<Vertex> peel_order(const Graph& g) {
    const int n = g.order();
    std::vector<char> alive(n, 1);
    std::vector<int> deg(n);
    for (int v = 0; v < n; ++v) deg[v] = g.degree(v);
    std::vector<Vertex> removed;
    for (int left = n; left > 0; --left) {
        Vertex pick = -1;
        int best = std::numeric_limits<int>::max();
        for (int v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            const int c = std::min(deg[v], left - 1 - deg[v]);
            if (c < best) {
                best = c;
                pick = v;
            }
        }
        alive[pick] = 0;
        removed.push_back(pick);
        for (int u : g.neighbors(pick).members())
            if (alive[u]) --deg[u];
    }
    std::reverse(removed.begin(), removed.end());
    return removed;
}

std::vector<Vertex> exact_order(const Graph& g) {
    const int n = g.order();
    const std::size_t full = std::size_t{1} << n;
    std::vector<std::int64_t> f(full, std::numeric_limits<std::int64_t>::max());
    std::vector<signed char> last(full, -1);
    std::vector<std::uint64_t> adj(n);
    for (int v = 0; v < n; ++v) adj[v] = g.neighbors(v).mask();
    f[0] = 0;
    for (std::size_t p = 1; p < full; ++p) {
        const int size = std::popcount(p);
        for (int v = 0; v < n; ++v) {
            if (!((p >> v) & 1U)) continue;
            const std::size_t rest = p & ~(std::size_t{1} << v);
            const int e = std::popcount(adj[v] & rest);
            const std::int64_t c = f[rest] + step_cost(e, size - 1);
            if (c < f[p]) {
                f[p] = c;
                last[p] = static_cast<signed char>(v);
            }
        }
    }
    std::vector<Vertex> perm;
    for (std::size_t p = full - 1; p != 0; p &= ~(std::size_t{1} << last[p])) perm.push_back(last[p]);
    std::reverse(perm.begin(), perm.end());
    return perm;
}

// Adjacent swaps while they lower the cost.
std::vector<Vertex> swap_descent(const Graph& g, std::vector<Vertex> perm) {
    const int n = static_cast<int>(perm.size());
    auto e = back_counts(g, perm);
    bool improved = true;
    while (improved) {
        improved = false;
        for (int i = 0; i + 1 < n; ++i) {
            const int adj = g.adjacent(perm[i], perm[i + 1]) ? 1 : 0;
            const std::int64_t before = step_cost(e[i], i) + step_cost(e[i + 1], i + 1);
            // After the swap the later vertex moves to i and loses its edge to perm[i].
            const int ea = e[i + 1] - adj;
            const int eb = e[i] + adj;
            const std::int64_t after = step_cost(ea, i) + step_cost(eb, i + 1);
            if (after < before) {
                std::swap(perm[i], perm[i + 1]);
                e[i] = ea;
                e[i + 1] = eb;
                improved = true;
            }
        }
    }
    return perm;
}

} // namespace

Rational omega_tilde0(const Graph& g, const VertexOrder& ord) {
    return normalized(tilde_sum(g, ord, true), g.order());
}

Rational omega_tilde1(const Graph& g, const VertexOrder& ord) {
    return normalized(tilde_sum(g, ord, false), g.order());
}

FunctionalReport omega_tilde_min(const Graph& g) {
    const VertexOrder ord = degree_order(g);
    FunctionalReport r;
    r.exact_value = omega_tilde1(g, ord);
    r.value = r.exact_value->to_double();
    r.bound = BoundKind::exact;
    r.order = ord;
    r.method = "omega-tilde1/order:degree";
    return r;
}

std::string_view to_string(EditStrategy s) {
    switch (s) {
    case EditStrategy::exact: return "exact";
    case EditStrategy::dp_degree: return "dp_degree";
    case EditStrategy::dp_search: return "dp_search";
    }
    return "?";
}

EditReport edit_for_order(const Graph& g, const VertexOrder& ord) {
    if (ord.size() != g.order()) throw InvalidInput("order size does not match the graph");
    const int n = g.order();
    std::vector<Vertex> perm(ord.vertices().begin(), ord.vertices().end());
    const auto e = back_counts(g, perm);
    EditReport r;
    r.witness.order = ord;
    r.witness.dominating.assign(n, false);
    for (int j = 0; j < n; ++j) {
        r.distance += step_cost(e[j], j);
        if (j > 0) r.witness.dominating[j] = e[j] > j - e[j];
    }
    r.bound = r.distance == 0 ? BoundKind::exact : BoundKind::upper_bound;
    r.method = "edit/order:given";
    return r;
}

EditReport threshold_edit_distance(const Graph& g, EditStrategy strategy, const Limits& limits) {
    const int n = g.order();
    std::vector<Vertex> best;
    if (strategy == EditStrategy::exact) {
        if (n > limits.exact_order || n > 24) throw SizeLimitExceeded("exact edit distance", n, std::min(limits.exact_order, 24));
        best = exact_order(g);
    } else {
        const VertexOrder asc = degree_order(g);
        std::vector<std::vector<Vertex>> candidates;
        candidates.emplace_back(asc.vertices().begin(), asc.vertices().end());
        candidates.emplace_back(asc.vertices().rbegin(), asc.vertices().rend());
        candidates.push_back(peel_order(g));
        std::int64_t cost = std::numeric_limits<std::int64_t>::max();
        for (auto& c : candidates) {
            if (strategy == EditStrategy::dp_search) c = swap_descent(g, c);
            const auto v = order_cost(g, c);
            if (v < cost) {
                cost = v;
                best = c;
            }
        }
    }
    EditReport r = edit_for_order(g, VertexOrder::from_permutation(best));
    if (strategy == EditStrategy::exact) r.bound = BoundKind::exact;
    r.method = "edit/" + std::string(to_string(strategy));
    return r;
}

std::vector<DiagnosticRow> quasithreshold_diagnostic(const std::vector<Graph>& graphs, const ScanOptions& opts) {
    std::vector<DiagnosticRow> rows;
    for (std::size_t idx = 0; idx < graphs.size(); ++idx) {
        const Graph& g = graphs[idx];
        const int n = g.order();
        if (!rows.empty() && n < rows.back().n) throw InvalidInput("diagnostic graph sizes must be nondecreasing");
        DiagnosticRow row;
        row.index = static_cast<int>(idx);
        row.n = n;
        const VertexOrder deg = degree_order(g);
        row.omega_tilde0 = omega_tilde0(g, deg).to_double();
        row.omega_tilde1 = omega_tilde_min(g).value;
        const auto edit = threshold_edit_distance(g, EditStrategy::dp_search, opts.limits);
        row.edit_density = n == 0 ? 0.0 : 2.0 * static_cast<double>(edit.distance) / (static_cast<double>(n) * n);
        const auto subset = n <= opts.limits.exact_subset ? SubsetStrategy::exact : SubsetStrategy::local_search;
        row.omega2_degree = omega_max_subset(g, deg, 2, subset, opts).value;
        rows.push_back(row);
    }
    // Least-squares fit of omega_tilde1 = a + b / n.
    std::string flag = "insufficient_sizes(heuristic)";
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (const auto& r : rows) {
        if (r.n == 0) continue;
        const double x = 1.0 / r.n;
        sx += x;
        sy += r.omega_tilde1;
        sxx += x * x;
        sxy += x * r.omega_tilde1;
        ++m;
    }
    const double det = m * sxx - sx * sx;
    if (m >= 2 && det > 1e-18) {
        const double slope = (m * sxy - sx * sy) / det;
        const double intercept = (sy - slope * sx) / m;
        flag = slope > 0 && intercept <= 0.01 ? "trend_to_zero(heuristic)" : "no_trend(heuristic)";
    }
    if (m >= 1 && std::all_of(rows.begin(), rows.end(), [](const DiagnosticRow& r) { return r.omega_tilde1 == 0.0; }))
        flag = "trend_to_zero(heuristic)";
    for (auto& r : rows) r.flag = flag;
    return rows;
}

void write_diagnostic_csv(std::ostream& out, const std::vector<DiagnosticRow>& rows) {
    out << "index,n,omega_tilde0,omega_tilde1,edit_density,omega2_degree,flag\n";
    for (const auto& r : rows) {
        out << r.index << ',' << r.n << ',' << r.omega_tilde0 << ',' << r.omega_tilde1 << ',' << r.edit_density << ','
            << r.omega2_degree << ',' << r.flag << '\n';
    }
}

} // namespace qm
