#include "qm/functionals.hpp"

#include "order_search.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <thread>

namespace qm {

namespace {

std::int64_t cube(std::int64_t n) { return n * n * n; }

void check_variant(int variant, int max_variant) {
    if (variant < 0 || variant > max_variant) {
        throw InvalidInput("unknown functional variant " + std::to_string(variant));
    }
}

void check_sizes(const Graph& g, const VertexOrder& ord, const VertexSet& a) {
    if (ord.size() != g.order()) throw InvalidInput("order size does not match the graph");
    if (a.universe() != g.order()) throw InvalidInput("subset universe does not match the graph");
}

// Numerator over n^2 of the bad-pair functional for edge counts x listed in
// order positions. The infimum sits at a breakpoint of the sorted gaps.
std::int64_t bad_pair_numerator(std::span<const int> x, std::vector<std::int64_t>& hist) {
    const int n = static_cast<int>(x.size());
    hist.assign(n + 1, 0);
    bool any = false;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const int gap = x[i] - x[j];
            if (gap > 0) {
                ++hist[gap];
                any = true;
            }
        }
    }
    if (!any) return 0;
    // Distinct gap values u_1 > u_2 > ... ; eps in [u_{s+1}/n, u_s/n) sees
    // C_s = #{gaps >= u_s} bad pairs and is feasible iff eps >= C_s / n^2.
    const std::int64_t nn = n;
    std::int64_t best = -1;
    std::int64_t counted = 0;
    int upper = -1; // u_s, -1 standing for infinity
    for (int u = n; u >= 0; --u) {
        if (u > 0 && hist[u] == 0) continue;
        // u plays the role of u_{s+1}; the interval is [u/n, upper/n).
        const std::int64_t cand = std::max<std::int64_t>(u * nn, counted);
        if (upper < 0 || cand < upper * nn) {
            if (best < 0 || cand < best) best = cand;
        }
        if (u == 0) break;
        counted += hist[u];
        upper = u;
    }
    return best;
}

// Incrementally maintained sum over position pairs i < j for variants 0..2.
class SubsetScanner {
public:
    SubsetScanner(const Graph& h, int variant)
        : h_(h), variant_(variant), n_(h.order()), in_(n_, 0), x_(n_, 0), deg_(n_),
          affected_(n_, 0), saved_(n_, 0) {
        for (int v = 0; v < n_; ++v) deg_[v] = h.degree(v);
    }

    void reset(const std::vector<char>& members) {
        in_ = members;
        for (int v = 0; v < n_; ++v) {
            int c = 0;
            for (int u : h_.neighbors(v).members()) c += in_[u];
            x_[v] = c;
        }
        total_ = 0;
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j) total_ += term(i, j);
    }

    std::int64_t total() const noexcept { return total_; }
    const std::vector<char>& members() const noexcept { return in_; }

    void flip(int z) {
        const auto nbrs = h_.neighbors(z).members();
        for (int a : nbrs) affected_[a] = 1;
        const std::int64_t before = touching(nbrs);
        in_[z] ^= 1;
        const int delta = in_[z] ? 1 : -1;
        for (int a : nbrs) x_[a] += delta;
        const std::int64_t after = touching(nbrs);
        for (int a : nbrs) affected_[a] = 0;
        total_ += after - before;
    }

private:
    std::int64_t term(int i, int j) const {
        switch (variant_) {
        case 0: {
            const int corr = h_.adjacent(i, j) ? (in_[j] - in_[i]) : 0;
            return std::max(0, x_[i] - x_[j] - corr);
        }
        case 1: return std::max(0, x_[i] - x_[j]);
        default:
            return std::max(0, x_[i] - x_[j]) + std::max(0, (deg_[i] - x_[i]) - (deg_[j] - x_[j]));
        }
    }

    std::int64_t touching(const std::vector<int>& nbrs) const {
        std::int64_t s = 0;
        for (int a : nbrs) {
            for (int b = 0; b < n_; ++b) {
                if (b == a || (affected_[b] && b < a)) continue;
                s += a < b ? term(a, b) : term(b, a);
            }
        }
        return s;
    }

    const Graph& h_;
    int variant_;
    int n_;
    std::vector<char> in_;
    std::vector<int> x_;
    std::vector<int> deg_;
    std::vector<char> affected_;
    std::vector<char> saved_;
    std::int64_t total_ = 0;
};

struct SubsetOptimum {
    std::int64_t numerator = -1;
    std::uint64_t mask = 0;
};

bool better(std::int64_t value, std::uint64_t mask, const SubsetOptimum& best) {
    return value > best.numerator || (value == best.numerator && mask < best.mask);
}

std::vector<char> mask_members(int n, std::uint64_t mask) {
    std::vector<char> m(n);
    for (int v = 0; v < n; ++v) m[v] = (mask >> v) & 1U;
    return m;
}

// Gray-code walk over the low `free_bits` bits with the high bits fixed.
SubsetOptimum scan_block(const Graph& h, int variant, std::uint64_t high, int free_bits) {
    const int n = h.order();
    SubsetOptimum best;
    std::uint64_t mask = high;
    const std::uint64_t steps = std::uint64_t{1} << free_bits;
    if (variant == 3) {
        std::vector<int> x(n);
        std::vector<std::int64_t> hist;
        for (int v = 0; v < n; ++v) x[v] = std::popcount(h.neighbors(v).mask() & mask);
        for (std::uint64_t s = 0; s < steps; ++s) {
            if (s > 0) {
                const int z = std::countr_zero(s);
                mask ^= std::uint64_t{1} << z;
                const int delta = ((mask >> z) & 1U) ? 1 : -1;
                for (int a : h.neighbors(z).members()) x[a] += delta;
            }
            const auto value = bad_pair_numerator(x, hist);
            if (better(value, mask, best)) best = {value, mask};
        }
        return best;
    }
    SubsetScanner scanner(h, variant);
    scanner.reset(mask_members(n, mask));
    for (std::uint64_t s = 0; s < steps; ++s) {
        if (s > 0) {
            const int z = std::countr_zero(s);
            mask ^= std::uint64_t{1} << z;
            scanner.flip(z);
        }
        if (better(scanner.total(), mask, best)) best = {scanner.total(), mask};
    }
    return best;
}

SubsetOptimum exact_subset_scan(const Graph& h, int variant, int threads) {
    const int n = h.order();
    int split = 0;
    while (split < n - 1 && (1 << (split + 1)) <= std::max(1, threads)) ++split;
    const int free_bits = n - split;
    const int blocks = 1 << split;
    std::vector<SubsetOptimum> results(blocks);
    auto run = [&](int b) {
        results[b] = scan_block(h, variant, static_cast<std::uint64_t>(b) << free_bits, free_bits);
    };
    if (blocks == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (int b = 0; b < blocks; ++b) pool.emplace_back(run, b);
        for (auto& t : pool) t.join();
    }
    SubsetOptimum best;
    for (const auto& r : results)
        if (better(r.numerator, r.mask, best)) best = r;
    return best;
}

std::int64_t evaluate_members(const Graph& h, int variant, const std::vector<char>& members,
                              std::vector<std::int64_t>& hist) {
    const int n = h.order();
    if (variant == 3) {
        std::vector<int> x(n);
        for (int v = 0; v < n; ++v) {
            int c = 0;
            for (int u : h.neighbors(v).members()) c += members[u];
            x[v] = c;
        }
        return bad_pair_numerator(x, hist);
    }
    SubsetScanner s(h, variant);
    s.reset(members);
    return s.total();
}

std::vector<std::vector<char>> local_search_starts(const Graph& h) {
    const int n = h.order();
    std::vector<std::vector<char>> starts;
    starts.emplace_back(n, 0);
    starts.emplace_back(n, 1);
    const int stride = n > 32 ? (n + 15) / 16 : 1;
    for (int v = 0; v < n; v += stride) {
        std::vector<char> m(n, 0);
        for (int u : h.neighbors(v).members()) m[u] = 1;
        starts.push_back(std::move(m));
    }
    std::vector<int> by_degree(n);
    std::iota(by_degree.begin(), by_degree.end(), 0);
    std::stable_sort(by_degree.begin(), by_degree.end(),
                     [&](int a, int b) { return h.degree(a) < h.degree(b); });
    for (int t = 1; t < n; t += stride) {
        std::vector<char> m(n, 0);
        for (int i = 0; i < t; ++i) m[by_degree[i]] = 1;
        starts.push_back(std::move(m));
    }
    return starts;
}

// Multi-start first-improvement single-flip hill climbing; a lower bound.
std::pair<std::int64_t, std::vector<char>> local_search_subset(const Graph& h, int variant) {
    const int n = h.order();
    constexpr int max_passes = 100;
    std::int64_t best = -1;
    std::vector<char> best_members(n, 0);
    std::vector<std::int64_t> hist;
    for (auto& start : local_search_starts(h)) {
        std::int64_t current = 0;
        std::vector<char> members = start;
        if (variant == 3) {
            current = evaluate_members(h, variant, members, hist);
            for (int pass = 0; pass < max_passes; ++pass) {
                bool improved = false;
                for (int z = 0; z < n; ++z) {
                    members[z] ^= 1;
                    const auto v = evaluate_members(h, variant, members, hist);
                    if (v > current) {
                        current = v;
                        improved = true;
                    } else {
                        members[z] ^= 1;
                    }
                }
                if (!improved) break;
            }
        } else {
            SubsetScanner s(h, variant);
            s.reset(members);
            for (int pass = 0; pass < max_passes; ++pass) {
                bool improved = false;
                for (int z = 0; z < n; ++z) {
                    const auto before = s.total();
                    s.flip(z);
                    if (s.total() > before) {
                        improved = true;
                    } else {
                        s.flip(z);
                    }
                }
                if (!improved) break;
            }
            current = s.total();
            members = s.members();
        }
        if (current > best) {
            best = current;
            best_members = members;
        }
    }
    return {best, best_members};
}

Rational as_value(std::int64_t numerator, int n, int variant) {
    const std::int64_t den = variant == 3 ? static_cast<std::int64_t>(n) * n : cube(n);
    return Rational(numerator, den);
}

FunctionalReport trivial_report(int n, const std::string& method) {
    FunctionalReport r;
    r.value = 0.0;
    r.exact_value = Rational(0);
    r.bound = BoundKind::exact;
    r.order = VertexOrder::identity(n);
    r.subset = std::vector<int>{};
    r.method = method;
    return r;
}

std::string variant_tag(int variant) { return "omega" + std::to_string(variant); }

} // namespace

std::string_view to_string(SubsetStrategy s) {
    return s == SubsetStrategy::exact ? "exact" : "local_search";
}

std::string_view to_string(OrderStrategy s) {
    switch (s) {
    case OrderStrategy::exact: return "exact";
    case OrderStrategy::degree: return "degree";
    case OrderStrategy::order_search: return "order_search";
    }
    return "?";
}

Rational omega0_at(const Graph& g, const VertexOrder& ord, const VertexSet& a) {
    check_sizes(g, ord, a);
    const int n = g.order();
    if (n <= 1) return Rational(0);
    std::int64_t sum = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const Vertex v = ord.at(i);
            const Vertex w = ord.at(j);
            VertexSet rest = a;
            rest.erase(v);
            rest.erase(w);
            sum += std::max(0, degree_count(g, v, rest) - degree_count(g, w, rest));
        }
    }
    return Rational(sum, cube(n));
}

Rational omega1_at(const Graph& g, const VertexOrder& ord, const VertexSet& a) {
    check_sizes(g, ord, a);
    const int n = g.order();
    if (n <= 1) return Rational(0);
    std::vector<int> x(n);
    for (int i = 0; i < n; ++i) x[i] = degree_count(g, ord.at(i), a);
    std::int64_t sum = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) sum += std::max(0, x[i] - x[j]);
    return Rational(sum, cube(n));
}

Rational omega2_at(const Graph& g, const VertexOrder& ord, const VertexSet& a) {
    return omega1_at(g, ord, a) + omega1_at(g, ord, a.complement());
}

Rational omega3_at_exact(const Graph& g, const VertexOrder& ord, const VertexSet& a) {
    check_sizes(g, ord, a);
    const int n = g.order();
    if (n <= 1) return Rational(0);
    std::vector<int> x(n);
    for (int i = 0; i < n; ++i) x[i] = degree_count(g, ord.at(i), a);
    std::vector<std::int64_t> hist;
    return Rational(bad_pair_numerator(x, hist), static_cast<std::int64_t>(n) * n);
}

double omega3_at(const Graph& g, const VertexOrder& ord, const VertexSet& a) {
    return omega3_at_exact(g, ord, a).to_double();
}

Rational omega_at(const Graph& g, const VertexOrder& ord, const VertexSet& a, int variant) {
    check_variant(variant, 3);
    switch (variant) {
    case 0: return omega0_at(g, ord, a);
    case 1: return omega1_at(g, ord, a);
    case 2: return omega2_at(g, ord, a);
    default: return omega3_at_exact(g, ord, a);
    }
}

FunctionalReport omega_max_subset(const Graph& g, const VertexOrder& ord, int variant,
                                  SubsetStrategy strategy, const ScanOptions& opts) {
    check_variant(variant, 3);
    if (ord.size() != g.order()) throw InvalidInput("order size does not match the graph");
    const int n = g.order();
    if (n <= 1) {
        auto r = trivial_report(n, variant_tag(variant) + "/subset:trivial");
        r.order = ord;
        return r;
    }
    if (strategy == SubsetStrategy::exact && (n > opts.limits.exact_subset || n > 62)) {
        if (!opts.allow_heuristic) {
            throw SizeLimitExceeded("exact subset scan", n, std::min(opts.limits.exact_subset, 62));
        }
        strategy = SubsetStrategy::local_search;
    }

    const Graph h = g.relabeled(ord);
    FunctionalReport r;
    r.order = ord;
    std::vector<char> members;
    std::int64_t numerator = 0;
    if (strategy == SubsetStrategy::exact) {
        const auto best = exact_subset_scan(h, variant, opts.threads);
        numerator = best.numerator;
        members = mask_members(n, best.mask);
        r.bound = BoundKind::exact;
        r.method = variant_tag(variant) + "/subset:exact";
    } else {
        auto [value, m] = local_search_subset(h, variant);
        numerator = value;
        members = std::move(m);
        r.bound = BoundKind::lower_bound;
        r.method = variant_tag(variant) + "/subset:local_search";
    }
    std::vector<int> subset;
    for (int p = 0; p < n; ++p)
        if (members[p]) subset.push_back(ord.at(p));
    std::sort(subset.begin(), subset.end());
    r.subset = std::move(subset);
    r.exact_value = as_value(numerator, n, variant);
    r.value = r.exact_value->to_double();
    return r;
}

namespace {

detail::PairTable<std::int64_t> graph_pair_table(const Graph& g, int variant) {
    const int n = g.order();
    const std::size_t subsets = std::size_t{1} << n;
    detail::PairTable<std::int64_t> t(n, subsets);
    std::vector<std::uint64_t> adj(n);
    std::vector<int> deg(n);
    for (int v = 0; v < n; ++v) {
        adj[v] = g.neighbors(v).mask();
        deg[v] = g.degree(v);
    }
    std::vector<int> x(n);
    for (std::size_t a = 0; a < subsets; ++a) {
        for (int v = 0; v < n; ++v) x[v] = std::popcount(adj[v] & a);
        for (int v = 0; v < n; ++v) {
            for (int w = 0; w < n; ++w) {
                if (v == w) continue;
                std::int64_t term = 0;
                if (variant == 0) {
                    const int corr = ((adj[v] >> w) & 1U)
                                         ? static_cast<int>((a >> w) & 1U) - static_cast<int>((a >> v) & 1U)
                                         : 0;
                    term = std::max(0, x[v] - x[w] - corr);
                } else {
                    term = std::max(0, x[v] - x[w]);
                    if (variant == 2) term += std::max(0, (deg[v] - x[v]) - (deg[w] - x[w]));
                }
                t.at(a, v, w) = term;
            }
        }
    }
    return t;
}

// Exhaustive order scan for the bad-pair variant, which does not decompose
// over pairs; subsets that beat the incumbent before are tried first.
std::pair<std::vector<int>, std::pair<std::int64_t, std::uint64_t>>
min_order_bad_pairs(const Graph& g, std::vector<int> seed) {
    const int n = g.order();
    const std::size_t subsets = std::size_t{1} << n;
    std::vector<int> xa(subsets * n);
    for (std::size_t a = 0; a < subsets; ++a)
        for (int v = 0; v < n; ++v) xa[a * n + v] = std::popcount(g.neighbors(v).mask() & a);

    std::vector<std::int64_t> hist;
    std::vector<int> x(n);
    auto value_at = [&](const std::vector<int>& perm, std::size_t a) {
        for (int i = 0; i < n; ++i) x[i] = xa[a * n + perm[i]];
        return bad_pair_numerator(x, hist);
    };

    // Full evaluation of the seed order.
    std::int64_t best = -1;
    std::uint64_t best_mask = 0;
    for (std::size_t a = 0; a < subsets; ++a) {
        const auto v = value_at(seed, a);
        if (v > best) {
            best = v;
            best_mask = a;
        }
    }
    std::vector<int> best_order = seed;
    std::vector<std::size_t> killers{best_mask};

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool beaten = false;
        for (auto k : killers) {
            if (value_at(perm, k) >= best) {
                beaten = true;
                break;
            }
        }
        if (beaten) continue;
        std::int64_t worst = -1;
        std::uint64_t worst_mask = 0;
        for (std::size_t a = 0; a < subsets; ++a) {
            const auto v = value_at(perm, a);
            if (v > worst) {
                worst = v;
                worst_mask = a;
            }
            if (worst >= best) break;
        }
        if (worst >= best) {
            if (killers.size() < 16) killers.push_back(worst_mask);
            continue;
        }
        best = worst;
        best_mask = worst_mask;
        best_order = perm;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {best_order, {best, best_mask}};
}

} // namespace

FunctionalReport omega_min_order(const Graph& g, int variant, OrderStrategy strategy,
                                 const ScanOptions& opts) {
    check_variant(variant, 3);
    const int n = g.order();
    if (n <= 1) return trivial_report(n, variant_tag(variant) + "/order:trivial");

    const VertexOrder deg = degree_order(g);
    if (strategy == OrderStrategy::exact) {
        if (n > opts.limits.exact_order || n > 20) {
            throw SizeLimitExceeded("exact order scan", n, std::min(opts.limits.exact_order, 20));
        }
        std::vector<int> seed(deg.vertices().begin(), deg.vertices().end());
        std::vector<int> order;
        std::int64_t numerator = 0;
        std::uint64_t mask = 0;
        if (variant == 3) {
            auto [o, vm] = min_order_bad_pairs(g, seed);
            order = std::move(o);
            numerator = vm.first;
            mask = vm.second;
        } else {
            const auto table = graph_pair_table(g, variant);
            const auto best = detail::minimize_over_orders(table, seed);
            order = best.order;
            numerator = best.value;
            mask = best.subset;
        }
        FunctionalReport r;
        r.exact_value = as_value(numerator, n, variant);
        r.value = r.exact_value->to_double();
        r.bound = BoundKind::exact;
        r.order = VertexOrder::from_permutation(std::move(order));
        r.subset = VertexSet::from_mask(n, mask).members();
        r.method = variant_tag(variant) + "/order:exact/subset:exact";
        return r;
    }

    auto inner = [&](const VertexOrder& ord) {
        return omega_max_subset(g, ord, variant, SubsetStrategy::exact, opts);
    };

    FunctionalReport r = inner(deg);
    const bool inner_exact = r.bound == BoundKind::exact;
    if (strategy == OrderStrategy::order_search) {
        std::vector<Vertex> perm(deg.vertices().begin(), deg.vertices().end());
        bool improved = true;
        while (improved) {
            improved = false;
            for (int i = 0; i + 1 < n; ++i) {
                std::swap(perm[i], perm[i + 1]);
                auto cand = inner(VertexOrder::from_permutation(perm));
                if (cand.exact_value && *cand.exact_value < *r.exact_value) {
                    r = std::move(cand);
                    improved = true;
                } else {
                    std::swap(perm[i], perm[i + 1]);
                }
            }
        }
    }

    const std::string inner_tag = inner_exact ? "subset:exact" : "subset:local_search";
    r.method = variant_tag(variant) + "/order:" + std::string(to_string(strategy)) + "/" + inner_tag;
    // Degree order is optimal for the symmetrized variant.
    if (inner_exact) {
        r.bound = variant == 2 ? BoundKind::exact : BoundKind::upper_bound;
    } else {
        r.bound = variant == 2 ? BoundKind::lower_bound : BoundKind::estimate;
    }
    return r;
}

} // namespace qm
