#include "qm/kernel_functionals.hpp"

#include "order_search.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <thread>

namespace qm {

namespace {

bool integral(const StepKernel& w) { return w.equal_weights() && w.zero_one(); }

void check_variant(int variant) {
    if (variant != 1 && variant != 2) throw InvalidInput("kernel functionals support variants 1 and 2");
}

void check_order(const StepKernel& w, std::span<const int> order) {
    const int k = w.parts();
    if (static_cast<int>(order.size()) != k) throw InvalidInput("part order size does not match the kernel");
    std::vector<char> seen(k, 0);
    for (int p : order) {
        if (p < 0 || p >= k || seen[p]) throw InvalidInput("part order is not a permutation");
        seen[p] = 1;
    }
}

// Kernel data in order positions. val[i][z] carries the column weight and
// pw[i][j] the pair weight, so both are 1 in the integral case.
template <class T>
struct Terms {
    int k = 0;
    std::vector<T> val;
    std::vector<T> pw;
    std::vector<T> row_sum;

    Terms(const StepKernel& w, std::span<const int> order) : k(w.parts()) {
        val.resize(static_cast<std::size_t>(k) * k);
        pw.resize(val.size());
        row_sum.assign(k, T{});
        for (int i = 0; i < k; ++i) {
            for (int z = 0; z < k; ++z) {
                const int a = order[i];
                const int b = order[z];
                if constexpr (std::is_integral_v<T>) {
                    val[i * k + z] = static_cast<T>(w(a, b));
                    pw[i * k + z] = 1;
                } else {
                    val[i * k + z] = w.weight(b) * w(a, b);
                    pw[i * k + z] = w.weight(a) * w.weight(b);
                }
                row_sum[i] += val[i * k + z];
            }
        }
    }

    T pair(int variant, const std::vector<T>& x, int i, int j) const {
        T d = x[i] - x[j];
        T s = d > T{} ? d : T{};
        if (variant == 2) {
            const T e = (row_sum[i] - x[i]) - (row_sum[j] - x[j]);
            if (e > T{}) s += e;
        }
        return pw[i * k + j] * s;
    }

    void load(std::uint64_t mask, std::vector<T>& x) const {
        x.assign(k, T{});
        for (int i = 0; i < k; ++i)
            for (int z = 0; z < k; ++z)
                if ((mask >> z) & 1U) x[i] += val[i * k + z];
    }

    T total(int variant, const std::vector<T>& x) const {
        T s{};
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) s += pair(variant, x, i, j);
        return s;
    }
};

template <class T>
struct Best {
    T value{};
    std::uint64_t mask = 0;
    bool set = false;

    void offer(T v, std::uint64_t m) {
        if (!set || v > value || (v == value && m < mask)) {
            value = v;
            mask = m;
            set = true;
        }
    }
};

template <class T>
Best<T> scan_block(const Terms<T>& t, int variant, std::uint64_t high, int free_bits) {
    Best<T> best;
    std::vector<T> x;
    std::uint64_t mask = high;
    t.load(mask, x);
    const std::uint64_t steps = std::uint64_t{1} << free_bits;
    for (std::uint64_t s = 0; s < steps; ++s) {
        if (s > 0) {
            const int z = std::countr_zero(s);
            mask ^= std::uint64_t{1} << z;
            if constexpr (std::is_integral_v<T>) {
                const T sign = ((mask >> z) & 1U) ? 1 : -1;
                for (int i = 0; i < t.k; ++i) x[i] += sign * t.val[i * t.k + z];
            } else if ((s & 255U) == 0) {
                t.load(mask, x);
            } else {
                const T sign = ((mask >> z) & 1U) ? 1.0 : -1.0;
                for (int i = 0; i < t.k; ++i) x[i] += sign * t.val[i * t.k + z];
            }
        }
        best.offer(t.total(variant, x), mask);
    }
    return best;
}

template <class T>
Best<T> exact_scan(const Terms<T>& t, int variant, int threads) {
    const int k = t.k;
    int split = 0;
    while (split < k - 1 && (1 << (split + 1)) <= std::max(1, threads)) ++split;
    const int free_bits = k - split;
    std::vector<Best<T>> results(std::size_t{1} << split);
    auto run = [&](std::size_t b) { results[b] = scan_block(t, variant, static_cast<std::uint64_t>(b) << free_bits, free_bits); };
    if (results.size() == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t b = 0; b < results.size(); ++b) pool.emplace_back(run, b);
        for (auto& th : pool) th.join();
    }
    Best<T> best;
    for (const auto& r : results) best.offer(r.value, r.mask);
    return best;
}

template <class T>
Best<T> local_search(const Terms<T>& t, int variant) {
    const int k = t.k;
    std::vector<std::uint64_t> starts{0};
    const std::uint64_t all = k == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
    starts.push_back(all);
    for (int p = 1; p < k; ++p) {
        starts.push_back((std::uint64_t{1} << p) - 1);
        starts.push_back(all ^ ((std::uint64_t{1} << p) - 1));
    }
    for (int z = 0; z < k; ++z) starts.push_back(std::uint64_t{1} << z);
    Best<T> best;
    std::vector<T> x;
    for (auto mask : starts) {
        t.load(mask, x);
        T current = t.total(variant, x);
        for (int pass = 0; pass < 100; ++pass) {
            bool improved = false;
            for (int z = 0; z < k; ++z) {
                t.load(mask ^ (std::uint64_t{1} << z), x);
                const T v = t.total(variant, x);
                if (v > current) {
                    current = v;
                    mask ^= std::uint64_t{1} << z;
                    improved = true;
                }
            }
            if (!improved) break;
        }
        best.offer(current, mask);
    }
    return best;
}

std::int64_t cube(std::int64_t k) { return k * k * k; }

std::string tag(int variant) { return "kernel-omega" + std::to_string(variant); }

template <class T>
FunctionalReport subset_report(const StepKernel& w, std::span<const int> order, int variant,
                               SubsetStrategy strategy, const ScanOptions& opts) {
    const Terms<T> t(w, order);
    const Best<T> best = strategy == SubsetStrategy::exact ? exact_scan(t, variant, opts.threads)
                                                           : local_search(t, variant);
    FunctionalReport r;
    if constexpr (std::is_integral_v<T>) {
        r.exact_value = Rational(best.value, cube(w.parts()));
        r.value = r.exact_value->to_double();
    } else {
        r.value = best.value;
    }
    r.bound = strategy == SubsetStrategy::exact ? BoundKind::exact : BoundKind::lower_bound;
    r.order = VertexOrder::from_permutation(std::vector<int>(order.begin(), order.end()));
    std::vector<int> subset;
    for (int p = 0; p < w.parts(); ++p)
        if ((best.mask >> p) & 1U) subset.push_back(order[p]);
    std::sort(subset.begin(), subset.end());
    r.subset = std::move(subset);
    r.method = tag(variant) + "/subset:" + std::string(to_string(strategy));
    return r;
}

template <class T>
detail::PairTable<T> kernel_pair_table(const StepKernel& w, int variant) {
    const int k = w.parts();
    const Terms<T> t(w, identity_parts(k));
    const std::size_t subsets = std::size_t{1} << k;
    detail::PairTable<T> table(k, subsets);
    std::vector<T> x;
    for (std::size_t a = 0; a < subsets; ++a) {
        t.load(a, x);
        for (int v = 0; v < k; ++v)
            for (int u = 0; u < k; ++u)
                if (u != v) table.at(a, v, u) = t.pair(variant, x, v, u);
    }
    return table;
}

template <class T>
FunctionalReport order_report(const StepKernel& w, int variant, const std::string& label) {
    const auto seed = marginal_order(w);
    const auto table = kernel_pair_table<T>(w, variant);
    const auto best = detail::minimize_over_orders(table, seed);
    FunctionalReport r;
    if constexpr (std::is_integral_v<T>) {
        r.exact_value = Rational(best.value, cube(w.parts()));
        r.value = r.exact_value->to_double();
    } else {
        r.value = best.value;
    }
    r.bound = BoundKind::exact;
    r.order = VertexOrder::from_permutation(best.order);
    r.subset = VertexSet::from_mask(w.parts(), best.subset).members();
    r.method = tag(variant) + "/order:exact/" + label;
    return r;
}

} // namespace

std::vector<int> identity_parts(int k) {
    std::vector<int> p(k);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

FunctionalReport kernel_omega_at(const StepKernel& w, std::span<const int> order, int variant,
                                 SubsetStrategy strategy, const ScanOptions& opts) {
    check_variant(variant);
    check_order(w, order);
    const int k = w.parts();
    if (strategy == SubsetStrategy::exact && (k > opts.limits.exact_subset || k > 62)) {
        if (!opts.allow_heuristic) throw SizeLimitExceeded("exact kernel subset scan", k, std::min(opts.limits.exact_subset, 62));
        strategy = SubsetStrategy::local_search;
    }
    if (strategy == SubsetStrategy::local_search && k > 64) throw SizeLimitExceeded("kernel subset search", k, 64);
    return integral(w) ? subset_report<std::int64_t>(w, order, variant, strategy, opts)
                       : subset_report<double>(w, order, variant, strategy, opts);
}

FunctionalReport kernel_omega_min(const StepKernel& w, int variant, KernelOrderStrategy strategy, int r,
                                  const ScanOptions& opts) {
    check_variant(variant);
    if (strategy == KernelOrderStrategy::marginal) {
        const auto order = marginal_order(w);
        auto rep = kernel_omega_at(w, order, variant, SubsetStrategy::exact, opts);
        rep.bound = variant == 2 ? BoundKind::exact : BoundKind::upper_bound;
        rep.method = tag(variant) + "/order:marginal/atomic";
        return rep;
    }
    if (strategy == KernelOrderStrategy::refine && r < 1) throw InvalidInput("refinement factor must be positive");
    const StepKernel target = strategy == KernelOrderStrategy::refine ? refine(w, r) : w;
    const int k = target.parts();
    const int limit = std::min({opts.limits.exact_order, opts.limits.exact_subset, 20});
    if (k > limit) throw SizeLimitExceeded("exact kernel order scan", k, limit);
    const std::string label = strategy == KernelOrderStrategy::refine ? "refined(" + std::to_string(r) + ")" : "atomic";
    return integral(target) ? order_report<std::int64_t>(target, variant, label)
                            : order_report<double>(target, variant, label);
}

double kernel_omega_tilde(const StepKernel& w, std::span<const int> order) {
    check_order(w, order);
    const int k = w.parts();
    if (integral(w)) {
        std::int64_t s = 0;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                for (int z = 0; z < k; ++z) s += w(order[i], z) > w(order[j], z) ? 1 : 0;
        return Rational(s, cube(k)).to_double();
    }
    double s = 0.0;
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            const int a = order[i];
            const int b = order[j];
            double inner = 0.0;
            for (int z = 0; z < k; ++z) inner += w.weight(z) * std::max(0.0, w(a, z) - w(b, z));
            s += w.weight(a) * w.weight(b) * inner;
        }
    }
    return s;
}

double kernel_goxx(const StepKernel& w, std::span<const int> order) {
    check_order(w, order);
    const int k = w.parts();
    if (integral(w)) return kernel_omega_tilde(w, order);
    double s = 0.0;
    for (int i = 0; i < k; ++i) {
        const int a = order[i];
        for (int j = i + 1; j < k; ++j) {
            const int b = order[j];
            double inner = 0.0;
            for (int z = 0; z < k; ++z) inner += w.weight(z) * w(a, z) * (1.0 - w(b, z));
            s += w.weight(a) * w.weight(b) * inner;
        }
        double atom = 0.0;
        for (int z = 0; z < k; ++z) atom += w.weight(z) * w(a, z) * (1.0 - w(a, z));
        s += 0.5 * w.weight(a) * w.weight(a) * atom;
    }
    return s;
}

FunctionalReport kernel_goxx_min(const StepKernel& w) {
    const auto order = marginal_order(w);
    FunctionalReport r;
    r.value = kernel_goxx(w, order);
    r.bound = BoundKind::exact;
    r.order = VertexOrder::from_permutation(order);
    r.method = "kernel-goxx/order:marginal";
    return r;
}

} // namespace qm
