#include "qm/kernel.hpp"

#include "qm/errors.hpp"
#include "qm/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qm {

namespace {

constexpr double tol = 1e-12;

template <class F>
F make_like(std::vector<double> weights, std::vector<double> values) {
    return F(std::move(weights), std::move(values));
}

template <class F>
F coarsen_impl(const F& w, std::span<const int> grouping) {
    const int k = w.parts();
    if (static_cast<int>(grouping.size()) != k) throw InvalidInput("grouping size does not match the kernel");
    int groups = 0;
    for (int g : grouping) {
        if (g < 0) throw InvalidInput("negative group index");
        groups = std::max(groups, g + 1);
    }
    std::vector<double> gw(groups, 0.0);
    for (int i = 0; i < k; ++i) gw[grouping[i]] += w.weight(i);
    for (int g = 0; g < groups; ++g)
        if (gw[g] <= 0.0) throw InvalidInput("empty group " + std::to_string(g));
    std::vector<double> sum(static_cast<std::size_t>(groups) * groups, 0.0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            sum[static_cast<std::size_t>(grouping[i]) * groups + grouping[j]] += w.weight(i) * w.weight(j) * w(i, j);
    for (int a = 0; a < groups; ++a)
        for (int b = 0; b < groups; ++b) sum[static_cast<std::size_t>(a) * groups + b] /= gw[a] * gw[b];
    return make_like<F>(std::move(gw), std::move(sum));
}

template <class F>
F refine_impl(const F& w, int r) {
    if (r < 1) throw InvalidInput("refinement factor must be positive");
    const int k = w.parts();
    const int kr = k * r;
    std::vector<double> weights(kr);
    std::vector<double> values(static_cast<std::size_t>(kr) * kr);
    for (int i = 0; i < kr; ++i) {
        weights[i] = w.weight(i / r) / r;
        for (int j = 0; j < kr; ++j) values[static_cast<std::size_t>(i) * kr + j] = w(i / r, j / r);
    }
    return make_like<F>(std::move(weights), std::move(values));
}

template <class F>
F permuted_impl(const F& w, std::span<const int> perm) {
    const int k = w.parts();
    if (static_cast<int>(perm.size()) != k) throw InvalidInput("permutation size does not match the kernel");
    std::vector<char> seen(k, 0);
    for (int p : perm) {
        if (p < 0 || p >= k || seen[p]) throw InvalidInput("not a permutation of the parts");
        seen[p] = 1;
    }
    std::vector<double> weights(k);
    std::vector<double> values(static_cast<std::size_t>(k) * k);
    for (int i = 0; i < k; ++i) {
        weights[i] = w.weight(perm[i]);
        for (int j = 0; j < k; ++j) values[static_cast<std::size_t>(i) * k + j] = w(perm[i], perm[j]);
    }
    return make_like<F>(std::move(weights), std::move(values));
}

} // namespace

StepFunction::StepFunction(std::vector<double> weights, std::vector<double> values, double lo) {
    const std::size_t kk = values.size();
    int k = static_cast<int>(std::lround(std::sqrt(static_cast<double>(kk))));
    if (k < 1 || static_cast<std::size_t>(k) * k != kk) throw InvalidInput("kernel values are not a nonempty square grid");
    if (weights.empty()) weights.assign(k, 1.0 / k);
    if (static_cast<int>(weights.size()) != k) throw InvalidInput("weight count does not match the grid");
    double total = 0.0;
    for (double x : weights) {
        if (!(x > 0.0) || !std::isfinite(x)) throw InvalidInput("part weights must be positive");
        total += x;
    }
    if (std::abs(total - 1.0) > tol * std::max(1, k)) throw InvalidInput("part weights do not sum to 1");
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            double& v = values[static_cast<std::size_t>(i) * k + j];
            if (!std::isfinite(v)) throw InvalidInput("non-finite kernel value");
            if (v < lo) {
                if (v < lo - tol) throw InvalidInput("kernel value below range");
                v = lo;
            }
            if (v > 1.0) {
                if (v > 1.0 + tol) throw InvalidInput("kernel value above range");
                v = 1.0;
            }
        }
    }
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (std::abs(values[static_cast<std::size_t>(i) * k + j] - values[static_cast<std::size_t>(j) * k + i]) > tol)
                throw InvalidInput("kernel is not symmetric at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    k_ = k;
    weights_ = std::move(weights);
    values_ = std::move(values);
}

bool StepFunction::equal_weights() const noexcept {
    return std::all_of(weights_.begin(), weights_.end(), [&](double x) { return x == weights_[0]; });
}

bool StepFunction::zero_one() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double x) { return x == 0.0 || x == 1.0; });
}

StepKernel StepKernel::equal(int k, std::vector<double> values) {
    return StepKernel(std::vector<double>(k, 1.0 / k), std::move(values));
}

SignedStepFunction SignedStepFunction::equal(int k, std::vector<double> values) {
    return SignedStepFunction(std::vector<double>(k, 1.0 / k), std::move(values));
}

SignedStepFunction difference(const StepFunction& a, const StepFunction& b) {
    if (a.parts() != b.parts()) throw InvalidInput("kernels have different part counts");
    for (int i = 0; i < a.parts(); ++i)
        if (std::abs(a.weight(i) - b.weight(i)) > tol) throw InvalidInput("kernels have different part weights");
    std::vector<double> v(a.values().size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values()[i] - b.values()[i];
    return SignedStepFunction(std::vector<double>(a.weights().begin(), a.weights().end()), std::move(v));
}

StepKernel kernel_from_graph(const Graph& g, const VertexOrder& ord) {
    const int n = g.order();
    if (n == 0) throw InvalidInput("graph has no vertices");
    if (ord.size() != n) throw InvalidInput("order size does not match the graph");
    std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (g.adjacent(ord.at(i), ord.at(j))) v[static_cast<std::size_t>(i) * n + j] = 1.0;
    return StepKernel::equal(n, std::move(v));
}

StepKernel kernel_from_graph(const Graph& g) { return kernel_from_graph(g, VertexOrder::identity(g.order())); }

StepKernel coarsen(const StepKernel& w, std::span<const int> grouping) { return coarsen_impl(w, grouping); }
SignedStepFunction coarsen(const SignedStepFunction& d, std::span<const int> grouping) {
    return coarsen_impl(d, grouping);
}

StepKernel refine(const StepKernel& w, int r) { return refine_impl(w, r); }
SignedStepFunction refine(const SignedStepFunction& d, int r) { return refine_impl(d, r); }

StepKernel permuted(const StepKernel& w, std::span<const int> perm) { return permuted_impl(w, perm); }
SignedStepFunction permuted(const SignedStepFunction& d, std::span<const int> perm) {
    return permuted_impl(d, perm);
}

std::vector<double> marginal(const StepFunction& w) {
    const int k = w.parts();
    std::vector<double> m(k, 0.0);
    for (int i = 0; i < k; ++i)
        for (int z = 0; z < k; ++z) m[i] += w.weight(z) * w(i, z);
    return m;
}

bool is_monotone(const StepFunction& w, double t) {
    const int k = w.parts();
    for (int i = 0; i < k; ++i)
        for (int j = 0; j + 1 < k; ++j)
            if (w(i, j) > w(i, j + 1) + t) return false;
    // Symmetry makes the column condition equivalent.
    return true;
}

std::vector<int> marginal_order(const StepFunction& w) {
    const auto m = marginal(w);
    std::vector<int> perm(w.parts());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) { return m[a] < m[b]; });
    return perm;
}

SortedKernel sort_by_marginal(const StepKernel& w) {
    auto perm = marginal_order(w);
    return {permuted(w, perm), std::move(perm)};
}

Sandwich sandwich(const StepKernel& w, int n) {
    const int k = w.parts();
    if (n < 1 || k % n != 0) throw InvalidInput("grid of " + std::to_string(k) + " parts does not refine " + std::to_string(n) + " blocks");
    if (!w.equal_weights()) throw InvalidInput("sandwich needs an equal-weight grid");
    if (!is_monotone(w, tol)) throw InvalidInput("sandwich needs a monotone kernel");
    const int r = k / n;
    std::vector<int> grouping(k);
    for (int i = 0; i < k; ++i) grouping[i] = i / r;
    const StepKernel coarse = coarsen(w, grouping);
    // Block index b in 0..n+1, with 0 and n+1 the padded boundary.
    auto padded = [&](int a, int b) {
        if (a == 0 || b == 0) return 0.0;
        if (a == n + 1 || b == n + 1) return 1.0;
        return coarse(a - 1, b - 1);
    };
    std::vector<double> lo(static_cast<std::size_t>(k) * k), mid(lo.size()), hi(lo.size());
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            const int a = i / r + 1;
            const int b = j / r + 1;
            const std::size_t at = static_cast<std::size_t>(i) * k + j;
            lo[at] = padded(a - 1, b - 1);
            mid[at] = padded(a, b);
            hi[at] = padded(a + 1, b + 1);
        }
    }
    return {StepKernel::equal(k, std::move(lo)), StepKernel::equal(k, std::move(mid)),
            StepKernel::equal(k, std::move(hi))};
}

StepKernel constant_kernel(double p, int k) {
    if (k < 1) throw InvalidInput("kernel needs k >= 1");
    return StepKernel::equal(k, std::vector<double>(static_cast<std::size_t>(k) * k, p));
}

StepKernel kmm_kernel(int m, int r) { return refine(kernel_from_graph(kmm_graph(m)), r); }

StepKernel additive_kernel(int k) {
    if (k < 1) throw InvalidInput("kernel needs k >= 1");
    std::vector<double> v(static_cast<std::size_t>(k) * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) v[static_cast<std::size_t>(i) * k + j] = (i + j + 1) / (2.0 * k);
    return StepKernel::equal(k, std::move(v));
}

KernelPair pair_23best(int k, std::uint64_t seed) {
    if (k < 1) throw InvalidInput("kernel needs k >= 1");
    auto make = [&](std::uint64_t s) {
        const Graph a = gnp(k, 0.5, s);
        std::vector<double> v(static_cast<std::size_t>(k) * k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                v[static_cast<std::size_t>(i) * k + j] = ((a.adjacent(i, j) ? 1 : 0) + i + j) / (2.0 * k);
        return StepKernel::equal(k, std::move(v));
    };
    return {make(mix64(seed) ^ 1), make(mix64(seed) ^ 2)};
}

namespace {

std::vector<double> symmetric_uniform(int k, std::uint64_t seed, double lo) {
    const CounterRng rng(seed, 11);
    std::vector<double> v(static_cast<std::size_t>(k) * k);
    for (int i = 0; i < k; ++i) {
        for (int j = i; j < k; ++j) {
            const double x = lo + (1.0 - lo) * rng.uniform(static_cast<std::uint64_t>(i) * k + j);
            v[static_cast<std::size_t>(i) * k + j] = x;
            v[static_cast<std::size_t>(j) * k + i] = x;
        }
    }
    return v;
}

} // namespace

StepKernel random_monotone(int k, std::uint64_t seed) {
    if (k < 1) throw InvalidInput("kernel needs k >= 1");
    auto v = symmetric_uniform(k, seed, 0.0);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            double& x = v[static_cast<std::size_t>(i) * k + j];
            if (i > 0) x = std::max(x, v[static_cast<std::size_t>(i - 1) * k + j]);
            if (j > 0) x = std::max(x, v[static_cast<std::size_t>(i) * k + j - 1]);
        }
    }
    return StepKernel::equal(k, std::move(v));
}

StepKernel random_kernel(int k, std::uint64_t seed) {
    if (k < 1) throw InvalidInput("kernel needs k >= 1");
    return StepKernel::equal(k, symmetric_uniform(k, seed, 0.0));
}

SignedStepFunction random_signed(int k, std::uint64_t seed) {
    if (k < 1) throw InvalidInput("kernel needs k >= 1");
    return SignedStepFunction::equal(k, symmetric_uniform(k, seed, -1.0));
}

} // namespace qm
